"""Direct-sum product, restriction-contraction coproduct, and their verifiers.

The product of two classes is the class of the direct sum; concatenating
the standard orientations gives the standard orientation again, so no sign
appears beyond the normalization signs of the factors.  The coproduct sums
over all ground-set subsets S, realized in the shuffle model: list S first,
then its complement, and charge the sign of that shuffle to the term.  The
grading is ground-set size; graded signs follow the Koszul rule, with each
differential sitting in degree -1.
"""

from __future__ import annotations

from fractions import Fraction

from .canonical import canonical_key
from .classes import ClassVector, normalize
from .complexes import (
    ALL,
    DifferentialKind,
    Report,
    apply_differential,
    chain_basis,
)
from .errors import InvalidSpec, MixedDegree
from .matroid import EMPTY, uniform


def star(a: ClassVector, b: ClassVector) -> ClassVector:
    """Bilinear extension of direct sum to classes."""
    out: dict = {}
    for ka, ca in a.terms.items():
        ma = ka.matroid()
        for kb, cb in b.terms.items():
            nz = normalize(ma.direct_sum(kb.matroid()))
            if nz is None:
                continue
            key, s = nz
            c = out.get(key, Fraction(0)) + ca * cb * s
            out[key] = c
    return ClassVector(out)


def unit() -> ClassVector:
    return ClassVector.of(EMPTY)


def counit(v: ClassVector) -> Fraction:
    return v.coefficient(canonical_key(EMPTY))


class TensorClassVector:
    """Sparse rational combination of key pairs."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for kk, c in terms.items():
                if c:
                    clean[kk] = Fraction(c)
        self.terms = clean

    def add(self, other):
        out = dict(self.terms)
        for kk, c in other.terms.items():
            out[kk] = out.get(kk, Fraction(0)) + c
        return TensorClassVector(out)

    def scale(self, c):
        c = Fraction(c)
        return TensorClassVector({kk: v * c for kk, v in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, TensorClassVector) and self.terms == other.terms

    def __repr__(self):
        return f"TensorClassVector({len(self.terms)} terms)"


def _shuffle_sign(smask: int, n: int) -> int:
    """Sign of the shuffle moving the elements of S in front of the rest."""
    total = 0
    pos = 0
    for i in range(n):
        if smask >> i & 1:
            total += i - pos
            pos += 1
    return -1 if total % 2 else 1


def coproduct(v: ClassVector) -> TensorClassVector:
    """Sum over subsets S of [restriction to S] tensor [contraction by S]."""
    out: dict = {}
    for key, coeff in v.terms.items():
        m = key.matroid()
        n = m.n
        for smask in range(1 << n):
            elements = [i + 1 for i in range(n) if smask >> i & 1]
            left = normalize(m.restrict(elements))
            if left is None:
                continue
            right = normalize(m.contract_set(elements))
            if right is None:
                continue
            sign = _shuffle_sign(smask, n) * left[1] * right[1]
            kk = (left[0], right[0])
            out[kk] = out.get(kk, Fraction(0)) + coeff * sign
    return TensorClassVector(out)


def _basis_classes(max_n: int, source):
    for n in range(0, max_n + 1):
        for key in chain_basis(n, ALL, source).keys:
            yield key


def _tensor_apply_left(f, t: TensorClassVector) -> TensorClassVector:
    """(f tensor id) with f of even structure cost: no Koszul sign."""
    out: dict = {}
    for (ka, kb), c in t.terms.items():
        fa = f(ClassVector({ka: 1}))
        for k2, c2 in fa.terms.items():
            kk = (k2, kb)
            out[kk] = out.get(kk, Fraction(0)) + c * c2
    return TensorClassVector(out)


def _tensor_apply_right(f, t: TensorClassVector, degree: int) -> TensorClassVector:
    """(id tensor f) with Koszul sign (-1)^(degree * |left factor|)."""
    out: dict = {}
    for (ka, kb), c in t.terms.items():
        sign = -1 if (degree * ka.n) % 2 else 1
        fb = f(ClassVector({kb: 1}))
        for k2, c2 in fb.terms.items():
            kk = (ka, k2)
            out[kk] = out.get(kk, Fraction(0)) + c * c2 * sign
    return TensorClassVector(out)


def verify_coassociativity(max_n: int, source) -> Report:
    """(Delta tensor id) Delta = (id tensor Delta) Delta plus counit laws."""
    rep = Report([])
    for key in _basis_classes(max_n, source):
        v = ClassVector({key: 1})
        dv = coproduct(v)
        left: dict = {}
        right: dict = {}
        for (ka, kb), c in dv.terms.items():
            for (k1, k2), c2 in coproduct(ClassVector({ka: 1})).terms.items():
                t = (k1, k2, kb)
                left[t] = left.get(t, Fraction(0)) + c * c2
            for (k1, k2), c2 in coproduct(ClassVector({kb: 1})).terms.items():
                t = (ka, k1, k2)
                right[t] = right.get(t, Fraction(0)) + c * c2
        ok = {t: c for t, c in left.items() if c} == {
            t: c for t, c in right.items() if c
        }
        detail = f"n={key.n}" + ("" if ok else f" witness={key!r}")
        rep.record(ok, "coassociativity", detail)
        # counit: collapse either factor.
        lsum: dict = {}
        rsum: dict = {}
        for (ka, kb), c in dv.terms.items():
            lsum[kb] = lsum.get(kb, Fraction(0)) + c * counit(ClassVector({ka: 1}))
            rsum[ka] = rsum.get(ka, Fraction(0)) + c * counit(ClassVector({kb: 1}))
        ok = ClassVector(lsum) == v and ClassVector(rsum) == v
        detail = f"n={key.n}" + ("" if ok else f" witness={key!r}")
        rep.record(ok, "counit", detail)
    return rep


def _tensor_star(t1: TensorClassVector, t2: TensorClassVector) -> TensorClassVector:
    """(a tensor b) star (c tensor d) = (-1)^(|b||c|) (a star c) tensor (b star d)."""
    out: dict = {}
    for (ka, kb), c in t1.terms.items():
        for (kc, kd), c2 in t2.terms.items():
            sign = -1 if (kb.n * kc.n) % 2 else 1
            ac = star(ClassVector({ka: 1}), ClassVector({kc: 1}))
            bd = star(ClassVector({kb: 1}), ClassVector({kd: 1}))
            for k1, u in ac.terms.items():
                for k2, w in bd.terms.items():
                    kk = (k1, k2)
                    out[kk] = out.get(kk, Fraction(0)) + c * c2 * sign * u * w
    return TensorClassVector(out)


def verify_bialgebra(max_n: int, source) -> Report:
    """Delta is an algebra map for the graded product on the tensor square."""
    rep = Report([])
    keys = list(_basis_classes(max_n, source))
    for ka in keys:
        for kb in keys:
            if ka.n + kb.n > max_n:
                continue
            a = ClassVector({ka: 1})
            b = ClassVector({kb: 1})
            lhs = coproduct(star(a, b))
            rhs = _tensor_star(coproduct(a), coproduct(b))
            ok = lhs == rhs
            detail = f"|a|={ka.n} |b|={kb.n}" + ("" if ok else f" witness={ka!r},{kb!r}")
            rep.record(ok, "bialgebra", detail)
    return rep


def verify_associativity(max_n: int, source) -> Report:
    rep = Report([])
    keys = list(_basis_classes(max_n, source))
    for ka in keys:
        for kb in keys:
            for kc in keys:
                if ka.n + kb.n + kc.n > max_n:
                    continue
                a, b, c = (ClassVector({k: 1}) for k in (ka, kb, kc))
                ok = star(star(a, b), c) == star(a, star(b, c))
                rep.record(ok, "associativity", f"{ka.n}+{kb.n}+{kc.n}")
    return rep


def verify_graded_commutativity(max_n: int, source) -> Report:
    rep = Report([])
    keys = list(_basis_classes(max_n, source))
    for ka in keys:
        for kb in keys:
            if ka.n + kb.n > max_n:
                continue
            a = ClassVector({ka: 1})
            b = ClassVector({kb: 1})
            sign = -1 if (ka.n * kb.n) % 2 else 1
            ok = star(a, b) == star(b, a).scale(sign)
            rep.record(ok, "graded-commutativity", f"|a|={ka.n} |b|={kb.n}")
    return rep


def verify_unit_counit(max_n: int, source) -> Report:
    rep = Report([])
    one = unit()
    for key in _basis_classes(max_n, source):
        v = ClassVector({key: 1})
        rep.record(
            star(one, v) == v and star(v, one) == v, "unit", f"n={key.n}"
        )
    rep.record(counit(one) == 1, "counit-unit", "")
    return rep


def verify_leibniz(kind: DifferentialKind, max_n: int, source) -> Report:
    """d(a*b) = d(a)*b + (-1)^|a| a*d(b) for homogeneous a, b."""
    rep = Report([])
    keys = list(_basis_classes(max_n, source))
    for ka in keys:
        for kb in keys:
            if ka.n + kb.n > max_n:
                continue
            a = ClassVector({ka: 1})
            b = ClassVector({kb: 1})
            lhs = apply_differential(kind, star(a, b))
            rhs = star(apply_differential(kind, a), b).add(
                star(a, apply_differential(kind, b)).scale(
                    -1 if ka.n % 2 else 1
                )
            )
            ok = lhs == rhs
            detail = f"|a|={ka.n} |b|={kb.n}" + ("" if ok else f" witness={ka!r},{kb!r}")
            rep.record(ok, f"leibniz {kind.value}", detail)
    return rep


_RIGHT_KINDS = {
    DifferentialKind.DEL,
    DifferentialKind.CLP,
    DifferentialKind.DEL_TOT,
}
_LEFT_KINDS = {
    DifferentialKind.CON,
    DifferentialKind.LP,
    DifferentialKind.CON_TOT,
}


def verify_coderivation(kind: DifferentialKind, side: str, max_n: int, source) -> Report:
    """One-sided co-Leibniz law: deletion-type differentials act on the
    contraction factor (right), contraction-type on the restriction factor
    (left); the right action carries the Koszul sign (-1)^|left factor|.
    """
    if side not in ("left", "right"):
        raise InvalidSpec(f"side must be left or right, got {side!r}")
    expected = _RIGHT_KINDS if side == "right" else _LEFT_KINDS
    if kind not in expected:
        raise InvalidSpec(f"{kind.value} is not a {side} coderivation candidate")
    rep = Report([])
    dk = lambda v: apply_differential(kind, v)
    for key in _basis_classes(max_n, source):
        v = ClassVector({key: 1})
        lhs = coproduct(dk(v))
        dv = coproduct(v)
        if side == "right":
            rhs = _tensor_apply_right(dk, dv, degree=-1)
        else:
            rhs = _tensor_apply_left(dk, dv)
        ok = lhs == rhs
        detail = f"n={key.n}" + ("" if ok else f" witness={key!r}")
        rep.record(ok, f"coderivation-{side} {kind.value}", detail)
    return rep


# -- contracting homotopies -----------------------------------------------------

_LOOP_KINDS = {
    DifferentialKind.DEL,
    DifferentialKind.DEL_TOT,
    DifferentialKind.LP,
    DifferentialKind.CON_TOT,
}
_COLOOP_KINDS = {
    DifferentialKind.CLP,
    DifferentialKind.DEL_TOT,
    DifferentialKind.CON,
    DifferentialKind.CON_TOT,
}


def homotopy_generator(kind: DifferentialKind, generator: str | None = None) -> ClassVector:
    """The degree-1 class whose boundary is the unit for this differential."""
    if generator is None:
        generator = "loop" if kind in _LOOP_KINDS else "coloop"
    if generator == "loop":
        if kind not in _LOOP_KINDS:
            raise InvalidSpec(f"{kind.value} does not send the loop class to the unit")
        return ClassVector.of(uniform(0, 1))
    if generator == "coloop":
        if kind not in _COLOOP_KINDS:
            raise InvalidSpec(f"{kind.value} does not send the coloop class to the unit")
        return ClassVector.of(uniform(1, 1))
    raise InvalidSpec(f"generator must be loop or coloop, got {generator!r}")


def contracting_homotopy(
    kind: DifferentialKind, v: ClassVector, generator: str | None = None
) -> ClassVector:
    """h(v) = (-1)^n v * ell on homogeneous v; satisfies dh + hd = id."""
    degrees = v.degrees()
    if len(degrees) > 1:
        raise MixedDegree(f"homotopy needs homogeneous input, got degrees {degrees}")
    ell = homotopy_generator(kind, generator)
    if not degrees:
        return ClassVector()
    n = degrees.pop()
    return star(v, ell).scale(-1 if n % 2 else 1)


def verify_homotopy(
    kind: DifferentialKind, max_n: int, source, generator: str | None = None
) -> Report:
    rep = Report([])
    gen_name = generator or ("loop" if kind in _LOOP_KINDS else "coloop")
    for n in range(0, max_n + 1):
        for key in chain_basis(n, ALL, source).keys:
            v = ClassVector({key: 1})
            dh = apply_differential(kind, contracting_homotopy(kind, v, generator))
            hd = contracting_homotopy(kind, apply_differential(kind, v), generator)
            ok = dh.add(hd) == v
            detail = f"n={n}" + ("" if ok else f" witness={key!r}")
            rep.record(ok, f"homotopy {kind.value}({gen_name})", detail)
    return rep


# -- free super-commutative dimension identity ----------------------------------


def connected_dim_check(max_n: int, source) -> Report:
    """dim M_n must match the free super-commutative algebra on connected
    classes: odd-degree generators contribute exterior factors, even-degree
    ones polynomial factors.
    """
    rep = Report([])
    dims = []
    conn = []
    for n in range(0, max_n + 1):
        basis = chain_basis(n, ALL, source)
        dims.append(basis.dim)
        conn.append(
            sum(1 for key in basis.keys if key.matroid().is_connected())
        )
    # Power series product up to degree max_n.
    series = [0] * (max_n + 1)
    series[0] = 1
    for m in range(1, max_n + 1):
        c = conn[m]
        if not c:
            continue
        if m % 2 == 1:
            # (1 + t^m)^c
            factor = [0] * (max_n + 1)
            factor[0] = 1
            from math import comb

            for j in range(1, c + 1):
                if j * m > max_n:
                    break
                factor[j * m] = comb(c, j)
        else:
            # (1 - t^m)^(-c): coefficients C(c - 1 + j, j) at t^(j m)
            from math import comb

            factor = [0] * (max_n + 1)
            factor[0] = 1
            j = 1
            while j * m <= max_n:
                factor[j * m] = comb(c - 1 + j, j)
                j += 1
        series = _poly_mul(series, factor, max_n)
    for n in range(0, max_n + 1):
        rep.record(
            series[n] == dims[n],
            "free-supercommutative dim",
            f"n={n} expected={series[n]} got={dims[n]}",
        )
    return rep


def _poly_mul(a, b, cap):
    out = [0] * (cap + 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if not bj or i + j > cap:
                continue
            out[i + j] += ai * bj
    return out
