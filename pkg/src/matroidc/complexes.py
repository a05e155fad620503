"""Chain bases, deletion/contraction differentials, and homology tables.

A chain basis in degree n consists of the canonical keys of all matroids
on [n] that survive orientation (no odd automorphism) and satisfy the
requested combinatorial property.  Differential matrices carry the two
signs of the basis formula: the interior-product sign (-1)^(i-1) of the
deleted or contracted element, and the relabeling sign that moves the
child back onto its canonical representative.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .canonical import CanonicalKey, canonical_form
from .classes import ClassVector, normalize
from .errors import InvalidSpec, PropertyNotDualityStable, SourceIncomplete
from .linalg import BettiRow, BettiTable, RankPolicy, SparseIntMatrix, rank_exact
from .matroid import Matroid


class DifferentialKind(str, Enum):
    DEL = "del"
    CLP = "clp"
    CON = "con"
    LP = "lp"
    DEL_TOT = "del-tot"
    CON_TOT = "con-tot"

    @property
    def is_total(self) -> bool:
        return self in (DifferentialKind.DEL_TOT, DifferentialKind.CON_TOT)


KIND_ALIASES = {k.value: k for k in DifferentialKind}


def parse_kind(text: str) -> DifferentialKind:
    try:
        return KIND_ALIASES[text.strip().lower()]
    except KeyError:
        raise InvalidSpec(f"unknown differential kind {text!r}") from None


def _qualifying_elements(kind: DifferentialKind, m: Matroid):
    """(element, use_deletion) pairs the differential sums over."""
    loops = m.loops_mask()
    coloops = m.coloops_mask()
    for i in range(m.n):
        bit = 1 << i
        x = i + 1
        if kind is DifferentialKind.DEL:
            if not coloops & bit:
                yield x, True
        elif kind is DifferentialKind.CLP:
            if coloops & bit:
                yield x, True
        elif kind is DifferentialKind.CON:
            if not loops & bit:
                yield x, False
        elif kind is DifferentialKind.LP:
            if loops & bit:
                yield x, False
        elif kind is DifferentialKind.DEL_TOT:
            yield x, True
        else:
            yield x, False


PROPERTY_TAGS = {
    "simple": Matroid.is_simple,
    "loopless": Matroid.is_loopless,
    "binary": Matroid.is_binary,
    "ternary": Matroid.is_ternary,
    "regular": Matroid.is_regular,
    "graphic": Matroid.is_graphic,
    "cographic": Matroid.is_cographic,
}

_SELF_DUAL_TAGS = {"binary", "ternary", "regular"}

# simple matroids are in particular loopless; used for census coverage checks
_TAG_IMPLICATIONS = {"simple": {"loopless"}}


@dataclass(frozen=True)
class ComplexSpec:
    """Which subcomplex: property tags, connected quotient, optional slice."""

    tags: frozenset[str] = frozenset()
    connected: bool = False
    slice: tuple[str, int] | None = None

    def __post_init__(self):
        unknown = self.tags - set(PROPERTY_TAGS)
        if unknown:
            raise InvalidSpec(f"unknown property tags: {sorted(unknown)}")
        if self.connected and not self.tags & {"simple", "loopless"}:
            raise InvalidSpec(
                "the connected quotient needs a loopless property "
                "(add 'simple' or 'loopless')"
            )
        if self.slice is not None and self.slice[0] not in ("rank", "nullity"):
            raise InvalidSpec(f"bad slice {self.slice!r}")

    @classmethod
    def parse(cls, text: str) -> "ComplexSpec":
        tags = set()
        connected = False
        for tok in text.replace("+", ",").split(","):
            tok = tok.strip().lower()
            if not tok or tok == "all":
                continue
            if tok == "connected":
                connected = True
            else:
                tags.add(tok)
        return cls(frozenset(tags), connected)

    def label(self) -> str:
        # joined with '+' so the label stays a single CSV field
        parts = sorted(self.tags)
        if self.connected:
            parts.append("connected")
        return "+".join(parts) if parts else "all"

    def with_slice(self, slc) -> "ComplexSpec":
        return ComplexSpec(self.tags, self.connected, slc)

    def expanded_tags(self) -> frozenset[str]:
        out = set(self.tags)
        for t in self.tags:
            out |= _TAG_IMPLICATIONS.get(t, set())
        if self.connected:
            out.add("connected")
        return frozenset(out)

    def admits(self, m: Matroid) -> bool:
        for t in self.tags:
            if not PROPERTY_TAGS[t](m):
                return False
        if self.connected and not m.is_connected():
            return False
        return True

    def key_in_slice(self, key: CanonicalKey) -> bool:
        if self.slice is None:
            return True
        what, val = self.slice
        return (key.r == val) if what == "rank" else (key.n - key.r == val)

    def is_self_dual(self) -> bool:
        return not self.connected and self.tags <= _SELF_DUAL_TAGS


ALL = ComplexSpec()


@dataclass(frozen=True)
class ChainBasis:
    n: int
    keys: tuple[CanonicalKey, ...]

    @property
    def dim(self) -> int:
        return len(self.keys)

    def index(self) -> dict[CanonicalKey, int]:
        return {k: i for i, k in enumerate(self.keys)}


def _check_source_tags(spec: ComplexSpec, source) -> None:
    declared = set(source.tags())
    for t in set(declared):
        declared |= _TAG_IMPLICATIONS.get(t, set())
    if not declared <= spec.expanded_tags():
        raise SourceIncomplete(
            f"source restricted to {sorted(declared)} cannot serve spec "
            f"{spec.label()!r}"
        )


@lru_cache(maxsize=None)
def chain_basis(n: int, spec: ComplexSpec, source) -> ChainBasis:
    if n < 0:
        return ChainBasis(n, ())
    _check_source_tags(spec, source)
    keys = []
    for m in source.require(n):
        key = canonical_form(m)[0]
        if key.odd_auto:
            continue
        if not spec.key_in_slice(key):
            continue
        if not spec.admits(m):
            continue
        keys.append(key)
    keys.sort(key=lambda k: k.encoding)
    return ChainBasis(n, tuple(keys))


def apply_differential(kind: DifferentialKind, v: ClassVector) -> ClassVector:
    """The differential on the full complex, applied termwise."""
    out: dict = {}
    for key, coeff in v.terms.items():
        m = key.matroid()
        for x, use_del in _qualifying_elements(kind, m):
            child = m.delete(x) if use_del else m.contract(x)
            nz = normalize(child)
            if nz is None:
                continue
            ckey, s = nz
            sign = s if x % 2 == 1 else -s
            c = out.get(ckey)
            out[ckey] = (c or 0) + coeff * sign
    return ClassVector(out)


def mu_sign(m: Matroid, x: int, target: CanonicalKey) -> int:
    """Relabeling sign identifying m\\x with the chosen representative.

    Zero when the deletion is not isomorphic to the target.  Well-defined
    whenever the target has no odd automorphism.
    """
    nz = normalize(m.delete(x))
    if nz is None or nz[0] != target:
        return 0
    return nz[1]


@lru_cache(maxsize=None)
def differential_matrix(
    kind: DifferentialKind, n: int, spec: ComplexSpec, source
) -> SparseIntMatrix:
    """Matrix of the differential from degree n (columns) to n-1 (rows).

    Children that leave the row basis are dropped: for the connected
    quotient this is the quotient map, and for property-closed specs it
    never happens.
    """
    cols = chain_basis(n, spec, source)
    rows = chain_basis(n - 1, spec, source)
    row_index = rows.index()
    entries: dict = {}
    for ci, key in enumerate(cols.keys):
        m = key.matroid()
        for x, use_del in _qualifying_elements(kind, m):
            child = m.delete(x) if use_del else m.contract(x)
            nz = normalize(child)
            if nz is None:
                continue
            ckey, s = nz
            ri = row_index.get(ckey)
            if ri is None:
                continue
            sign = s if x % 2 == 1 else -s
            pos = (ri, ci)
            val = entries.get(pos, 0) + sign
            if val:
                entries[pos] = val
            else:
                entries.pop(pos, None)
    return SparseIntMatrix(rows.dim, cols.dim, entries)


@dataclass
class Report:
    lines: list[str]
    ok: bool = True

    def record(self, ok: bool, what: str, detail: str = "") -> None:
        tag = "PASS" if ok else "FAIL"
        suffix = f" {detail}" if detail else ""
        self.lines.append(f"{tag} {what}{suffix}")
        if not ok:
            self.ok = False

    def extend(self, other: "Report") -> None:
        self.lines.extend(other.lines)
        self.ok = self.ok and other.ok

    def text(self) -> str:
        return "\n".join(self.lines) + ("\n" if self.lines else "")


def _witness_column(prod: SparseIntMatrix, basis: ChainBasis) -> str:
    bad = min(j for (_, j) in prod.entries)
    return f"witness={basis.keys[bad]!r}"


def verify_square_zero(
    kind: DifferentialKind, max_n: int, spec: ComplexSpec, source
) -> Report:
    rep = Report([])
    for n in range(1, max_n + 1):
        prod = differential_matrix(kind, n - 1, spec, source).compose(
            differential_matrix(kind, n, spec, source)
        )
        detail = f"n={n}"
        if not prod.is_zero():
            detail += " " + _witness_column(prod, chain_basis(n, spec, source))
        rep.record(prod.is_zero(), f"square-zero {kind.value}", detail)
    return rep


def verify_anticommute(
    kind_a: DifferentialKind,
    kind_b: DifferentialKind,
    max_n: int,
    spec: ComplexSpec,
    source,
) -> Report:
    rep = Report([])
    for n in range(2, max_n + 1):
        ab = differential_matrix(kind_a, n - 1, spec, source).compose(
            differential_matrix(kind_b, n, spec, source)
        )
        ba = differential_matrix(kind_b, n - 1, spec, source).compose(
            differential_matrix(kind_a, n, spec, source)
        )
        total = ab.add(ba)
        detail = f"n={n}"
        if not total.is_zero():
            detail += " " + _witness_column(total, chain_basis(n, spec, source))
        rep.record(
            total.is_zero(),
            f"anticommute {kind_a.value}/{kind_b.value}",
            detail,
        )
    return rep


def verify_bidegrees(max_n: int, source) -> Report:
    """Del/Lp drop nullity, Clp/Con drop rank, on every basis class."""
    rep = Report([])
    shifts = {
        DifferentialKind.DEL: (-1, 0),
        DifferentialKind.LP: (-1, 0),
        DifferentialKind.CLP: (0, -1),
        DifferentialKind.CON: (0, -1),
    }
    for kind, (dk, dr) in shifts.items():
        ok = True
        for n in range(1, max_n + 1):
            for key in chain_basis(n, ALL, source).keys:
                k0, r0 = key.bidegree
                image = apply_differential(kind, ClassVector({key: 1}))
                for ckey in image.terms:
                    if ckey.bidegree != (k0 + dk, r0 + dr):
                        ok = False
        rep.record(ok, f"bidegree {kind.value}", f"n<={max_n}")
    return rep


def dualize_basis_map(
    n: int, spec: ComplexSpec, source, dual_spec: ComplexSpec | None = None
) -> SparseIntMatrix:
    """Signed permutation matrix of [M, eta] -> [M*, eta] in chain bases.

    Swaps the bidegrees (k, r) <-> (r, k) and intertwines deletion-side
    differentials with contraction-side ones.
    """
    if dual_spec is None:
        if not spec.is_self_dual() or spec.slice is not None:
            raise PropertyNotDualityStable(
                f"spec {spec.label()!r} is not duality stable; pass dual_spec"
            )
        dual_spec = spec
    cols = chain_basis(n, spec, source)
    rows = chain_basis(n, dual_spec, source)
    row_index = rows.index()
    entries = {}
    for ci, key in enumerate(cols.keys):
        nz = normalize(key.matroid().dual())
        if nz is None:
            raise PropertyNotDualityStable(
                f"dual of {key!r} has an odd automorphism; bases mismatch"
            )
        ckey, s = nz
        ri = row_index.get(ckey)
        if ri is None:
            raise PropertyNotDualityStable(f"dual of {key!r} leaves the basis")
        entries[(ri, ci)] = s
    return SparseIntMatrix(rows.dim, cols.dim, entries)


def verify_duality(max_n: int, spec: ComplexSpec, source) -> Report:
    """Duality exchanges the deletion differential with contraction and the
    coloop differential with the loop one, transposing the bigrading; D is
    an involution.  (Deleting a non-coloop of M is contracting a non-loop
    of the dual.)
    """
    rep = Report([])
    for n in range(0, max_n + 1):
        d_n = dualize_basis_map(n, spec, source)
        sq = d_n.compose(d_n)
        ident = SparseIntMatrix(
            d_n.rows, d_n.cols, {(i, i): 1 for i in range(d_n.rows)}
        )
        rep.record(sq == ident, "duality involution", f"n={n}")
        if n == 0:
            continue
        d_prev = dualize_basis_map(n - 1, spec, source)
        for kind_a, kind_b in (
            (DifferentialKind.DEL, DifferentialKind.CON),
            (DifferentialKind.CLP, DifferentialKind.LP),
        ):
            lhs = d_prev.compose(differential_matrix(kind_a, n, spec, source))
            rhs = differential_matrix(kind_b, n, spec, source).compose(d_n)
            rep.record(
                lhs == rhs,
                f"duality intertwines {kind_a.value}->{kind_b.value}",
                f"n={n}",
            )
    return rep


# -- homology ------------------------------------------------------------------


def homology_table(
    spec: ComplexSpec,
    kind: DifferentialKind,
    max_n: int,
    source,
    policy: RankPolicy | None = None,
    threads: int = 0,
) -> BettiTable:
    """Betti numbers of the spec'd complex through degree max_n.

    H_n needs the incoming boundary from degree n+1; when the source stops
    at max_n the top row only carries an upper bound and is flagged so.
    """
    policy = policy or RankPolicy()
    if not source.covers(max_n):
        raise SourceIncomplete(f"source does not cover degree {max_n}")
    have_top = source.covers(max_n + 1)
    top = max_n + 1 if have_top else max_n

    dims = {n: chain_basis(n, spec, source).dim for n in range(0, top + 1)}
    mats = {
        n: differential_matrix(kind, n, spec, source) for n in range(1, top + 1)
    }

    def ranked(n):
        if n not in mats or mats[n].is_zero():
            return n, (0, "exact")
        return n, policy.rank(mats[n])

    with ThreadPoolExecutor(max_workers=threads or None) as pool:
        ranks = dict(pool.map(ranked, range(1, top + 1)))
    ranks[0] = (0, "exact")

    slice_rank = spec.slice[1] if spec.slice and spec.slice[0] == "rank" else None
    rows = []
    for n in range(0, max_n + 1):
        rank_out, lab_out = ranks[n]
        if n + 1 <= top:
            rank_in, lab_in = ranks[n + 1]
        else:
            rank_in, lab_in = None, None
        betti = dims[n] - rank_out - (rank_in or 0)
        if rank_in is None:
            certified = "upper_bound"
        else:
            certified = "exact" if lab_out == lab_in == "exact" else "modular"
            if betti != 0 and certified != "exact":
                # modular ranks only bound the exact ones from below; a
                # nonzero betti is confirmed with exact arithmetic.
                rank_out = rank_exact(mats[n]) if n in mats else 0
                rank_in = rank_exact(mats[n + 1]) if n + 1 in mats else 0
                betti = dims[n] - rank_out - rank_in
                certified = "exact"
        r_col = slice_rank
        if spec.slice and spec.slice[0] == "nullity":
            r_col = n - spec.slice[1]
        rows.append(
            BettiRow(
                spec.label(), kind.value, n, r_col, dims[n],
                rank_out, rank_in, betti, certified,
            )
        )
    return BettiTable(rows)


def betti_at_bidegree(
    spec: ComplexSpec,
    kind: DifferentialKind,
    n: int,
    r: int,
    source,
    policy: RankPolicy | None = None,
) -> BettiTable:
    """Homology of the bigraded slice through (n, r): ground size n, rank r."""
    if kind.is_total:
        raise InvalidSpec("bidegree slices need a single-bidegree differential")
    if kind in (DifferentialKind.DEL, DifferentialKind.LP):
        sliced = spec.with_slice(("rank", r))
    else:
        sliced = spec.with_slice(("nullity", n - r))
    table = homology_table(sliced, kind, n, source, policy)
    return BettiTable([row for row in table.rows if row.n == n])


def dims_table(spec: ComplexSpec, max_n: int, source) -> list[tuple[int, int, int]]:
    """(n, r, dim) rows for all bidegrees with 0 <= r <= n <= max_n."""
    out = []
    for n in range(0, max_n + 1):
        basis = chain_basis(n, spec, source)
        per_rank = {}
        for key in basis.keys:
            per_rank[key.r] = per_rank.get(key.r, 0) + 1
        for r in range(0, n + 1):
            out.append((n, r, per_rank.get(r, 0)))
    return out
