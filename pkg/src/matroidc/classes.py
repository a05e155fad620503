"""Oriented matroid classes as sparse rational vectors over canonical keys.

Orientations are never stored: a matroid on [n] implicitly carries the
standard orientation 1^2^...^n, and every orientation comparison reduces
to a permutation sign.  A class whose matroid admits an odd automorphism
is zero, so such keys never appear in a vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .canonical import CanonicalKey, canonical_form, perm_sign
from .matroid import Matroid


@dataclass(frozen=True)
class Bidegree:
    k: int  # nullity
    r: int  # rank

    @property
    def total(self) -> int:
        return self.k + self.r


def bidegree_of(key: CanonicalKey) -> Bidegree:
    return Bidegree(key.n - key.r, key.r)


def normalize(m: Matroid) -> tuple[CanonicalKey, int] | None:
    """Rewrite [m, 1^...^n] as sign * [canonical rep, 1^...^n].

    Returns None when the class is zero, i.e. the representative admits an
    orientation-reversing (odd) automorphism.
    """
    key, witness = canonical_form(m)
    if key.odd_auto:
        return None
    return key, perm_sign(witness)


class ClassVector:
    """Immutable sparse rational linear combination of canonical keys."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[CanonicalKey, Fraction] | None = None):
        clean = {}
        if terms:
            for k, c in terms.items():
                if c:
                    clean[k] = Fraction(c)
        self.terms = clean

    @classmethod
    def of(cls, m: Matroid, coeff=1) -> "ClassVector":
        nz = normalize(m)
        if nz is None:
            return cls()
        key, sign = nz
        return cls({key: Fraction(coeff) * sign})

    @classmethod
    def unit(cls) -> "ClassVector":
        from .matroid import EMPTY

        return cls.of(EMPTY)

    def is_zero(self) -> bool:
        return not self.terms

    def add(self, other: "ClassVector") -> "ClassVector":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return ClassVector(out)

    def scale(self, c) -> "ClassVector":
        c = Fraction(c)
        return ClassVector({k: v * c for k, v in self.terms.items()})

    def coefficient(self, key: CanonicalKey) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def degrees(self) -> set[int]:
        return {k.n for k in self.terms}

    def __eq__(self, other):
        return isinstance(other, ClassVector) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "ClassVector(0)"
        parts = [f"{c}*{k!r}" for k, c in sorted(self.terms.items(), key=lambda t: t[0].encoding)]
        return "ClassVector(" + " + ".join(parts) + ")"
