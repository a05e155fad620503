"""Matroids stored as basis families over a bitmask ground set.

Elements are 1..n and element j occupies bit j-1 of a basis mask, so a
basis family is a strictly sorted tuple of n-bit integers.  All operations
return new Matroid values; nothing is mutated after construction.  The
bitmask width is capped at 16 elements, which covers every census this
engine is expected to ingest.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .errors import (
    BadPopcount,
    BitOutOfRange,
    ElementOutOfRange,
    EmptyBases,
    ExchangeViolation,
    InvalidGenus,
    InvalidRank,
    RaggedMatrix,
)

MAX_ELEMENTS = 16


def _compress_bit(mask: int, i: int) -> int:
    """Drop bit position i from mask, shifting higher bits down."""
    low = mask & ((1 << i) - 1)
    return low | ((mask >> (i + 1)) << i)


def _bit_positions(mask: int) -> list[int]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


def check_exchange(bases: tuple[int, ...]) -> None:
    """Raise ExchangeViolation unless the family satisfies axiom (B2)."""
    family = set(bases)
    for s in bases:
        for t in bases:
            if s == t:
                continue
            rest = t & ~s
            for i in _bit_positions(s & ~t):
                base = s & ~(1 << i)
                for j in _bit_positions(rest):
                    if (base | (1 << j)) in family:
                        break
                else:
                    raise ExchangeViolation(s, t, i + 1)


class Matroid:
    """A matroid on ground set [n] given by its basis family."""

    __slots__ = ("n", "r", "bases", "_hash", "_indep")

    def __init__(self, n: int, r: int, bases: tuple[int, ...]):
        # Internal constructor: trusts its arguments.  Use from_bases for
        # validated construction from outside data.
        self.n = n
        self.r = r
        self.bases = bases
        self._hash = hash((n, r, bases))
        self._indep = None

    def __eq__(self, other):
        return (
            isinstance(other, Matroid)
            and self.n == other.n
            and self.bases == other.bases
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Matroid(n={self.n}, r={self.r}, {len(self.bases)} bases)"

    # -- basic invariants ------------------------------------------------

    @property
    def nullity(self) -> int:
        return self.n - self.r

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def loops_mask(self) -> int:
        used = 0
        for b in self.bases:
            used |= b
        return self.full_mask & ~used

    def coloops_mask(self) -> int:
        common = self.full_mask
        for b in self.bases:
            common &= b
        return common

    def loops(self) -> set[int]:
        return {i + 1 for i in _bit_positions(self.loops_mask())}

    def coloops(self) -> set[int]:
        return {i + 1 for i in _bit_positions(self.coloops_mask())}

    def is_loopless(self) -> bool:
        return self.loops_mask() == 0

    def is_simple(self) -> bool:
        if self.loops_mask():
            return False
        for x, y in combinations(range(self.n), 2):
            pair = (1 << x) | (1 << y)
            if not any(b & pair == pair for b in self.bases):
                return False
        return True

    def has_parallel_pair(self) -> bool:
        lp = self.loops_mask()
        for x, y in combinations(range(self.n), 2):
            pair = (1 << x) | (1 << y)
            if pair & lp:
                continue
            if not any(b & pair == pair for b in self.bases):
                return True
        return False

    def has_series_pair(self) -> bool:
        return self.dual().has_parallel_pair()

    # -- independence ----------------------------------------------------

    def _indep_table(self) -> bytearray:
        """Indicator over all 2^n subsets; built by downward closure."""
        tab = self._indep
        if tab is None:
            tab = bytearray(1 << self.n)
            stack = list(self.bases)
            for b in stack:
                tab[b] = 1
            while stack:
                m = stack.pop()
                mm = m
                while mm:
                    b = mm & -mm
                    mm ^= b
                    sub = m ^ b
                    if not tab[sub]:
                        tab[sub] = 1
                        stack.append(sub)
            self._indep = tab
        return tab

    def is_independent(self, subset_mask: int) -> bool:
        return bool(self._indep_table()[subset_mask])

    def rank_of(self, subset_mask: int) -> int:
        # Maximal independent subsets of S all arise as B & S for a basis B.
        return max((b & subset_mask).bit_count() for b in self.bases)

    def independent_sets(self, size: int) -> list[int]:
        tab = self._indep_table()
        return [
            m
            for m in _subset_masks(self.n, size)
            if tab[m]
        ]

    def circuits(self) -> set[int]:
        """All inclusion-minimal dependent sets, as masks."""
        tab = self._indep_table()
        out = set()
        for size in range(1, self.r + 2):
            for m in _subset_masks(self.n, size):
                if tab[m]:
                    continue
                mm = m
                minimal = True
                while mm:
                    b = mm & -mm
                    mm ^= b
                    if not tab[m ^ b]:
                        minimal = False
                        break
                if minimal:
                    out.add(m)
        return out

    # -- deletion / contraction / duality ---------------------------------

    def _check_element(self, x: int) -> None:
        if not 1 <= x <= self.n:
            raise ElementOutOfRange(f"element {x} not in [{self.n}]")

    def delete(self, x: int) -> "Matroid":
        self._check_element(x)
        i = x - 1
        bit = 1 << i
        if self.coloops_mask() & bit:
            new = sorted({_compress_bit(b & ~bit, i) for b in self.bases})
            return Matroid(self.n - 1, self.r - 1, tuple(new))
        new = sorted({_compress_bit(b, i) for b in self.bases if not b & bit})
        return Matroid(self.n - 1, self.r, tuple(new))

    def contract(self, x: int) -> "Matroid":
        self._check_element(x)
        i = x - 1
        bit = 1 << i
        if self.loops_mask() & bit:
            new = sorted({_compress_bit(b, i) for b in self.bases})
            return Matroid(self.n - 1, self.r, tuple(new))
        new = sorted({_compress_bit(b & ~bit, i) for b in self.bases if b & bit})
        return Matroid(self.n - 1, self.r - 1, tuple(new))

    def contract_set(self, elements) -> "Matroid":
        """Contract a set of elements, by single contractions in ascending order."""
        m = self
        for off, x in enumerate(sorted(set(elements))):
            m = m.contract(x - off)
        return m

    def restrict(self, elements) -> "Matroid":
        """Restriction to a subset, i.e. deletion of its complement."""
        keep = sorted(set(elements))
        for x in keep:
            self._check_element(x)
        m = self
        drop = [x for x in range(self.n, 0, -1) if x not in set(keep)]
        for x in drop:
            m = m.delete(x)
        return m

    def dual(self) -> "Matroid":
        full = self.full_mask
        new = sorted(full ^ b for b in self.bases)
        return Matroid(self.n, self.n - self.r, tuple(new))

    def direct_sum(self, other: "Matroid") -> "Matroid":
        shift = self.n
        new = sorted(
            b | (c << shift) for b in self.bases for c in other.bases
        )
        return Matroid(self.n + other.n, self.r + other.r, tuple(new))

    # -- connectivity ------------------------------------------------------

    def components(self) -> list[set[int]]:
        """Finest partition of the ground set into direct summands.

        Elements are related when they lie in a common circuit; loops and
        coloops end up as singletons.
        """
        parent = list(range(self.n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for c in self.circuits():
            bits = _bit_positions(c)
            for b in bits[1:]:
                ra, rb = find(bits[0]), find(b)
                if ra != rb:
                    parent[rb] = ra
        groups: dict[int, set[int]] = {}
        for i in range(self.n):
            groups.setdefault(find(i), set()).add(i + 1)
        return sorted(groups.values(), key=min)

    def is_connected(self) -> bool:
        """Per the convention here, the empty matroid is not connected."""
        return self.n >= 1 and len(self.components()) == 1

    # -- minors and representability ---------------------------------------

    def minors(self, n_target: int, r_target: int):
        """Yield all minors with the given size and rank, as Matroid values."""
        k = self.r - r_target
        if k < 0 or n_target < 0 or n_target > self.n - k:
            return
        d = self.n - k - n_target
        for cmask in self.independent_sets(k):
            contracted = self.contract_set(
                [i + 1 for i in _bit_positions(cmask)]
            )
            for dele in combinations(range(contracted.n, 0, -1), d):
                m = contracted
                for x in dele:
                    m = m.delete(x)
                if m.r == r_target:
                    yield m

    def has_minor(self, pattern: "Matroid") -> bool:
        from .canonical import canonical_form

        want = canonical_form(pattern)[0]
        seen = set()
        for m in self.minors(pattern.n, pattern.r):
            if m in seen:
                continue
            seen.add(m)
            if canonical_form(m)[0] == want:
                return True
        return False

    def is_binary(self) -> bool:
        return _property_cached(self, "binary")

    def is_ternary(self) -> bool:
        return _property_cached(self, "ternary")

    def is_regular(self) -> bool:
        return _property_cached(self, "regular")

    def is_graphic(self) -> bool:
        return _property_cached(self, "graphic")

    def is_cographic(self) -> bool:
        return _property_cached(self, "cographic")


def _subset_masks(n: int, size: int):
    for combo in combinations(range(n), size):
        m = 0
        for i in combo:
            m |= 1 << i
        yield m


# -- validated constructors ----------------------------------------------


def from_bases(n: int, r: int, bases) -> Matroid:
    """Build a matroid after checking (B1), popcounts, bit range and (B2)."""
    if n < 0 or n > MAX_ELEMENTS:
        raise BitOutOfRange(f"ground set size {n} outside 0..{MAX_ELEMENTS}")
    fam = sorted(set(int(b) for b in bases))
    if not fam:
        raise EmptyBases("a matroid needs at least one basis")
    full = (1 << n) - 1
    for b in fam:
        if b & ~full:
            raise BitOutOfRange(f"basis {b:#x} uses bits outside [{n}]")
        if b.bit_count() != r:
            raise BadPopcount(f"basis {b:#x} has size {b.bit_count()}, not {r}")
    if r < 0 or r > n:
        raise InvalidRank(f"rank {r} outside 0..{n}")
    fam = tuple(fam)
    check_exchange(fam)
    return Matroid(n, r, fam)


def uniform(r: int, n: int) -> Matroid:
    if not 0 <= r <= n:
        raise InvalidRank(f"uniform({r},{n}) needs 0 <= r <= n")
    if n > MAX_ELEMENTS:
        raise BitOutOfRange(f"ground set size {n} outside 0..{MAX_ELEMENTS}")
    return Matroid(n, r, tuple(sorted(_subset_masks(n, r))))


EMPTY = Matroid(0, 0, (0,))


class Graph:
    """Undirected multigraph; the edge list order labels the matroid."""

    __slots__ = ("v", "edges")

    def __init__(self, v: int, edges):
        self.v = v
        self.edges = tuple((int(a), int(b)) for a, b in edges)
        for a, b in self.edges:
            if not (1 <= a <= v and 1 <= b <= v):
                raise ElementOutOfRange(f"edge ({a},{b}) outside 1..{v}")

    def __repr__(self):
        return f"Graph(v={self.v}, e={len(self.edges)})"


def wheel(g: int) -> Graph:
    """Wheel of genus g: hub 1, rim 2..g+1; spokes first, then rim edges.

    wheel(1) degenerates to a spoke plus a rim loop and wheel(2) has a
    doubled rim edge; both are constructed as-is.
    """
    if g < 1:
        raise InvalidGenus(f"wheel genus must be >= 1, got {g}")
    spokes = [(1, 1 + i) for i in range(1, g + 1)]
    rim = [(1 + i, 1 + (i % g) + 1) for i in range(1, g + 1)]
    return Graph(g + 1, spokes + rim)


def complete_graph(v: int) -> Graph:
    return Graph(v, list(combinations(range(1, v + 1), 2)))


def graphic(g: Graph) -> Matroid:
    """Column matroid of the graph: bases are maximal spanning forests."""
    ne = len(g.edges)
    if ne > MAX_ELEMENTS:
        raise BitOutOfRange(f"too many edges ({ne}) for the mask width")
    parent = list(range(g.v + 1))

    def find(p, a):
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    comps = g.v
    for a, b in g.edges:
        ra, rb = find(parent, a), find(parent, b)
        if ra != rb:
            parent[rb] = ra
            comps -= 1
    rank = g.v - comps
    bases = []
    for combo in combinations(range(ne), rank):
        p = list(range(g.v + 1))
        ok = True
        for i in combo:
            a, b = g.edges[i]
            ra, rb = find(p, a), find(p, b)
            if ra == rb:
                ok = False
                break
            p[rb] = ra
        if ok:
            m = 0
            for i in combo:
                m |= 1 << i
            bases.append(m)
    return Matroid(ne, rank, tuple(sorted(bases)))


def from_f2_matrix(rows) -> Matroid:
    """Column matroid over F2 of a 0/1 matrix given as rows."""
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        raise RaggedMatrix("need at least one row and one column")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise RaggedMatrix("rows have differing lengths")
    if width > MAX_ELEMENTS:
        raise BitOutOfRange(f"too many columns ({width}) for the mask width")
    cols = []
    for j in range(width):
        c = 0
        for i, row in enumerate(rows):
            if int(row[j]) & 1:
                c |= 1 << i
        cols.append(c)

    def f2_rank(vecs):
        pivots = []
        for v in vecs:
            for p in pivots:
                v = min(v, v ^ p)
            if v:
                pivots.append(v)
        return len(pivots)

    rank = f2_rank(cols)
    bases = []
    for combo in combinations(range(width), rank):
        if f2_rank([cols[j] for j in combo]) == rank:
            m = 0
            for j in combo:
                m |= 1 << j
            bases.append(m)
    return Matroid(width, rank, tuple(sorted(bases)))


def fano() -> Matroid:
    """F7: columns are all nonzero vectors of F2^3."""
    cols = [1, 2, 3, 4, 5, 6, 7]
    rows = [[(c >> i) & 1 for c in cols] for i in range(3)]
    return from_f2_matrix(rows)


@lru_cache(maxsize=None)
def _excluded_minors(which: str) -> tuple[Matroid, ...]:
    if which == "binary":
        return (uniform(2, 4),)
    if which == "ternary":
        return (uniform(2, 5), uniform(3, 5), fano(), fano().dual())
    if which == "regular":
        return (uniform(2, 4), fano(), fano().dual())
    if which == "graphic":
        k5 = graphic(complete_graph(5))
        k33 = graphic(Graph(6, [(a, b) for a in (1, 2, 3) for b in (4, 5, 6)]))
        return (uniform(2, 4), fano(), fano().dual(), k5.dual(), k33.dual())
    if which == "cographic":
        return tuple(m.dual() for m in _excluded_minors("graphic"))
    raise ValueError(which)


def _property_cached(m: Matroid, which: str) -> bool:
    from .canonical import canonical_form

    return _property_by_key(canonical_form(m)[0], which)


@lru_cache(maxsize=None)
def _property_by_key(key, which: str) -> bool:
    m = key.matroid()
    return not any(m.has_minor(x) for x in _excluded_minors(which))
