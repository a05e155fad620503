"""Isomorph-free generation of small matroids and census-file ingestion.

Two generation routes are kept deliberately independent so they can check
each other: a direct backtracking search over basis families (used through
n=6) and single-element extensions of the previous degree (the only viable
route at n=7, where direct search would face 2^35 candidate families).
"""

from __future__ import annotations

import os
from functools import lru_cache
from itertools import combinations

from .canonical import canonical_key
from .errors import (
    DegreeTooLarge,
    ExchangeViolation,
    MatroidError,
    ParseError,
    SourceIncomplete,
)
from .matroid import MAX_ELEMENTS, Matroid, from_bases, from_f2_matrix

ENUMERATION_LIMIT = 7


def _exchange_families(fixed: tuple[int, ...], cands: list[int], force_first: bool):
    """Yield every subset A of cands with fixed + A satisfying basis exchange.

    fixed must already satisfy exchange on its own.  Requirements created
    when a candidate joins are tracked as bitmasks over candidate indices;
    a requirement with no satisfier left kills the branch.  Decisions run
    in ascending candidate order, so pending witnesses always sit strictly
    ahead of the cursor.
    """
    fixed_set = set(fixed)
    index_of = {c: i for i, c in enumerate(cands)}
    nc = len(cands)

    def bit_positions(mask):
        out = []
        while mask:
            b = mask & -mask
            out.append(b.bit_length() - 1)
            mask ^= b
        return out

    def new_requirements(t: int, members, chosen_set):
        """Requirement masks created by adding cands[t]; None means dead."""
        tmask = cands[t]
        reqs = []
        for u in members:
            for pair_from, pair_to in ((u, tmask), (tmask, u)):
                gain = pair_to & ~pair_from
                for i in bit_positions(pair_from & ~pair_to):
                    stripped = pair_from & ~(1 << i)
                    wit = 0
                    satisfied = False
                    for j in bit_positions(gain):
                        w = stripped | (1 << j)
                        if w in fixed_set or w in chosen_set or w == tmask:
                            satisfied = True
                            break
                        idx = index_of.get(w)
                        if idx is not None and idx > t:
                            wit |= 1 << idx
                    if satisfied:
                        continue
                    if not wit:
                        return None
                    reqs.append(wit)
        return reqs

    # Iterative DFS: frame = (cursor, chosen indices tuple, pending reqs)
    start = 0
    init_chosen: tuple[int, ...] = ()
    init_pending: tuple[int, ...] = ()
    if force_first:
        if not cands:
            return
        reqs = new_requirements(0, list(fixed), set())
        if reqs is None:
            return
        init_chosen = (0,)
        init_pending = tuple(reqs)
        start = 1
    stack = [(start, init_chosen, init_pending)]
    while stack:
        i, chosen, pending = stack.pop()
        if i == nc:
            yield tuple(cands[j] for j in chosen)
            continue
        bit = 1 << i
        # exclude cands[i]
        dead = False
        kept = []
        for w in pending:
            w2 = w & ~bit
            if not w2:
                dead = True
                break
            kept.append(w2)
        if not dead:
            stack.append((i + 1, chosen, tuple(kept)))
        # include cands[i]
        chosen_set = {cands[j] for j in chosen}
        members = list(fixed) + [cands[j] for j in chosen]
        reqs = new_requirements(i, members, chosen_set)
        if reqs is None:
            continue
        nxt = [w for w in pending if not w & bit]
        nxt.extend(reqs)
        stack.append((i + 1, chosen + (i,), tuple(nxt)))


def _direct_search_rank(n: int, r: int):
    """All rank-r matroids on [n] containing the basis {1..r}, as families.

    Every isomorphism class has such a representative, so this is complete
    up to isomorphism.
    """
    cands = [sum(1 << i for i in combo) for combo in combinations(range(n), r)]
    cands.sort()
    yield from _exchange_families((), cands, force_first=True)


def enumerate_direct(n: int) -> list[Matroid]:
    """Direct-search enumeration of isomorphism classes; the slow oracle."""
    if n == 0:
        return [Matroid(0, 0, (0,))]
    reps: dict = {}
    for r in range(n + 1):
        for fam in _direct_search_rank(n, r):
            m = Matroid(n, r, fam)
            key = canonical_key(m)
            if key not in reps:
                reps[key] = key.matroid()
    return [reps[k] for k in sorted(reps, key=lambda k: k.encoding)]


def extend_by_element(m: Matroid) -> list[Matroid]:
    """All matroids on [n+1] whose deletion of element n+1 gives m.

    The new element is a coloop, a loop (empty choice below), or joins
    bases through independent (r-1)-sets of m filtered by the exchange
    backtracker.
    """
    n, r = m.n, m.r
    if n + 1 > MAX_ELEMENTS:
        raise DegreeTooLarge(f"cannot extend beyond {MAX_ELEMENTS} elements")
    ebit = 1 << n
    out = [m.direct_sum(Matroid(1, 1, (1,)))]  # coloop extension
    cands = sorted(s | ebit for s in m.independent_sets(r - 1)) if r >= 1 else []
    for extra in _exchange_families(m.bases, cands, force_first=False):
        fam = tuple(sorted(m.bases + extra))
        out.append(Matroid(n + 1, r, fam))
    return out


def enumerate_by_extension(n: int) -> list[Matroid]:
    """Extension-route enumeration, growing from the empty matroid."""
    reps = [Matroid(0, 0, (0,))]
    for _ in range(n):
        seen: dict = {}
        for parent in reps:
            for child in extend_by_element(parent):
                key = canonical_key(child)
                if key not in seen:
                    seen[key] = key.matroid()
        reps = [seen[k] for k in sorted(seen, key=lambda k: k.encoding)]
    return reps


@lru_cache(maxsize=None)
def enumerate_all(n: int) -> tuple[Matroid, ...]:
    """One canonical representative per isomorphism class on [n], n <= 7."""
    if n < 0 or n > ENUMERATION_LIMIT:
        raise DegreeTooLarge(f"built-in enumeration stops at n={ENUMERATION_LIMIT}")
    if n <= 6:
        return tuple(enumerate_direct(n))
    seen: dict = {}
    for parent in enumerate_all(6):
        for child in extend_by_element(parent):
            key = canonical_key(child)
            if key not in seen:
                seen[key] = key.matroid()
    return tuple(seen[k] for k in sorted(seen, key=lambda k: k.encoding))


# -- sources ----------------------------------------------------------------


class MatroidSource:
    """Supplier of all isomorphism-class representatives per degree."""

    def covers(self, n: int) -> bool:
        raise NotImplementedError

    def tags(self) -> frozenset[str]:
        """Property tags the census is restricted to (empty = everything)."""
        return frozenset()

    def representatives(self, n: int) -> tuple[Matroid, ...]:
        raise NotImplementedError

    def require(self, n: int) -> tuple[Matroid, ...]:
        if not self.covers(n):
            raise SourceIncomplete(f"{self!r} does not cover degree {n}")
        return self.representatives(n)


class EnumeratorSource(MatroidSource):
    def __init__(self, max_n: int = ENUMERATION_LIMIT):
        self.max_n = min(max_n, ENUMERATION_LIMIT)

    def covers(self, n: int) -> bool:
        return 0 <= n <= self.max_n

    def representatives(self, n: int) -> tuple[Matroid, ...]:
        return enumerate_all(n)

    def __repr__(self):
        return f"EnumeratorSource(max_n={self.max_n})"


class FileSource(MatroidSource):
    """Census file backend; coverage and property tags are declared in-file."""

    def __init__(self, by_degree, coverage, tags, path=""):
        self._by_degree = {
            n: tuple(ms) for n, ms in by_degree.items()
        }
        self._coverage = frozenset(coverage)
        self._tags = frozenset(tags)
        self.path = path

    def covers(self, n: int) -> bool:
        return n in self._coverage

    def tags(self) -> frozenset[str]:
        return self._tags

    def representatives(self, n: int) -> tuple[Matroid, ...]:
        return self._by_degree.get(n, ())

    def __repr__(self):
        cov = ",".join(str(n) for n in sorted(self._coverage))
        return f"FileSource({self.path or '<mem>'}, degrees={cov})"


def _dedup_canonical(matroids) -> dict[int, tuple[Matroid, ...]]:
    per_degree: dict[int, dict] = {}
    for m in matroids:
        key = canonical_key(m)
        per_degree.setdefault(m.n, {})[key] = key.matroid()
    return {
        n: tuple(d[k] for k in sorted(d, key=lambda k: k.encoding))
        for n, d in per_degree.items()
    }


def _parse_directives(lines):
    coverage = None
    tags = set()
    for ln, raw in lines:
        body = raw[1:].strip()
        if body.startswith("coverage:"):
            coverage = set()
            for tok in body[len("coverage:"):].replace(",", " ").split():
                if "-" in tok:
                    a, b = tok.split("-", 1)
                    coverage.update(range(int(a), int(b) + 1))
                else:
                    coverage.add(int(tok))
        elif body.startswith("property:"):
            tags.update(body[len("property:"):].replace(",", " ").split())
    return coverage, frozenset(tags)


def parse_mtrd(path: str) -> FileSource:
    """MTRD v1: header 'MTRD 1', one record per line: n r k mask_1 .. mask_k."""
    with open(path) as fh:
        raw_lines = fh.read().splitlines()
    if not raw_lines or raw_lines[0].split() != ["MTRD", "1"]:
        raise ParseError("missing MTRD 1 header", line=1)
    comments = []
    matroids = []
    for ln, raw in enumerate(raw_lines[1:], start=2):
        s = raw.strip()
        if not s:
            continue
        if s.startswith("#"):
            comments.append((ln, s))
            continue
        toks = s.split()
        try:
            nums = [int(t) for t in toks]
        except ValueError:
            raise ParseError(f"non-integer token in record: {s!r}", line=ln)
        if len(nums) < 3:
            raise ParseError("record needs at least n, r and a count", line=ln)
        n, r, k = nums[:3]
        masks = nums[3:]
        if len(masks) != k:
            raise ParseError(f"expected {k} masks, found {len(masks)}", line=ln)
        if any(b >= a for a, b in zip(masks[1:], masks)):
            raise ParseError("masks must be strictly increasing", line=ln)
        try:
            matroids.append(from_bases(n, r, masks))
        except ExchangeViolation as exc:
            raise ExchangeViolation(exc.s_mask, exc.t_mask, exc.x, line=ln) from None
        except MatroidError as exc:
            raise ParseError(f"invalid record: {exc}", line=ln) from None
    coverage, tags = _parse_directives(comments)
    by_degree = _dedup_canonical(matroids)
    if coverage is None:
        coverage = set(by_degree)
    return FileSource(by_degree, coverage, tags, path=path)


def write_mtrd(path: str, matroids, coverage=None, tags=()) -> None:
    with open(path, "w") as fh:
        fh.write("MTRD 1\n")
        if coverage:
            fh.write("# coverage: " + " ".join(str(n) for n in sorted(coverage)) + "\n")
        if tags:
            fh.write("# property: " + " ".join(sorted(tags)) + "\n")
        for m in matroids:
            masks = " ".join(str(b) for b in m.bases)
            fh.write(f"{m.n} {m.r} {len(m.bases)} {masks}\n")


def parse_f2db(path: str) -> FileSource:
    """F2DB v1: blank-line-separated blocks of equal-length 0/1 rows."""
    with open(path) as fh:
        raw_lines = fh.read().splitlines()
    comments = []
    blocks: list[list[str]] = []
    current: list[str] = []
    current_start = None
    for ln, raw in enumerate(raw_lines, start=1):
        s = raw.strip()
        if s.startswith("#"):
            comments.append((ln, s))
            continue
        if not s:
            if current:
                blocks.append((current_start, current))
                current = []
            continue
        if not set(s) <= {"0", "1"}:
            raise ParseError(f"row must be 0/1 characters: {s!r}", line=ln)
        if not current:
            current_start = ln
        current.append(s)
    if current:
        blocks.append((current_start, current))
    matroids = []
    for start, rows in blocks:
        if any(len(r) != len(rows[0]) for r in rows):
            raise ParseError("ragged block", line=start)
        matroids.append(from_f2_matrix([[int(ch) for ch in row] for row in rows]))
    coverage, tags = _parse_directives(comments)
    by_degree = _dedup_canonical(matroids)
    if coverage is None:
        coverage = set(by_degree)
    return FileSource(by_degree, coverage, tags, path=path)


def load_source(path: str) -> FileSource:
    """Dispatch on contents: MTRD header or F2DB block file."""
    resolved = path
    if not os.path.exists(resolved):
        dbdir = os.environ.get("MATROIDC_DB_DIR")
        if dbdir and os.path.exists(os.path.join(dbdir, path)):
            resolved = os.path.join(dbdir, path)
        else:
            raise ParseError(f"no such source file: {path}")
    with open(resolved) as fh:
        head = fh.readline()
    if head.split() == ["MTRD", "1"]:
        return parse_mtrd(resolved)
    return parse_f2db(resolved)
