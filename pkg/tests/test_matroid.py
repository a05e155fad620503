"""Basis-family matroid operations against small independent oracles."""

import random
from itertools import combinations

import pytest

from matroidc.canonical import canonical_key, relabel
from matroidc.enumerate import enumerate_all
from matroidc.errors import (
    BadPopcount,
    BitOutOfRange,
    ElementOutOfRange,
    EmptyBases,
    ExchangeViolation,
    InvalidGenus,
    InvalidRank,
    RaggedMatrix,
)
from matroidc.matroid import (
    EMPTY,
    Graph,
    complete_graph,
    fano,
    from_bases,
    from_f2_matrix,
    graphic,
    uniform,
    wheel,
)


def mask(*elements):
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


# -- oracles -----------------------------------------------------------------


def count_spanning_forests(graph, size):
    """Union-find forest counter, independent of graphic()."""
    count = 0
    for combo in combinations(range(len(graph.edges)), size):
        parent = list(range(graph.v + 1))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        ok = True
        for i in combo:
            a, b = graph.edges[i]
            ra, rb = find(a), find(b)
            if ra == rb:
                ok = False
                break
            parent[rb] = ra
        count += ok
    return count


def f2_independent(cols):
    """Gaussian elimination over F2 on column tuples of 0/1."""
    rows = len(cols[0])
    mat = [list(c) for c in cols]
    rank = 0
    for r in range(rows):
        piv = next((i for i in range(rank, len(mat)) if mat[i][r]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i][r]:
                mat[i] = [a ^ b for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank == len(cols)


def slow_exchange_ok(bases):
    """Definition-level (B2) check on frozensets."""
    fam = [frozenset(i for i in range(16) if b >> i & 1) for b in bases]
    fam_set = set(fam)
    for s in fam:
        for t in fam:
            if s == t:
                continue
            for x in s - t:
                if not any((s - {x}) | {y} in fam_set for y in t - s):
                    return False
    return True


# -- constructors --------------------------------------------------------------


def test_from_bases_loop_matroid():
    m = from_bases(1, 0, [0])
    assert (m.n, m.r, m.bases) == (1, 0, (0,))
    assert m.loops() == {1}


def test_from_bases_uniform24():
    m = from_bases(4, 2, [mask(a, b) for a, b in combinations((1, 2, 3, 4), 2)])
    assert m == uniform(2, 4)
    assert len(m.bases) == 6


def test_from_bases_single_basis_has_vacuous_exchange():
    m = from_bases(2, 1, [mask(1)])
    assert m.loops() == {2}
    assert m.coloops() == {1}


def test_from_bases_dedups_and_sorts():
    m = from_bases(2, 1, [mask(2), mask(1), mask(2)])
    assert m.bases == (1, 2)


def test_from_bases_errors():
    with pytest.raises(EmptyBases):
        from_bases(2, 1, [])
    with pytest.raises(BadPopcount):
        from_bases(3, 2, [mask(1)])
    with pytest.raises(BitOutOfRange):
        from_bases(2, 1, [mask(3)])
    # {1,2} and {3,4} cannot exchange x=1
    with pytest.raises(ExchangeViolation):
        from_bases(4, 2, [mask(1, 2), mask(3, 4)])


def test_uniform():
    assert len(uniform(2, 4).bases) == 6
    u01 = uniform(0, 1)
    assert u01.loops() == {1} and u01.coloops() == set()
    u11 = uniform(1, 1)
    assert u11.coloops() == {1}
    with pytest.raises(InvalidRank):
        uniform(3, 2)
    with pytest.raises(InvalidRank):
        uniform(-1, 2)


def test_graphic_k4():
    k4 = graphic(complete_graph(4))
    assert (k4.n, k4.r) == (6, 3)
    assert len(k4.bases) == count_spanning_forests(complete_graph(4), 3) == 16
    assert k4.loops() == set() and k4.coloops() == set()


def test_graphic_loop_edge():
    m = graphic(Graph(1, [(1, 1)]))
    assert canonical_key(m) == canonical_key(uniform(0, 1))


def test_wheel_shapes():
    w3 = wheel(3)
    assert (w3.v, len(w3.edges)) == (4, 6)
    assert (wheel(5).v, len(wheel(5).edges)) == (6, 10)
    w1 = wheel(1)
    assert (w1.v, len(w1.edges)) == (2, 2)
    assert w1.edges[1] == (2, 2)  # degenerate rim loop
    with pytest.raises(InvalidGenus):
        wheel(0)


def test_wheel3_is_k4():
    assert canonical_key(graphic(wheel(3))) == canonical_key(graphic(complete_graph(4)))


def test_from_f2_fano():
    f7 = fano()
    assert (f7.n, f7.r) == (7, 3)
    cols = [[(c >> i) & 1 for i in range(3)] for c in range(1, 8)]
    expected = [
        combo
        for combo in combinations(range(7), 3)
        if f2_independent([cols[j] for j in combo])
    ]
    assert len(f7.bases) == len(expected) == 28


def test_from_f2_small():
    assert from_f2_matrix([[1, 0], [0, 1]]) == uniform(2, 2)
    m = from_f2_matrix([[1, 0, 0], [0, 1, 0]])
    assert m.loops() == {3}
    with pytest.raises(RaggedMatrix):
        from_f2_matrix([[1, 0], [1]])
    with pytest.raises(RaggedMatrix):
        from_f2_matrix([])


# -- element predicates ---------------------------------------------------------


def test_loops_coloops_examples():
    assert uniform(0, 1).loops() == {1}
    assert uniform(1, 1).coloops() == {1}
    k4 = graphic(complete_graph(4))
    assert k4.loops() == set() == k4.coloops()


def test_simple_loopless():
    assert not uniform(1, 2).is_simple()  # parallel pair
    assert graphic(complete_graph(4)).is_simple()
    assert not uniform(0, 1).is_loopless()
    assert EMPTY.is_simple()


# -- deletion / contraction / duality ---------------------------------------------


def test_delete_contract_examples():
    assert uniform(2, 4).delete(4) == uniform(2, 3)
    assert uniform(2, 4).contract(4) == uniform(1, 3)
    assert uniform(0, 1).contract(1) == EMPTY
    assert uniform(0, 1).delete(1) == EMPTY
    with pytest.raises(ElementOutOfRange):
        uniform(2, 4).delete(5)


def test_restrict_is_delete_complement():
    m = graphic(complete_graph(4))
    assert m.restrict([1, 2, 3, 4, 5, 6]) == m
    assert m.restrict([]) == EMPTY
    sub = m.restrict([1, 2, 4])
    assert sub.n == 3


def test_contract_set_order_independent():
    rng = random.Random(3)
    for m in enumerate_all(5):
        elements = [x for x in range(1, 6) if rng.random() < 0.5]
        asc = m.contract_set(elements)
        desc = m
        for x in sorted(elements, reverse=True):
            desc = desc.contract(x)
        assert asc == desc


def test_dual_examples():
    assert uniform(2, 4).dual() == uniform(2, 4)
    assert uniform(0, 1).dual() == uniform(1, 1)
    d = graphic(complete_graph(4)).dual()
    assert (d.n, d.r) == (6, 3)
    assert slow_exchange_ok(d.bases)


def test_dual_involution_exhaustive():
    for n in range(0, 7):
        for m in enumerate_all(n):
            assert m.dual().dual() == m


def test_loops_dualize_to_coloops():
    for n in range(0, 7):
        for m in enumerate_all(n):
            assert m.loops() == m.dual().coloops()


def test_direct_sum():
    s = uniform(1, 1).direct_sum(uniform(0, 1))
    assert (s.n, s.r, s.bases) == (2, 1, (1,))
    assert EMPTY.direct_sum(s) == s
    assert uniform(2, 3).direct_sum(uniform(1, 2)).r == 3


def test_rank_lemma_exhaustive():
    # deletion keeps rank unless x is a coloop; contraction drops it
    # unless x is a loop
    for n in range(1, 6):
        for m in enumerate_all(n):
            coloops = m.coloops()
            loops = m.loops()
            for x in range(1, n + 1):
                assert m.delete(x).r == m.r - (x in coloops)
                assert m.contract(x).r == m.r - (x not in loops)


def test_rank_additivity_restriction_contraction():
    for n in range(0, 6):
        for m in enumerate_all(n):
            for smask in range(1 << n):
                s = [i + 1 for i in range(n) if smask >> i & 1]
                assert m.r == m.restrict(s).r + m.contract_set(s).r


def test_delete_commutes():
    for n in range(2, 6):
        for m in enumerate_all(n):
            for x in range(1, n + 1):
                for y in range(1, n + 1):
                    if x == y:
                        continue
                    # relabel-consistent: delete larger index first on one side
                    a, b = max(x, y), min(x, y)
                    left = m.delete(a).delete(b)
                    right = m.delete(b).delete(a - 1)
                    assert left == right
                    assert m.contract(a).contract(b) == m.contract(b).contract(a - 1)


# -- circuits and connectivity -----------------------------------------------------


def test_circuits_examples():
    assert uniform(1, 2).circuits() == {mask(1, 2)}
    assert uniform(0, 1).circuits() == {mask(1)}
    k4_circuits = graphic(complete_graph(4)).circuits()
    assert len(k4_circuits) == 7
    assert all(c.bit_count() in (3, 4) for c in k4_circuits)


def test_components_examples():
    two = uniform(1, 1).direct_sum(uniform(1, 1))
    assert two.components() == [{1}, {2}]
    assert graphic(complete_graph(4)).is_connected()
    assert not EMPTY.is_connected()
    assert uniform(0, 1).is_connected() and uniform(1, 1).is_connected()


def test_components_reassemble():
    for n in range(1, 7):
        for m in enumerate_all(n):
            parts = m.components()
            rebuilt = EMPTY
            for part in parts:
                rebuilt = rebuilt.direct_sum(m.restrict(sorted(part)))
            assert canonical_key(rebuilt) == canonical_key(m)


# -- minors and representability -----------------------------------------------------


def test_has_minor_examples():
    u24 = uniform(2, 4)
    k4 = graphic(complete_graph(4))
    assert u24.has_minor(u24)
    assert not k4.has_minor(u24)
    assert not fano().has_minor(u24)
    assert k4.has_minor(uniform(1, 2))


def test_representability_flags():
    k4 = graphic(complete_graph(4))
    assert k4.is_regular() and k4.is_binary() and k4.is_ternary()
    assert k4.is_graphic() and k4.is_cographic()
    assert not uniform(2, 4).is_binary()
    assert uniform(2, 4).is_ternary()
    f7 = fano()
    assert f7.is_binary() and not f7.is_regular() and not f7.is_ternary()
    # graphic matroids are regular
    for g in (complete_graph(3), wheel(3), Graph(2, [(1, 2), (1, 2)])):
        assert graphic(g).is_regular()


def test_random_relabelings_stay_valid():
    rng = random.Random(11)
    for m in enumerate_all(5):
        p = list(range(1, 6))
        rng.shuffle(p)
        q = relabel(m, tuple(p))
        assert slow_exchange_ok(q.bases)


def test_nonplanar_graphic_not_cographic():
    k5 = graphic(complete_graph(5))
    k33 = graphic(Graph(6, [(a, b) for a in (1, 2, 3) for b in (4, 5, 6)]))
    for m in (k5, k33):
        assert m.is_graphic() and m.is_regular()
        assert not m.is_cographic()
        assert m.dual().is_cographic() and not m.dual().is_graphic()
