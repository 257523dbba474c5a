"""Construction generators: seed graph, blow-ups, part sizes, sparse graphs."""
import random
from decimal import Decimal, getcontext
from itertools import combinations
from math import comb

import pytest

from ordersize.core import (
    Hypergraph3,
    complement,
    induced_edge_count,
    induced_subgraph,
    is_independent,
    link_graph,
)
from ordersize.canon import are_isomorphic
from ordersize.constructions import (
    CanonicalParams,
    F_set,
    InsufficientSparseEdges,
    blowup,
    canonical_minus,
    canonical_plus,
    construct_Hn,
    construct_Hn_iterated,
    f_formula,
    g_construction,
    hn_accepts,
    hn_edge_count,
    hn_it_density,
    hn_it_edge_count,
    is_m_sparse,
    m_sparse_random,
    part_sizes_Hn,
    realize_edge_count,
    seed_H,
    weak_blowup_fixture,
)
from ordersize.forcing import count_k43minus
from ordersize.subsets import subset_histogram

K4_MINUS = Hypergraph3.from_edges(4, [(0, 1, 2), (0, 1, 3), (0, 2, 3)])


# -- seed graph ---------------------------------------------------------------

def test_seed_has_nine_edges_and_expected_degrees():
    h = seed_H()
    assert h.n == 6 and h.edge_count == 9
    assert sorted(h.degrees()) == [4, 4, 4, 5, 5, 5]


def test_seed_is_k4minus_free():
    assert count_k43minus(seed_H()) == 0


def _is_subgraph_of_5cycle(link):
    """Max degree 2 and every cycle (if any) uses all five vertices."""
    if link.max_degree() > 2:
        return False
    adj = {v: set() for v in range(link.n)}
    for a, b in link.edges:
        adj[a].add(b)
        adj[b].add(a)
    seen = set()
    for start in range(link.n):
        if start in seen:
            continue
        comp, stack = set(), [start]
        while stack:
            v = stack.pop()
            if v in comp:
                continue
            comp.add(v)
            stack.extend(adj[v])
        seen |= comp
        edges_in = sum(1 for a, b in link.edges if a in comp)
        if edges_in >= len(comp) and len(comp) < 5:
            return False  # a short cycle
    return True


def test_seed_links_are_subgraphs_of_5cycle():
    h = seed_H()
    sizes = []
    for v in range(6):
        link = link_graph(h, v)
        assert _is_subgraph_of_5cycle(link)
        sizes.append(len(link.edges))
    assert sorted(sizes) == [4, 4, 4, 5, 5, 5]


def test_seed_restriction_to_first_four_paper_labels():
    # paper labels {1,2,3,4} are vertices {0,1,2,3}; they span exactly 2 edges
    assert induced_subgraph(seed_H(), [0, 1, 2, 3]).edge_count == 2


def test_seed_complement_edge_count():
    assert complement(seed_H()).edge_count == 20 - 9 == 11


# -- blow-ups -----------------------------------------------------------------

def test_blowup_of_single_edge():
    g = blowup(Hypergraph3.from_edges(3, [(0, 1, 2)]), 2)
    assert g.n == 6 and g.edge_count == 8


def test_blowup_edge_count_scales_cubically():
    rng = random.Random(3)
    for _ in range(5):
        base = Hypergraph3(5, rng.getrandbits(comb(5, 3)))
        for t in (1, 2, 3):
            assert blowup(base, t).edge_count == t**3 * base.edge_count


def test_blowup_parts_are_independent():
    g = blowup(seed_H(), 3)
    for i in range(6):
        assert is_independent(g, range(3 * i, 3 * i + 3))


def test_full_k4_blowup_contains_ten_edge_six_set():
    g = blowup(Hypergraph3.complete(4), 3)
    # three vertices of part 0 plus one of each other part
    assert induced_edge_count(g, [0, 1, 2, 3, 6, 9]) == 10


def test_weak_blowup_empty_pattern_is_exact_blowup():
    assert weak_blowup_fixture(K4_MINUS, 2, None) == blowup(K4_MINUS, 2)
    assert weak_blowup_fixture(K4_MINUS, 2, "none") == blowup(K4_MINUS, 2)


def test_weak_k4minus_two_configuration_spans_ten():
    g = weak_blowup_fixture(K4_MINUS, 2, None)
    # two from each of the first two parts, one from each of the others: 4+4+2
    assert induced_edge_count(g, [0, 1, 2, 3, 4, 6]) == 10


def test_weak_blowup_all_pattern_keeps_parts_independent():
    g = weak_blowup_fixture(Hypergraph3.complete(4), 2, "all")
    for i in range(4):
        assert is_independent(g, (2 * i, 2 * i + 1))
    assert g.edge_count > blowup(Hypergraph3.complete(4), 2).edge_count


def test_weak_blowup_explicit_triples_and_validation():
    g = weak_blowup_fixture(K4_MINUS, 2, [(0, 1, 2)])  # two in part 0, one in part 1
    assert g.edge_count == blowup(K4_MINUS, 2).edge_count + 1
    with pytest.raises(ValueError):
        weak_blowup_fixture(K4_MINUS, 3, [(0, 1, 2)])  # inside one part
    with pytest.raises(ValueError):
        weak_blowup_fixture(K4_MINUS, 2, [(0, 2, 4)])  # transversal


def test_weak_blowup_callable_pattern():
    calls = []

    def pattern(triple, part_of):
        calls.append(triple)
        return False

    g = weak_blowup_fixture(K4_MINUS, 2, pattern)
    assert g == blowup(K4_MINUS, 2)
    assert calls  # candidates were offered


# -- part sizes ----------------------------------------------------------------

def decimal_ceil(x: Decimal) -> int:
    return int(-((-x).to_integral_value(rounding="ROUND_FLOOR")))


def test_part_sizes_match_decimal_oracle():
    getcontext().prec = 60
    sqrt3 = Decimal(3).sqrt()
    for n in [7, 10, 13, 20, 60, 137, 2000, 10**6]:
        if not hn_accepts(n):
            continue
        sizes = part_sizes_Hn(n).sizes
        big = decimal_ceil(Decimal(n) * sqrt3 / 9)
        small = decimal_ceil(Decimal(n) * (3 - sqrt3) / 9)
        assert sizes[0] == sizes[2] == big
        assert sizes[1] == sizes[3] == sizes[4] == small
        assert sizes[5] == n - 2 * big - 3 * small
        assert sum(sizes) == n


def test_part_sizes_rejects_small_and_flagged_n():
    # frozen boundary data from an exhaustive scan of n <= 100:
    # rejected exactly {6, 8, 9, 11, 16}
    rejected = [n for n in range(6, 101) if not hn_accepts(n)]
    assert rejected == [6, 8, 9, 11, 16]
    with pytest.raises(ValueError):
        part_sizes_Hn(6)
    with pytest.raises(ValueError):
        part_sizes_Hn(5)


def test_part_sizes_sum_and_ratio_at_large_n():
    n = 10**6
    sizes = part_sizes_Hn(n).sizes
    assert sum(sizes) == n
    assert abs(sizes[0] / n - 3**0.5 / 9) < 1e-5
    # the remainder part tracks the same proportion, up to ceiling slack
    assert abs(sizes[5] - sizes[0]) <= 5


# -- the iterated construction ----------------------------------------------------

def test_hn_formula_equals_popcount():
    for n in [7, 10, 13, 23, 41, 60, 120, 200]:
        if not hn_accepts(n):
            continue
        assert construct_Hn(n).edge_count == hn_edge_count(n)
        assert construct_Hn_iterated(n).edge_count == hn_it_edge_count(n)


def test_hn_it_six_set_maximum_at_most_nine_sampled_n():
    for n in [10, 13, 21, 30]:
        g = construct_Hn_iterated(n)
        scan = subset_histogram(g, 6)
        assert scan.max_count <= 9
        assert scan.histogram[10] == 0


def test_hn_it_density_converges():
    target = 4 / (3 + 7 * 3**0.5)
    d = hn_it_density(2000)
    assert abs(d - target) < 0.01
    assert abs((1 - 2 * d) - 0.47106) < 0.02


def test_hn_it_cutoff_validation():
    with pytest.raises(ValueError):
        construct_Hn_iterated(20, cutoff=5)


# -- G(S,n,k) and the edge-count formula ---------------------------------------------

def test_g_empty_S_is_clique_plus_isolated():
    g = g_construction(CanonicalParams(frozenset(), 9, 4))
    assert g.edge_count == comb(4, 3)
    assert induced_subgraph(g, range(4)) == Hypergraph3.complete(4)
    assert is_independent(g, range(4, 9))


def test_f_formula_examples():
    assert f_formula(CanonicalParams(frozenset(), 10, 5)) == 10
    assert f_formula(CanonicalParams(frozenset({1}), 7, 1)) == comb(6, 2) == 15
    assert f_formula(CanonicalParams(frozenset({2}), 6, 3)) == 10


def test_g_construction_popcount_matches_formula_small():
    for S in (frozenset(), frozenset({1}), frozenset({2}), frozenset({1, 2})):
        for n in range(0, 9):
            for k in range(n + 1):
                p = CanonicalParams(S, n, k)
                assert g_construction(p).edge_count == f_formula(p)


def test_g_complement_identity_spot():
    for S in (frozenset(), frozenset({1}), frozenset({2}), frozenset({1, 2})):
        for n in (5, 6, 7):
            for k in range(n + 1):
                p = CanonicalParams(S, n, k)
                assert are_isomorphic(
                    complement(g_construction(p)),
                    g_construction(p.complement_params),
                )


def test_g_construction_is_hereditary():
    rng = random.Random(31)
    for _ in range(25):
        n = rng.randrange(5, 11)
        k = rng.randrange(n + 1)
        S = frozenset(rng.sample([1, 2], rng.randrange(3)))
        g = g_construction(CanonicalParams(S, n, k))
        sub_vs = sorted(rng.sample(range(n), rng.randrange(3, n + 1)))
        k2 = sum(1 for v in sub_vs if v < k)
        expected = g_construction(CanonicalParams(S, len(sub_vs), k2))
        assert are_isomorphic(induced_subgraph(g, sub_vs), expected)


def test_f_increment_bounded_by_three_n_squared():
    for S in (frozenset(), frozenset({1}), frozenset({2}), frozenset({1, 2})):
        for n in (10, 50, 120, 200):
            f = [f_formula(CanonicalParams(S, n, k)) for k in range(n + 1)]
            assert all(abs(f[x] - f[x - 1]) <= 3 * n * n for x in range(1, n + 1))


# -- F sets ---------------------------------------------------------------------------

def brute_F_membership(S, m, value):
    f = [f_formula(CanonicalParams(frozenset(S), m, x)) for x in range(m + 1)]
    in_plus = any(f[x] <= value <= f[x] + m for x in range(m))
    in_minus = any(f[x] - m <= value <= f[x] for x in range(1, m + 1))
    return in_plus and in_minus and 0 <= value <= comb(m, 3)


def test_F_set_matches_brute_force_membership():
    rng = random.Random(41)
    for S in ((), (1,), (2,), (1, 2)):
        for m in (4, 6, 9, 13, 20, 40):
            fs = F_set(S, m)
            values = set(rng.sample(range(0, comb(m, 3) + 1), min(300, comb(m, 3) + 1)))
            values.update(v for iv in fs.intervals for v in iv)
            for v in values:
                assert (v in fs) == brute_F_membership(S, m, v), (S, m, v)


def test_ten_is_attainable_for_every_S_at_m6():
    for S in ((), (1,), (2,), (1, 2)):
        assert 10 in F_set(S, 6)


def test_F1_16_misses_the_low_range():
    fs = F_set({1}, 16).clamp(1, comb(15, 2) - 1)
    assert not fs


def test_F_empty_20_middle_members_are_tetrahedral():
    fs = F_set((), 20).clamp(comb(19, 2), comb(20, 3) - 1)
    tetras = {comb(x, 3) for x in range(21)}
    assert set(fs.members(limit=10**5)) <= tetras


# -- sparse graphs ---------------------------------------------------------------------

def test_is_m_sparse_violation_and_certificate():
    cert = is_m_sparse(Hypergraph3.complete(6), 6)
    assert not cert.valid
    assert cert.worst_count == 20 and len(cert.worst_set) == 6
    few = Hypergraph3.from_edges(8, [(0, 1, 2), (3, 4, 5), (5, 6, 7), (1, 3, 5)])
    assert is_m_sparse(few, 6).valid  # at most m edges in total
    assert is_m_sparse(Hypergraph3.empty(10), 5).valid


def test_m_sparse_random_trivial_and_small():
    g, cert = m_sparse_random(8, 8, seed=1)
    assert cert.valid and g.edge_count <= 8  # single m-set caps the count
    g, cert = m_sparse_random(12, 6, seed=2)
    assert cert.valid
    assert is_m_sparse(g, 6).valid


def test_m_sparse_random_deterministic():
    a, _ = m_sparse_random(14, 6, seed=5)
    b, _ = m_sparse_random(14, 6, seed=5)
    c, _ = m_sparse_random(14, 6, seed=6)
    assert a == b
    assert a != c


def test_m_sparse_random_rejects_bad_arguments():
    with pytest.raises(ValueError):
        m_sparse_random(8, 3, seed=0)
    with pytest.raises(ValueError):
        m_sparse_random(5, 6, seed=0)


# -- canonical plus / minus -----------------------------------------------------------

def test_canonical_plus_zero_sparse_is_g_construction():
    p = CanonicalParams(frozenset({2}), 12, 4)
    assert canonical_plus(p, 6, seed=3, sparse_edges=0) == g_construction(p)


def test_canonical_plus_induced_counts_in_plus_union():
    p = CanonicalParams(frozenset({2}), 15, 4)
    m = 6
    g = canonical_plus(p, m, seed=9)
    f = [f_formula(CanonicalParams(p.S, m, x)) for x in range(m + 1)]
    rng = random.Random(17)
    for _ in range(150):
        vs = rng.sample(range(15), m)
        c = induced_edge_count(g, vs)
        assert any(f[x] <= c <= f[x] + m for x in range(m)), (vs, c)


def test_canonical_minus_induced_counts_in_minus_union():
    p = CanonicalParams(frozenset({2}), 15, 11)
    m = 6
    g = canonical_minus(p, m, seed=9)
    f = [f_formula(CanonicalParams(p.S, m, x)) for x in range(m + 1)]
    rng = random.Random(19)
    for _ in range(150):
        vs = rng.sample(range(15), m)
        c = induced_edge_count(g, vs)
        assert any(f[x] - m <= c <= f[x] for x in range(1, m + 1)), (vs, c)


def test_canonical_minus_is_complement_of_plus():
    p = CanonicalParams(frozenset({1}), 14, 9)
    minus = canonical_minus(p, 6, seed=4)
    plus = canonical_plus(p.complement_params, 6, seed=4)
    assert minus == complement(plus)


# -- realize_edge_count -----------------------------------------------------------------

def test_realize_exact_formula_values():
    p = CanonicalParams(frozenset({2}), 14, 5)
    g = realize_edge_count({2}, 14, f_formula(p), m=6, seed=8)
    assert g.edge_count == f_formula(p)


def test_realize_adds_single_sparse_edge():
    p = CanonicalParams(frozenset(), 14, 5)
    g = realize_edge_count((), 14, f_formula(p) + 1, m=6, seed=8)
    assert g.edge_count == f_formula(p) + 1


def test_realize_worked_example():
    # S = {}, n = 20, e = 125: bracket picks k = 10 (C(10,3)=120 <= 125 <= C(11,3)=165)
    g = realize_edge_count((), 20, 125, m=8, seed=12)
    assert g.edge_count == 125
    assert induced_subgraph(g, range(10)) == Hypergraph3.complete(10)
    assert induced_edge_count(g, range(10, 20)) == 5


def test_realize_range_validation_and_insufficient_pool():
    with pytest.raises(ValueError):
        realize_edge_count((), 10, comb(10, 3) + 1, m=6, seed=0)
    # base set of one vertex cannot bridge a positive gap
    with pytest.raises(InsufficientSparseEdges):
        realize_edge_count((), 4, 3, m=6, seed=0)


def test_realize_full_clique_boundary():
    g = realize_edge_count((), 9, comb(9, 3), m=6, seed=0)
    assert g == Hypergraph3.complete(9)
