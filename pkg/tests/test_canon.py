"""Canonical form: label invariance, isomorphism decisions, class counting."""
import random
from itertools import combinations, permutations
from math import comb, factorial

import pytest

from ordersize.core import CapabilityError, Hypergraph3, apply_permutation, complement
from ordersize.canon import are_isomorphic, canonical_form, is_canonical_labeling
from ordersize.constructions import seed_H


def burnside_class_count(n):
    """Orbit count of S_n acting on all 3-graphs: average of 2^#triple-cycles."""
    triples = list(combinations(range(n), 3))
    index = {t: i for i, t in enumerate(triples)}
    total = 0
    for perm in permutations(range(n)):
        seen = [False] * len(triples)
        cycles = 0
        for i in range(len(triples)):
            if seen[i]:
                continue
            cycles += 1
            j = i
            while not seen[j]:
                seen[j] = True
                t = triples[j]
                j = index[tuple(sorted(perm[v] for v in t))]
        total += 1 << cycles
    assert total % factorial(n) == 0
    return total // factorial(n)


def random_graph(n, rng, density=0.5):
    bits = 0
    for t in range(comb(n, 3)):
        if rng.random() < density:
            bits |= 1 << t
    return Hypergraph3(n, bits)


def test_invariance_under_all_permutations_small_n():
    rng = random.Random(11)
    for n in range(1, 6):
        for _ in range(8):
            g = random_graph(n, rng, density=rng.random())
            ref = canonical_form(g).edges
            for perm in permutations(range(n)):
                assert canonical_form(apply_permutation(g, perm)).edges == ref


def test_invariance_under_random_permutations_n_up_to_8():
    rng = random.Random(13)
    checks = 0
    while checks < 1000:
        n = rng.randrange(4, 9)
        g = random_graph(n, rng, density=rng.random())
        ref = canonical_form(g).edges
        for _ in range(5):
            perm = list(range(n))
            rng.shuffle(perm)
            assert canonical_form(apply_permutation(g, perm)).edges == ref
            checks += 1


def test_certificate_permutation_reproduces_canonical_bits():
    rng = random.Random(17)
    for _ in range(50):
        n = rng.randrange(1, 9)
        g = random_graph(n, rng, density=rng.random())
        cf = canonical_form(g)
        assert apply_permutation(g, cf.perm).edges == cf.edges


def test_seed_graph_isomorphic_to_its_reversal():
    h = seed_H()
    rev = apply_permutation(h, list(range(5, -1, -1)))
    assert are_isomorphic(h, rev)


def test_nine_edge_graph_with_k43minus_not_isomorphic_to_seed():
    h = seed_H()
    # nine edges, first four triples of a 4-set included: contains K4(3)-minus
    g = Hypergraph3.from_edges(
        6,
        [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3), (0, 1, 4), (0, 1, 5),
         (2, 4, 5), (3, 4, 5), (0, 4, 5)],
    )
    assert g.edge_count == 9 == h.edge_count
    assert not are_isomorphic(g, h)


def test_class_counts_match_burnside_oracle():
    # dedup all 2^C(n,3) graphs through canonical_form; compare to Burnside
    for n in range(1, 6):
        forms = {canonical_form(Hypergraph3(n, bits)).edges
                 for bits in range(1 << comb(n, 3))}
        assert len(forms) == burnside_class_count(n)


def test_highly_symmetric_graphs_are_fast_and_stable():
    for n in (10, 12):
        empty = Hypergraph3.empty(n)
        full = Hypergraph3.complete(n)
        assert canonical_form(empty).edges == 0
        assert canonical_form(full).edges == (1 << comb(n, 3)) - 1
        assert is_canonical_labeling(empty)
        assert is_canonical_labeling(full)


def test_guardrail_above_n12():
    with pytest.raises(CapabilityError):
        canonical_form(Hypergraph3.empty(13))


def test_isomorphic_respects_vertex_count_and_size():
    assert not are_isomorphic(Hypergraph3.empty(5), Hypergraph3.empty(6))
    g = Hypergraph3.from_edges(5, [(0, 1, 2)])
    assert not are_isomorphic(g, Hypergraph3.empty(5))


def test_complement_preserves_isomorphism():
    rng = random.Random(19)
    for _ in range(20):
        n = rng.randrange(4, 8)
        g = random_graph(n, rng)
        perm = list(range(n))
        rng.shuffle(perm)
        assert are_isomorphic(complement(g), complement(apply_permutation(g, perm)))


def test_canonical_labeling_test_agrees_with_canonical_form():
    rng = random.Random(23)
    for _ in range(200):
        n = rng.randrange(1, 8)
        g = random_graph(n, rng, density=rng.random())
        assert is_canonical_labeling(g) == (canonical_form(g).edges == g.edges)
