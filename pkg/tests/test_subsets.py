"""Subset-scan kernel against the itertools brute-force oracle."""
import random
from itertools import combinations
from math import comb

import pytest

from ordersize.core import CapabilityError, Hypergraph3, induced_edge_count
from ordersize.subsets import build_m3, find_violation, subset_histogram


def random_graph(n, rng, density=0.5):
    bits = 0
    for t in range(comb(n, 3)):
        if rng.random() < density:
            bits |= 1 << t
    return Hypergraph3(n, bits)


def oracle_histogram(g, m, prefix=()):
    hist = [0] * (comb(m, 3) + 1)
    rest = [v for v in range(g.n) if v not in prefix]
    for vs in combinations(rest, m - len(prefix)):
        hist[induced_edge_count(g, prefix + vs)] += 1
    return hist


def test_histogram_matches_oracle_random_cases():
    rng = random.Random(99)
    for _ in range(15):
        n = rng.randrange(6, 13)
        m = rng.randrange(4, min(n, 8) + 1)
        g = random_graph(n, rng, density=rng.random())
        scan = subset_histogram(g, m)
        assert list(scan.histogram) == oracle_histogram(g, m)
        assert sum(scan.histogram) == comb(n, m)
        if scan.max_count >= 0:
            assert induced_edge_count(g, scan.witness) == scan.max_count


def test_histogram_with_forced_prefix():
    rng = random.Random(7)
    g = random_graph(11, rng)
    scan = subset_histogram(g, 6, prefix=(1, 4, 7))
    assert list(scan.histogram) == oracle_histogram(g, 6, prefix=(1, 4, 7))


def test_prefix_equal_to_subset_size():
    g = Hypergraph3.complete(6)
    scan = subset_histogram(g, 6, prefix=tuple(range(6)))
    assert scan.max_count == 20 and sum(scan.histogram) == 1


def test_violation_search_agrees_with_worst_count():
    rng = random.Random(5)
    for _ in range(10):
        n = rng.randrange(7, 12)
        m = rng.randrange(4, 8)
        g = random_graph(n, rng, density=rng.random())
        worst = subset_histogram(g, m).max_count
        m3 = build_m3(g)
        assert find_violation(m3, n, m, worst) is None
        if worst > 0:
            hit = find_violation(m3, n, m, worst - 1)
            assert hit is not None
            assert induced_edge_count(g, hit) > worst - 1
            assert len(hit) == m


def test_violation_with_prefix():
    g = Hypergraph3.complete(8)
    m3 = build_m3(g)
    hit = find_violation(m3, 8, 5, 5, prefix=(0, 1, 2))
    assert hit is not None and set((0, 1, 2)) <= set(hit)


def test_budget_guard():
    g = Hypergraph3.empty(40)
    with pytest.raises(CapabilityError):
        subset_histogram(g, 12, budget=1000)


def test_bad_arguments():
    g = Hypergraph3.empty(8)
    with pytest.raises(ValueError):
        subset_histogram(g, 9)
    with pytest.raises(ValueError):
        subset_histogram(g, 6, prefix=(1, 1))
    with pytest.raises(ValueError):
        subset_histogram(g, 6, prefix=(99,))
