"""Generators and exact counting for the graph families of the toolkit.

The central family is an iterated unbalanced six-part blow-up of a fixed
9-edge seed graph on six vertices.  Its part proportions are sqrt(3)/9 for
the three seed vertices of degree 5 and (3-sqrt(3))/9 for the three of
degree 4, which maximizes the transversal edge mass and drives the edge
density to 4/(3+7*sqrt(3)) ~ 0.26447.  All size arithmetic is exact integer
(isqrt-based), never floating point.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import comb, isqrt
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np

from .core import CapabilityError, Hypergraph3, triple_rank
from .intervals import IntervalSet
from .subsets import build_m3, find_violation, subset_histogram

MATERIALIZE_MAX_N = 512


class InsufficientSparseEdges(RuntimeError):
    """The sparse pool on the base set is too small to bridge the edge gap."""


# ---------------------------------------------------------------------------
# seed graph

SEED_EDGES_1BASED = ((1, 2, 3), (1, 2, 4), (3, 4, 5), (3, 4, 6), (5, 6, 1),
                     (5, 6, 2), (1, 3, 5), (1, 4, 6), (2, 3, 6))


def seed_H() -> Hypergraph3:
    """The 6-vertex, 9-edge seed graph (labels shifted to 0-based)."""
    return Hypergraph3.from_edges(6, [tuple(v - 1 for v in e) for e in SEED_EDGES_1BASED])


# ---------------------------------------------------------------------------
# blow-ups

def _check_materializable(n: int) -> None:
    if n > MATERIALIZE_MAX_N:
        raise CapabilityError(
            f"materializing {n} vertices exceeds the {MATERIALIZE_MAX_N}-vertex guardrail;"
            " use the counting formulas instead"
        )


def blowup(h: Hypergraph3, t: int) -> Hypergraph3:
    """Exact t-blow-up: vertex i becomes an independent t-set; edges lift."""
    if t < 1:
        raise ValueError("blow-up factor must be positive")
    n = h.n * t
    _check_materializable(n)
    bits = 0
    for i, j, k in h.edge_triples():
        for x in range(i * t, (i + 1) * t):
            for y in range(j * t, (j + 1) * t):
                for z in range(k * t, (k + 1) * t):
                    bits |= 1 << triple_rank(x, y, z, n)
    return Hypergraph3(n, bits)


IntraPattern = Union[None, str, Iterable[Sequence[int]],
                     Callable[[tuple[int, int, int], tuple[int, ...]], bool]]


def weak_blowup_fixture(h: Hypergraph3, t: int, intra_pattern: IntraPattern = None) -> Hypergraph3:
    """Weak blow-up: transversal triples follow h; 2-in-one-part triples follow
    the pattern; parts stay independent.

    ``intra_pattern`` may be None/"none" (no extra edges), "all" (every
    admissible 2-in-one-part triple), an explicit collection of triples, or a
    predicate called as pattern(triple, part_of).
    """
    base = blowup(h, t)
    n = base.n
    part_of = tuple(v // t for v in range(n))
    candidates = []
    for a, b, c in combinations(range(n), 3):
        parts = {part_of[a], part_of[b], part_of[c]}
        if len(parts) == 2:
            candidates.append((a, b, c))
    if intra_pattern is None or intra_pattern == "none":
        selected = []
    elif intra_pattern == "all":
        selected = candidates
    elif callable(intra_pattern):
        selected = [tr for tr in candidates if intra_pattern(tr, part_of)]
    else:
        admissible = set(candidates)
        selected = []
        for tr in intra_pattern:
            tr = tuple(sorted(tr))
            if tr not in admissible:
                raise ValueError(
                    f"pattern triple {tr} is not an admissible 2-in-one-part triple"
                    " (it would break part independence or is transversal)"
                )
            selected.append(tr)
    return base.add_edges(selected)


# ---------------------------------------------------------------------------
# part sizes and the iterated construction

# seed vertices of degree 5 (0-based) receive the ceil(n*sqrt(3)/9) parts
_BIG_PARTS = (0, 2, 5)
_SMALL_PARTS = (1, 3, 4)


@dataclass(frozen=True)
class PartSizes:
    """Sizes (|A_1|,...,|A_6|) of the six blow-up parts, summing to n."""

    sizes: tuple[int, int, int, int, int, int]

    @property
    def n(self) -> int:
        return sum(self.sizes)

    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for s in self.sizes:
            out.append(acc)
            acc += s
        return tuple(out)


def _floor_sqrt3(n: int) -> int:
    """floor(n * sqrt(3)), exactly."""
    return isqrt(3 * n * n)


def part_sizes_Hn(n: int) -> PartSizes:
    """Exact part sizes; rejects n where the remainder part would be negative."""
    if n < 6:
        raise ValueError(f"need at least 6 vertices, got {n}")
    s = _floor_sqrt3(n)
    big = s // 9 + 1                 # ceil(n*sqrt(3)/9), irrational for n >= 1
    small = (3 * n - s - 1) // 9 + 1  # ceil(n*(3-sqrt(3))/9)
    rest = n - 2 * big - 3 * small
    if rest < 0:
        raise ValueError(
            f"n={n}: ceiled part sizes overshoot the vertex count by {-rest};"
            " the construction is defined only where the remainder part is nonnegative"
        )
    sizes = [0] * 6
    sizes[_BIG_PARTS[0]] = big
    sizes[_BIG_PARTS[1]] = big
    sizes[_BIG_PARTS[2]] = rest
    for p in _SMALL_PARTS:
        sizes[p] = small
    return PartSizes(tuple(sizes))


def hn_accepts(n: int) -> bool:
    try:
        part_sizes_Hn(n)
    except ValueError:
        return False
    return True


def _seed_edge_parts() -> list[tuple[int, int, int]]:
    return [tuple(v - 1 for v in e) for e in SEED_EDGES_1BASED]


def hn_edge_count(n: int) -> int:
    sizes = part_sizes_Hn(n).sizes
    return sum(sizes[i] * sizes[j] * sizes[k] for i, j, k in _seed_edge_parts())


def _hn_it_recurse_parts(sizes: Sequence[int], cutoff: int) -> list[int]:
    return [s for s in sizes if s >= cutoff and hn_accepts(s)]


def hn_it_edge_count(n: int, cutoff: int = 6) -> int:
    """Edge count of the iterated construction, by recursion (no materialization)."""
    if cutoff < 6:
        raise ValueError("cutoff below 6 cannot host all six sub-parts")
    memo: dict[int, int] = {}

    def count(s: int) -> int:
        if s in memo:
            return memo[s]
        total = hn_edge_count(s)
        for p in _hn_it_recurse_parts(part_sizes_Hn(s).sizes, cutoff):
            total += count(p)
        memo[s] = total
        return total

    return count(n)


def hn_it_density(n: int, cutoff: int = 6) -> float:
    return hn_it_edge_count(n, cutoff) / comb(n, 3)


def construct_Hn(n: int) -> Hypergraph3:
    """One level of the six-part blow-up, materialized."""
    _check_materializable(n)
    sizes = part_sizes_Hn(n)
    bits = _hn_level_bits(sizes, 0, n)
    return Hypergraph3(n, bits)


def _hn_level_bits(sizes: PartSizes, offset: int, host_n: int) -> int:
    offs = sizes.offsets()
    bits = 0
    for i, j, k in _seed_edge_parts():
        for x in range(offset + offs[i], offset + offs[i] + sizes.sizes[i]):
            for y in range(offset + offs[j], offset + offs[j] + sizes.sizes[j]):
                for z in range(offset + offs[k], offset + offs[k] + sizes.sizes[k]):
                    a, b, c = sorted((x, y, z))
                    bits |= 1 << triple_rank(a, b, c, host_n)
    return bits


def construct_Hn_iterated(n: int, cutoff: int = 6) -> Hypergraph3:
    """Iterated construction: recurse into every part the size formulas accept.

    Parts whose size the formulas reject stay independent; at desk scale the
    forgone edges are a vanishing fraction of the total.
    """
    if cutoff < 6:
        raise ValueError("cutoff below 6 cannot host all six sub-parts")
    _check_materializable(n)

    def place(s: int, offset: int) -> int:
        sizes = part_sizes_Hn(s)
        bits = _hn_level_bits(sizes, offset, n)
        offs = sizes.offsets()
        for idx, p in enumerate(sizes.sizes):
            if p >= cutoff and hn_accepts(p):
                bits |= place(p, offset + offs[idx])
        return bits

    return Hypergraph3(n, place(n, 0))


# ---------------------------------------------------------------------------
# the clique-plus-star family G(S,n,k)

@dataclass(frozen=True)
class CanonicalParams:
    """Parameters (S, n, k): clique part size k, base set size n-k."""

    S: frozenset[int]
    n: int
    k: int

    def __post_init__(self):
        object.__setattr__(self, "S", frozenset(self.S))
        if not self.S <= {1, 2}:
            raise ValueError(f"S must be a subset of {{1,2}}, got {set(self.S)}")
        if not (0 <= self.k <= self.n):
            raise ValueError(f"need 0 <= k <= n, got k={self.k}, n={self.n}")

    @property
    def complement_params(self) -> "CanonicalParams":
        """Parameters of the complement graph.

        Complementing swaps the clique and base parts, so a surviving mixed
        triple with i clique vertices reappears with 3-i clique vertices:
        the new arity set is {1,2} minus the reflection {3-i : i in S}.
        (For S empty or {1,2} this coincides with plain set complement.)
        """
        reflected = frozenset(3 - i for i in self.S)
        return CanonicalParams(frozenset({1, 2}) - reflected, self.n, self.n - self.k)


def f_formula(params: CanonicalParams) -> int:
    """Exact edge count of G(S,n,k): C(k,3) + sum over i in S of C(k,i)C(n-k,3-i)."""
    k, n = params.k, params.n
    return comb(k, 3) + sum(comb(k, i) * comb(n - k, 3 - i) for i in params.S)


def g_construction(params: CanonicalParams) -> Hypergraph3:
    """Materialize G(S,n,k): clique on {0..k-1}, base on {k..n-1}, plus the
    mixed triples with exactly i clique vertices for each i in S."""
    n, k, S = params.n, params.k, params.S
    _check_materializable(n)
    bits = 0
    for a, b, c in combinations(range(n), 3):
        inA = (a < k) + (b < k) + (c < k)
        if inA == 3 or inA in S:
            bits |= 1 << triple_rank(a, b, c, n)
    return Hypergraph3(n, bits)


def F_set(S: Iterable[int], m: int) -> IntervalSet:
    """Achievable m-set edge counts common to the plus and minus families:
    union over x<m of [f(S,m,x), f+m] intersected with union over x>=1 of
    [f(S,m,x)-m, f], clamped to [0, C(m,3)]."""
    if m < 1:
        raise ValueError("m must be positive")
    S = frozenset(S)
    f = [f_formula(CanonicalParams(S, m, x)) for x in range(m + 1)]
    plus = IntervalSet.from_intervals((f[x], f[x] + m) for x in range(m))
    minus = IntervalSet.from_intervals((f[x] - m, f[x]) for x in range(1, m + 1))
    return (plus & minus).clamp(0, comb(m, 3))


# ---------------------------------------------------------------------------
# m-sparse graphs

SPARSE_SCAN_BUDGET = 5 * 10**7


@dataclass(frozen=True)
class SparseCertificate:
    """Result of an exhaustive m-set scan: the worst subset and its count."""

    m: int
    worst_count: int
    worst_set: Optional[tuple[int, ...]]

    @property
    def valid(self) -> bool:
        return self.worst_count <= self.m


def is_m_sparse(g: Hypergraph3, m: int) -> SparseCertificate:
    """Exhaustively scan all m-sets; certificate is valid iff every count <= m."""
    if m < 3:
        raise ValueError("sparsity order below 3 is vacuous for 3-graphs")
    if g.n < m:
        return SparseCertificate(m, 0, None)  # no m-sets at all
    if comb(g.n, m) > SPARSE_SCAN_BUDGET:
        raise CapabilityError(
            f"C({g.n},{m}) m-sets exceed the sparsity scan budget"
        )
    scan = subset_histogram(g, m, budget=SPARSE_SCAN_BUDGET)
    return SparseCertificate(m, scan.max_count, scan.witness)


def _subset_rank_table(n: int, m: int) -> np.ndarray:
    table = np.zeros((n, m), dtype=np.int64)
    for v in range(n):
        for i in range(m):
            table[v, i] = comb(v, i + 1)
    return table


def m_sparse_random(n: int, m: int, seed: int) -> tuple[Hypergraph3, SparseCertificate]:
    """Randomized greedy m-sparse graph, certified by an exhaustive final scan.

    Candidate triples are visited in a seeded shuffle; a triple is kept iff no
    m-set containing it would exceed m edges.  Per-m-set edge counts are kept
    in a colex-ranked array so each candidate costs one vectorized pass over
    the C(n-3, m-3) supersets of its triple.
    """
    if not (n >= m >= 4):
        raise ValueError(f"need n >= m >= 4, got n={n}, m={m}")
    if comb(n, m) > SPARSE_SCAN_BUDGET:
        raise CapabilityError(
            f"C({n},{m}) m-sets exceed the certification budget"
        )
    rng = random.Random(seed)
    triples = list(combinations(range(n), 3))
    rng.shuffle(triples)

    counts = np.zeros(comb(n, m), dtype=np.uint8)
    rank_table = _subset_rank_table(n, m)
    patterns = np.array(list(combinations(range(n - 3), m - 3)), dtype=np.intp)
    positions = np.arange(m)[None, :]

    bits = 0
    edge_list = []
    for a, b, c in triples:
        others = np.array([v for v in range(n) if v not in (a, b, c)], dtype=np.int64)
        sets = others[patterns]
        full = np.concatenate(
            [sets, np.broadcast_to(np.array([a, b, c], dtype=np.int64), (sets.shape[0], 3))],
            axis=1,
        )
        full.sort(axis=1)
        ranks = rank_table[full, positions].sum(axis=1)
        slice_counts = counts[ranks]
        if slice_counts.max(initial=0) >= m:
            continue
        counts[ranks] = slice_counts + 1
        bits |= 1 << triple_rank(a, b, c, n)
        edge_list.append((a, b, c))

    g = Hypergraph3(n, bits)
    cert = is_m_sparse(g, m)
    if not cert.valid:
        raise AssertionError("greedy insertion produced an invalid sparse graph")
    return g, cert


# ---------------------------------------------------------------------------
# canonical plus / minus graphs and edge-count realization

def _shift_edges(g: Hypergraph3, offset: int) -> list[tuple[int, int, int]]:
    return [(a + offset, b + offset, c + offset) for a, b, c in g.edge_triples()]


def canonical_plus(
    params: CanonicalParams, m: int, seed: int,
    sparse_edges: Optional[int] = None,
) -> Hypergraph3:
    """G(S,n,k) plus a certified m-sparse graph on the base set.

    ``sparse_edges`` keeps only that many sparse edges (ascending rank);
    0 reproduces G(S,n,k) exactly.
    """
    nb = params.n - params.k
    if sparse_edges == 0:
        return g_construction(params)
    if nb < m:
        raise ValueError(
            f"base set of size {nb} is too small for the {m}-sparse generator"
        )
    sparse, _cert = m_sparse_random(nb, m, seed)
    edges = _shift_edges(sparse, params.k)
    if sparse_edges is not None:
        if sparse_edges > len(edges):
            raise InsufficientSparseEdges(
                f"sparse pool has {len(edges)} edges, requested {sparse_edges}"
            )
        edges = edges[:sparse_edges]
    return g_construction(params).add_edges(edges)


def canonical_minus(
    params: CanonicalParams, m: int, seed: int,
    sparse_edges: Optional[int] = None,
) -> Hypergraph3:
    """Complement of the canonical plus graph with complemented parameters;
    equivalently G(S,n,k) with edges of an m-sparse graph removed from the
    clique, so induced m-set counts land in [f(S,m,x) - m, f(S,m,x)]."""
    from .core import complement

    return complement(canonical_plus(params.complement_params, m, seed, sparse_edges))


def realize_edge_count(
    S: Iterable[int], n: int, e: int, m: int, seed: int
) -> Hypergraph3:
    """A canonical plus graph with exactly e edges.

    Chooses the smallest k with f(S,n,k) <= e <= f(S,n,k+1) (upward scan) and
    bridges the gap with edges of a certified m-sparse graph on the base set,
    taken in ascending triple rank for determinism.
    """
    S = frozenset(S)
    if not (0 <= e <= comb(n, 3)):
        raise ValueError(f"edge count {e} out of range for n={n}")
    f = [f_formula(CanonicalParams(S, n, x)) for x in range(n + 1)]
    for x in range(n + 1):
        if f[x] == e:  # exact formula hit needs no sparse bridge
            return g_construction(CanonicalParams(S, n, x))
    shortfall = None
    for k in range(n):
        if not (f[k] <= e <= f[k + 1]):
            continue
        gap = e - f[k]
        nb = n - k
        if nb >= max(m, 4):
            sparse, _cert = m_sparse_random(nb, m, seed)
        else:
            # fewer than m base vertices: any graph on them is vacuously m-sparse
            sparse = Hypergraph3.complete(nb)
        pool = _shift_edges(sparse, k)
        if gap > len(pool):
            # this bracket's pool is too small at desk scale; try the next one
            shortfall = (gap, nb, len(pool))
            continue
        return g_construction(CanonicalParams(S, n, k)).add_edges(pool[:gap])
    gap, nb, have = shortfall
    raise InsufficientSparseEdges(
        f"need {gap} sparse edges on a base set of {nb} vertices,"
        f" but the certified pool has only {have}"
    )
