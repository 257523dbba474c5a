"""Arrow relation decisions, witness counting, and class enumeration.

(n,e) -> (m,f) holds when every n-vertex 3-graph with e edges has an m-set
inducing exactly f edges.  A single verified counterexample refutes it; only
exhaustive enumeration over isomorphism classes can confirm it.  The scan
over all e therefore tries a cheap seeded counterexample search first and
falls back to exhaustive enumeration, which keeps every verdict exact while
avoiding full enumeration where a witness graph settles the question.

Enumeration is orderly: a class representative is the labeled graph whose own
labeling is canonical (see canon), children extend a representative by one
edge strictly below its least significant edge in the canonical significance
order, and a child is kept iff it is again its own canonical representative.
Removing the least significant edge of a kept child reproduces its parent,
so every class is visited exactly once.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Callable, Iterable, Optional, Sequence

from .canon import is_canonical_labeling
from .core import (
    CapabilityError,
    Hypergraph3,
    complement,
    induced_edge_count,
    triple_rank,
)
from .constructions import F_set, construct_Hn_iterated, hn_it_edge_count
from .diophantine import solve_for_m
from .intervals import IntervalSet
from .subsets import subset_histogram

ENUMERATION_MAX_N = 7


@dataclass(frozen=True)
class OrderSizePair:
    m: int
    f: int

    def __post_init__(self):
        if self.m < 3:
            raise ValueError("order below 3 is not a 3-graph target")
        if not (0 <= self.f <= comb(self.m, 3)):
            raise ValueError(f"size {self.f} out of range for order {self.m}")

    @property
    def complement_pair(self) -> "OrderSizePair":
        return OrderSizePair(self.m, comb(self.m, 3) - self.f)


@dataclass(frozen=True)
class SizeHistogram:
    n: int
    m: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if sum(self.counts) != comb(self.n, self.m):
            raise ValueError("histogram does not cover all m-subsets")


def size_histogram(g: Hypergraph3, m: int, *, budget: int = 10**8) -> SizeHistogram:
    scan = subset_histogram(g, m, budget=budget)
    return SizeHistogram(g.n, m, scan.histogram)


def induced_pair_witness(g: Hypergraph3, pair: OrderSizePair) -> Optional[tuple[int, ...]]:
    """First m-set (lexicographic) inducing exactly f edges, or None."""
    if pair.m > g.n:
        raise ValueError(f"order {pair.m} exceeds vertex count {g.n}")
    for vs in combinations(range(g.n), pair.m):
        if induced_edge_count(g, vs) == pair.f:
            return vs
    return None


def _witness_count(g: Hypergraph3, pair: OrderSizePair) -> int:
    """Number of m-sets inducing exactly f; cheap closed forms for m in {n, n-1}."""
    if pair.m == g.n:
        return int(g.edge_count == pair.f)
    if pair.m == g.n - 1:
        e = g.edge_count
        return sum(1 for d in g.degrees() if e - d == pair.f)
    return subset_histogram(g, pair.m).histogram[pair.f]


def has_induced_pair(g: Hypergraph3, pair: OrderSizePair) -> bool:
    return _witness_count(g, pair) > 0


# ---------------------------------------------------------------------------
# orderly enumeration of isomorphism classes

def _sig_triples(n: int) -> list[tuple[int, int, int]]:
    """Triples in ascending canonical significance (ascending lex)."""
    return sorted(combinations(range(n), 3))


def enumerate_graphs(
    n: int,
    e: int,
    visitor: Callable[[Hypergraph3], None],
    *,
    budget: Optional[int] = None,
) -> int:
    """Invoke visitor once per isomorphism class of n-vertex 3-graphs with e edges.

    Returns the class count.  ``budget`` caps the number of augmentation
    candidates examined; exceeding it raises CapabilityError.
    """
    if n > ENUMERATION_MAX_N:
        raise CapabilityError(f"exact enumeration is limited to n <= {ENUMERATION_MAX_N}")
    if not (0 <= e <= comb(n, 3)):
        raise ValueError(f"edge count {e} out of range for n={n}")
    counter = {"classes": 0, "examined": 0}
    for g in _enumerate_level(n, e, counter, budget):
        counter["classes"] += 1
        visitor(g)
    return counter["classes"]


def _enumerate_level(n, e, counter, budget):
    sig = _sig_triples(n)
    bits_of = [1 << triple_rank(*t, n) for t in sig]

    def descend(bits, ecur, minsig):
        if ecur == e:
            yield Hypergraph3(n, bits)
            return
        lo = max(0, e - ecur - 1)
        for s in range(minsig - 1, lo - 1, -1):
            counter["examined"] += 1
            if budget is not None and counter["examined"] > budget:
                raise CapabilityError(f"enumeration budget of {budget} exhausted")
            child = bits | bits_of[s]
            if is_canonical_labeling(Hypergraph3(n, child)):
                yield from descend(child, ecur + 1, s)

    yield from descend(0, 0, len(sig))


def enumerate_all_levels(
    n: int,
    visitor: Callable[[int, Hypergraph3], None],
    *,
    budget: Optional[int] = None,
) -> int:
    """One orderly sweep visiting every class at every edge count."""
    if n > ENUMERATION_MAX_N:
        raise CapabilityError(f"exact enumeration is limited to n <= {ENUMERATION_MAX_N}")
    sig = _sig_triples(n)
    bits_of = [1 << triple_rank(*t, n) for t in sig]
    counter = {"classes": 0, "examined": 0}

    def descend(bits, ecur, minsig):
        counter["classes"] += 1
        visitor(ecur, Hypergraph3(n, bits))
        for s in range(minsig - 1, -1, -1):
            counter["examined"] += 1
            if budget is not None and counter["examined"] > budget:
                raise CapabilityError(f"enumeration budget of {budget} exhausted")
            child = bits | bits_of[s]
            if is_canonical_labeling(Hypergraph3(n, child)):
                descend(child, ecur + 1, s)

    descend(0, 0, len(sig))
    return counter["classes"]


# ---------------------------------------------------------------------------
# arrow verdicts

@dataclass(frozen=True)
class ArrowVerdict:
    status: str  # "forced" | "not_forced" | "unknown"
    graphs_examined: int = 0
    counterexample: Optional[Hypergraph3] = None
    budget_spent: int = 0

    @property
    def decided(self) -> bool:
        return self.status != "unknown"


def _verified_not_forced(
    g: Hypergraph3, n: int, e: int, pair: OrderSizePair, examined: int
) -> ArrowVerdict:
    """Re-verify a counterexample before returning it."""
    if g.n != n or g.edge_count != e:
        raise AssertionError("counterexample has wrong order or size")
    if _witness_count(g, pair) != 0:
        raise AssertionError("counterexample admits an induced pair witness")
    return ArrowVerdict("not_forced", graphs_examined=examined, counterexample=g)


def arrow_exhaustive(
    n: int, e: int, pair: OrderSizePair, budget: Optional[int] = None
) -> ArrowVerdict:
    """Decide the arrow by enumerating every class with e edges.

    Forced iff every class has a witness; otherwise the counterexample with
    the least canonical bitset is returned, making the verdict independent of
    visit order.
    """
    if pair.m > n:
        raise ValueError(f"order {pair.m} exceeds n={n}")
    counter = {"classes": 0, "examined": 0}
    worst: Optional[Hypergraph3] = None
    try:
        for g in _enumerate_level(n, e, counter, budget):
            counter["classes"] += 1
            if not has_induced_pair(g, pair):
                if worst is None or g.edges < worst.edges:
                    worst = g
    except CapabilityError:
        return ArrowVerdict("unknown", budget_spent=counter["examined"])
    if worst is not None:
        return _verified_not_forced(worst, n, e, pair, counter["classes"])
    return ArrowVerdict("forced", graphs_examined=counter["classes"])


def _initial_graphs(n: int, e: int, rng: random.Random, initial):
    if initial is not None:
        yield initial
    yield Hypergraph3(n, (1 << e) - 1)  # colex prefix
    yield Hypergraph3(n, ((1 << e) - 1) << (comb(n, 3) - e))  # colex suffix
    while True:
        ranks = rng.sample(range(comb(n, 3)), e)
        bits = 0
        for r in ranks:
            bits |= 1 << r
        yield Hypergraph3(n, bits)


def arrow_search(
    n: int,
    e: int,
    pair: OrderSizePair,
    budget: int = 20000,
    seed: int = 0,
    initial: Optional[Hypergraph3] = None,
) -> ArrowVerdict:
    """Heuristic counterexample finder: hill-climb on the number of m-sets
    inducing exactly f, over single edge swaps, with seeded restarts.

    Returns a re-verified NotForced or Unknown; it never claims Forced.
    """
    if pair.m > n:
        raise ValueError(f"order {pair.m} exceeds n={n}")
    if not (0 <= e <= comb(n, 3)):
        raise ValueError(f"edge count {e} out of range for n={n}")
    rng = random.Random(seed)
    spent = 0
    starts = _initial_graphs(n, e, rng, initial)
    restart_every = max(200, budget // 10)
    while spent < budget:
        g = next(starts)
        obj = _witness_count(g, pair)
        spent += 1
        stalls = 0
        while spent < budget and stalls < restart_every:
            if obj == 0:
                return _verified_not_forced(g, n, e, pair, spent)
            if g.edge_count in (0, comb(n, 3)):
                break  # no swaps available
            edges = list(g.edge_triples())
            non_edges = [t for t in combinations(range(n), 3) if not g.has_edge(*t)]
            out = rng.choice(edges)
            inc = rng.choice(non_edges)
            cand = g.remove_edges([out]).add_edges([inc])
            cand_obj = _witness_count(cand, pair)
            spent += 1
            if cand_obj <= obj:
                stalls = stalls + 1 if cand_obj == obj else 0
                g, obj = cand, cand_obj
            else:
                stalls += 1
        if obj == 0 and spent <= budget:
            return _verified_not_forced(g, n, e, pair, spent)
    return ArrowVerdict("unknown", budget_spent=spent)


@dataclass(frozen=True)
class ScanResult:
    n: int
    pair: OrderSizePair
    forced: tuple[int, ...]
    ratio: Fraction
    counterexamples: dict[int, Hypergraph3] = field(repr=False, default_factory=dict)
    decided_by: dict[int, str] = field(default_factory=dict)


def scan_forced_set(
    n: int,
    pair: OrderSizePair,
    *,
    seed: int = 0,
    search_budget: int = 4000,
    exhaustive_budget: Optional[int] = None,
) -> ScanResult:
    """Exact forced-e set at this n, plus the finite-n density proxy ratio.

    Each e is first attacked by the counterexample search (a verified
    counterexample is an exact NotForced certificate); only e values where
    the search comes up empty pay for exhaustive enumeration.
    """
    total = comb(n, 3)
    forced = []
    counterexamples: dict[int, Hypergraph3] = {}
    decided_by: dict[int, str] = {}
    for e in range(total + 1):
        v = arrow_search(n, e, pair, budget=search_budget, seed=seed * 7919 + e)
        if v.status == "not_forced":
            counterexamples[e] = v.counterexample
            decided_by[e] = "search"
            continue
        v = arrow_exhaustive(n, e, pair, budget=exhaustive_budget)
        decided_by[e] = "exhaustive"
        if v.status == "forced":
            forced.append(e)
        elif v.status == "not_forced":
            counterexamples[e] = v.counterexample
        else:
            raise CapabilityError(
                f"exhaustive fallback for e={e} exceeded its budget; scan is not exact"
            )
    return ScanResult(
        n, pair, tuple(forced), Fraction(len(forced), total),
        counterexamples, decided_by,
    )


# ---------------------------------------------------------------------------
# construction-backed avoidable range for the self-complementary six-ten pair

@dataclass(frozen=True)
class AvoidableRange:
    """Edge counts avoidable at this n, with witness recipes at both ends.

    Low interval: subgraphs of the iterated construction (six-set counts can
    only drop below its maximum of 9).  High interval: supergraphs of its
    complement (six-set counts stay at least 11).
    """

    n: int
    construction_edges: int
    intervals: IntervalSet

    def witness_graph(self, e: int) -> Hypergraph3:
        total = comb(self.n, 3)
        base = construct_Hn_iterated(self.n)
        if 0 <= e <= self.construction_edges:
            surplus = self.construction_edges - e
            drop = list(base.edge_triples())[-surplus:] if surplus else []
            return base.remove_edges(drop)
        if total - self.construction_edges <= e <= total:
            comp = complement(base)
            need = e - comp.edge_count
            add = list(base.edge_triples())[:need]
            return comp.add_edges(add)
        raise ValueError(f"e={e} is outside the avoidable intervals")


def avoidable_range_from_construction(n: int) -> AvoidableRange:
    edge_count = hn_it_edge_count(n)
    total = comb(n, 3)
    iv = IntervalSet.from_intervals([(0, edge_count), (total - edge_count, total)])
    return AvoidableRange(n, edge_count, iv)


# ---------------------------------------------------------------------------
# copy counting

def count_k43minus(g: Hypergraph3) -> int:
    """Copies of the 4-vertex 3-edge graph: pairs (4-set, choice of 3 of its
    induced edges); a 4-set with c edges hosts C(c,3) copies."""
    total = 0
    for vs in combinations(range(g.n), 4):
        c = induced_edge_count(g, vs)
        total += comb(c, 3)
    return total


def count_transversal_k43minus(
    g: Hypergraph3, parts: Sequence[Sequence[int]]
) -> int:
    """Copies whose 4-set takes exactly one vertex from each of four parts."""
    if len(parts) != 4:
        raise ValueError("transversal counting needs exactly four parts")
    seen: set[int] = set()
    for p in parts:
        for v in p:
            if v in seen:
                raise ValueError("parts must be disjoint")
            seen.add(v)
    total = 0
    for vs in product(*parts):
        c = induced_edge_count(g, vs)
        total += comb(c, 3)
    return total


# ---------------------------------------------------------------------------
# zero-density certificates and the necessary-condition filter

_S_ORDER = (frozenset(), frozenset({1}), frozenset({2}), frozenset({1, 2}))


@dataclass(frozen=True)
class ZeroDensityCertificate:
    pair: OrderSizePair
    S: frozenset[int]
    gap: tuple[int, int]

    def __post_init__(self):
        fs = F_set(self.S, self.pair.m)
        if self.pair.f in fs:
            raise ValueError("not a certificate: f is attainable for this S")
        lo, hi = self.gap
        if not (lo <= self.pair.f <= hi):
            raise ValueError("gap does not contain f")
        if fs & IntervalSet(((lo, hi),)):
            raise ValueError("gap intersects the attainable set")


def zero_density_certificate(pair: OrderSizePair) -> Optional[ZeroDensityCertificate]:
    """First S (in the order {}, {1}, {2}, {1,2}) whose attainable interval
    set misses f, together with the surrounding gap; None if every S attains f."""
    if not (0 < pair.f < comb(pair.m, 3)):
        raise ValueError("certificates are defined for 0 < f < C(m,3)")
    for S in _S_ORDER:
        fs = F_set(S, pair.m)
        if pair.f not in fs:
            gap = fs.gap_around(pair.f, 0, comb(pair.m, 3))
            return ZeroDensityCertificate(pair, S, gap)
    return None


def theorem2_filter(m: int) -> tuple[int, ...]:
    """Sizes f surviving the three-way tetrahedral necessary conditions."""
    if m < 4:
        raise ValueError("m must be at least 4")
    return tuple(sorted({sol.f for sol in solve_for_m(m)}))


def clique_turan_bounds(m: int, r: int) -> tuple[Fraction, Fraction]:
    """Exact rational (lower, upper) bounds on the complete-r-graph Turan density."""
    if not (m > r >= 2):
        raise ValueError(f"need m > r >= 2, got m={m}, r={r}")
    lower = 1 - Fraction(r - 1, m - 1) ** (r - 1)
    upper = 1 - Fraction(1, comb(m - 1, r - 1))
    return lower, upper
