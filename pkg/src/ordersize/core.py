"""Dense 3-uniform hypergraph substrate.

A graph on n vertices is stored as a single Python integer used as a bitset
over the C(n,3) vertex triples, indexed in colexicographic order.  Colex
ranks do not depend on n, so the bitset of an induced prefix is literally a
low slice of the host bitset.  All values are immutable; every operation
returns a new graph.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, Sequence


class CapabilityError(RuntimeError):
    """An operation was asked to exceed its desk-scale guardrail."""


def triple_rank(a: int, b: int, c: int, n: int) -> int:
    """Colex rank of the triple a < b < c among all 3-subsets of range(n)."""
    if not (0 <= a < b < c < n):
        raise ValueError(f"need 0 <= a < b < c < n, got ({a},{b},{c}) with n={n}")
    return comb(c, 3) + comb(b, 2) + a


def triple_unrank(t: int, n: int) -> tuple[int, int, int]:
    """Inverse of triple_rank: the t-th triple of range(n) in colex order."""
    if not (0 <= t < comb(n, 3)):
        raise ValueError(f"rank {t} out of range for n={n}")
    c = 2
    while comb(c + 1, 3) <= t:
        c += 1
    r = t - comb(c, 3)
    b = 1
    while comb(b + 1, 2) <= r:
        b += 1
    a = r - comb(b, 2)
    return (a, b, c)


def _rank_unchecked(a: int, b: int, c: int) -> int:
    return comb(c, 3) + comb(b, 2) + a


@dataclass(frozen=True)
class Hypergraph3:
    """An n-vertex 3-graph; ``edges`` is the colex bitset of its triples."""

    n: int
    edges: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        if self.edges < 0 or self.edges >> comb(self.n, 3):
            raise ValueError("edge bitset has bits outside the valid triple range")

    @classmethod
    def from_edges(cls, n: int, triples: Iterable[Sequence[int]]) -> "Hypergraph3":
        bits = 0
        for t in triples:
            a, b, c = sorted(t)
            r = triple_rank(a, b, c, n)
            if (bits >> r) & 1:
                raise ValueError(f"duplicate edge {tuple(sorted(t))}")
            bits |= 1 << r
        return cls(n, bits)

    @classmethod
    def empty(cls, n: int) -> "Hypergraph3":
        return cls(n, 0)

    @classmethod
    def complete(cls, n: int) -> "Hypergraph3":
        return cls(n, (1 << comb(n, 3)) - 1)

    @property
    def edge_count(self) -> int:
        return self.edges.bit_count()

    def has_edge(self, a: int, b: int, c: int) -> bool:
        a, b, c = sorted((a, b, c))
        return bool((self.edges >> triple_rank(a, b, c, self.n)) & 1)

    def edge_triples(self) -> Iterator[tuple[int, int, int]]:
        """Yield edges as sorted triples in colex (ascending rank) order."""
        bits = self.edges
        while bits:
            low = bits & -bits
            yield triple_unrank(low.bit_length() - 1, self.n)
            bits ^= low

    def degree(self, v: int) -> int:
        if not (0 <= v < self.n):
            raise ValueError(f"vertex {v} out of range for n={self.n}")
        return sum(1 for t in self.edge_triples() if v in t)

    def degrees(self) -> list[int]:
        degs = [0] * self.n
        for a, b, c in self.edge_triples():
            degs[a] += 1
            degs[b] += 1
            degs[c] += 1
        return degs

    def add_edges(self, triples: Iterable[Sequence[int]]) -> "Hypergraph3":
        bits = self.edges
        for t in triples:
            a, b, c = sorted(t)
            bits |= 1 << triple_rank(a, b, c, self.n)
        return Hypergraph3(self.n, bits)

    def remove_edges(self, triples: Iterable[Sequence[int]]) -> "Hypergraph3":
        bits = self.edges
        for t in triples:
            a, b, c = sorted(t)
            bits &= ~(1 << triple_rank(a, b, c, self.n))
        return Hypergraph3(self.n, bits)

    def pair_link_masks(self) -> list[list[int]]:
        """masks[u][v] = bitset over w of the edges {u,v,w}; symmetric in u,v."""
        masks = [[0] * self.n for _ in range(self.n)]
        for a, b, c in self.edge_triples():
            masks[a][b] |= 1 << c
            masks[b][a] |= 1 << c
            masks[a][c] |= 1 << b
            masks[c][a] |= 1 << b
            masks[b][c] |= 1 << a
            masks[c][b] |= 1 << a
        return masks


@dataclass(frozen=True)
class LinkGraph:
    """The 2-graph of pairs completing a fixed vertex to an edge.

    Vertices are the host's other n-1 vertices, relabeled by increasing
    original label.
    """

    n: int
    edges: frozenset[tuple[int, int]]

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def max_degree(self) -> int:
        return max((self.degree(v) for v in range(self.n)), default=0)


def complement(g: Hypergraph3) -> Hypergraph3:
    mask = (1 << comb(g.n, 3)) - 1
    return Hypergraph3(g.n, g.edges ^ mask)


def induced_subgraph(g: Hypergraph3, vertices: Iterable[int]) -> Hypergraph3:
    """Subgraph on the given vertex set, relabeled by increasing original label."""
    vs = sorted(set(vertices))
    if vs and not (0 <= vs[0] and vs[-1] < g.n):
        raise ValueError(f"vertex set {vs} not within range(0, {g.n})")
    k = len(vs)
    bits = 0
    src = g.edges
    for i in range(k):
        for j in range(i + 1, k):
            base = comb(j, 2) + i
            for l in range(j + 1, k):
                if (src >> _rank_unchecked(vs[i], vs[j], vs[l])) & 1:
                    bits |= 1 << (comb(l, 3) + base)
    return Hypergraph3(k, bits)


def induced_edge_count(g: Hypergraph3, vertices: Iterable[int]) -> int:
    vs = sorted(set(vertices))
    if vs and not (0 <= vs[0] and vs[-1] < g.n):
        raise ValueError(f"vertex set {vs} not within range(0, {g.n})")
    src = g.edges
    count = 0
    k = len(vs)
    for i in range(k):
        for j in range(i + 1, k):
            for l in range(j + 1, k):
                count += (src >> _rank_unchecked(vs[i], vs[j], vs[l])) & 1
    return count


def is_independent(g: Hypergraph3, vertices: Iterable[int]) -> bool:
    return induced_edge_count(g, vertices) == 0


def is_clique(g: Hypergraph3, vertices: Iterable[int]) -> bool:
    vs = set(vertices)
    return induced_edge_count(g, vs) == comb(len(vs), 3)


def link_graph(g: Hypergraph3, v: int) -> LinkGraph:
    """Link of v: pair {y,z} is an edge iff {v,y,z} is an edge of g."""
    if not (0 <= v < g.n):
        raise ValueError(f"vertex {v} out of range for n={g.n}")
    relabel = {u: (u if u < v else u - 1) for u in range(g.n) if u != v}
    pairs = set()
    for t in g.edge_triples():
        if v in t:
            y, z = (u for u in t if u != v)
            pairs.add((relabel[y], relabel[z]))
    return LinkGraph(g.n - 1, frozenset(pairs))


def apply_permutation(g: Hypergraph3, perm: Sequence[int]) -> Hypergraph3:
    """Relabel: vertex v becomes perm[v]."""
    if sorted(perm) != list(range(g.n)):
        raise ValueError("perm is not a permutation of range(n)")
    bits = 0
    for a, b, c in g.edge_triples():
        x, y, z = sorted((perm[a], perm[b], perm[c]))
        bits |= 1 << _rank_unchecked(x, y, z)
    return Hypergraph3(g.n, bits)


# ---------------------------------------------------------------------------
# Text interchange format: first line "n <int>", then one "a b c" edge per
# line with 0 <= a < b < c < n; '#' starts a comment; duplicates are errors.

def write_graph_text(g: Hypergraph3) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{a} {b} {c}" for a, b, c in g.edge_triples())
    return "\n".join(lines) + "\n"


def read_graph_text(text: str) -> Hypergraph3:
    n = None
    bits = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "n":
                raise ValueError(f"line {lineno}: expected header 'n <int>'")
            n = int(parts[1])
            if n < 0:
                raise ValueError(f"line {lineno}: negative vertex count")
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'a b c'")
        a, b, c = (int(p) for p in parts)
        if not (0 <= a < b < c < n):
            raise ValueError(f"line {lineno}: edge ({a},{b},{c}) violates 0 <= a < b < c < n")
        r = triple_rank(a, b, c, n)
        if (bits >> r) & 1:
            raise ValueError(f"line {lineno}: duplicate edge ({a},{b},{c})")
        bits |= 1 << r
    if n is None:
        raise ValueError("missing header line 'n <int>'")
    return Hypergraph3(n, bits)
