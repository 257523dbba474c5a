"""Canonical labeling and isomorphism for small dense 3-graphs.

The canonical form is the labeling that maximizes a block key: positions are
assigned from the top (n-1 downward), and each assignment contributes a block
of bits recording which triples the new vertex closes with pairs of
already-placed vertices.  Maximizing the concatenated blocks is equivalent to
maximizing the edge bitset read in decreasing lexicographic triple order, so
equal canonical bitsets characterize isomorphism.

The search is branch-and-bound: prefixes whose block falls below the incumbent
are cut, interchangeable "twin" vertices (those swappable by an automorphism
touching nothing else) are collapsed, and automorphisms discovered at leaf
ties prune sibling branches that a known symmetry maps onto explored ones.
The same engine answers the cheaper question "is this labeling already
canonical?", which the enumeration module uses as its augmentation filter.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence

from .core import CapabilityError, Hypergraph3, apply_permutation

CANON_MAX_N = 12
_MAX_STORED_AUTS = 64


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical bitset plus the certificate permutation producing it."""

    n: int
    edges: int
    perm: tuple[int, ...]  # input label -> canonical label


def _twin_classes(n: int, masks: list[list[int]]) -> list[int]:
    """class id per vertex; u,v share a class iff swapping them is an automorphism."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u in range(n):
        for v in range(u + 1, n):
            keep = ~((1 << u) | (1 << v))
            if all((masks[u][x] ^ masks[v][x]) & keep == 0
                   for x in range(n) if x != u and x != v):
                parent[find(v)] = find(u)
    return [find(v) for v in range(n)]


class _LabelingSearch:
    """Shared engine for canonical_form (mode 'max') and canonicity tests."""

    def __init__(self, g: Hypergraph3):
        self.n = g.n
        self.masks = g.pair_link_masks()
        self.twin = _twin_classes(self.n, self.masks)
        self.degs = g.degrees()
        self.assigned: list[int] = []
        self.unassigned = set(range(self.n))
        self.pb = [0] * self.n
        self.pb_stack: list[list[int]] = []
        self.cur_blocks: list[int] = []
        self.best_blocks: Optional[list[int]] = None
        self.best_assigned: Optional[list[int]] = None
        self.auts: list[tuple[int, ...]] = []
        self.testing = False
        self.failed = False

    # -- assignment bookkeeping ------------------------------------------
    def _push(self, v: int, blk: int) -> None:
        i = len(self.assigned)
        self.unassigned.discard(v)
        saved = []
        if i >= 1:
            for u in self.unassigned:
                saved.append((u, self.pb[u]))
                bits = 0
                mv = self.masks[u][v]
                for x in self.assigned:
                    bits = (bits << 1) | ((mv >> x) & 1)
                self.pb[u] = (self.pb[u] << i) | bits
        self.pb_stack.append(saved)
        self.assigned.append(v)
        self.cur_blocks.append(blk)

    def _pop(self) -> None:
        v = self.assigned.pop()
        self.cur_blocks.pop()
        for u, old in self.pb_stack.pop():
            self.pb[u] = old
        self.unassigned.add(v)

    # -- automorphism pruning --------------------------------------------
    def _record_aut(self) -> None:
        gamma = [0] * self.n
        for j, v in enumerate(self.assigned):
            gamma[v] = self.best_assigned[j]
        t = tuple(gamma)
        if t != tuple(range(self.n)) and t not in self.auts and len(self.auts) < _MAX_STORED_AUTS:
            self.auts.append(t)

    def _aut_skips(self, v: int, tried: set[int]) -> bool:
        if not tried:
            return False
        prefix = self.assigned
        for gamma in self.auts:
            if gamma[v] in tried and all(gamma[a] == a for a in prefix):
                return True
        return False

    # -- search -----------------------------------------------------------
    def _rec(self, tied: bool) -> None:
        i = len(self.assigned)
        if i == self.n:
            if tied and self.best_assigned is not None:
                self._record_aut()
            else:
                if self.testing:
                    self.failed = True
                    return
                self.best_blocks = list(self.cur_blocks)
                self.best_assigned = list(self.assigned)
            return
        seen_class = set()
        cands = []
        for v in sorted(self.unassigned):
            c = self.twin[v]
            if c in seen_class:
                continue
            seen_class.add(c)
            cands.append((-self.pb[v], -self.degs[v], v))
        cands.sort()
        tried: set[int] = set()
        for negblk, _negdeg, v in cands:
            blk = -negblk
            if self._aut_skips(v, tried):
                tried.add(v)
                continue
            if tied:
                bb = self.best_blocks[i]
                if blk < bb:
                    break
                child_tied = blk == bb
                if not child_tied and self.testing:
                    self.failed = True
                    return
            else:
                child_tied = False
            self._push(v, blk)
            self._rec(child_tied)
            self._pop()
            if self.failed:
                return
            if not child_tied:
                tied = True  # a leaf below just (re)wrote best with our prefix
            tried.add(v)

    def run_max(self) -> tuple[list[int], list[int]]:
        self._rec(False)
        return self.best_blocks, self.best_assigned

    def identity_blocks(self) -> list[int]:
        """Block key of the labeling as given (vertex v at position v)."""
        blocks = []
        for v in range(self.n - 1, -1, -1):
            blocks.append(self.pb[v])
            self._push(v, self.pb[v])
        for _ in range(self.n):
            self._pop()
        return blocks

    def run_test(self) -> bool:
        """True iff no labeling beats the identity labeling's blocks."""
        self.testing = True
        self.best_blocks = self.identity_blocks()
        self.best_assigned = list(range(self.n - 1, -1, -1))
        self._rec(True)
        return not self.failed


def canonical_form(g: Hypergraph3) -> CanonicalForm:
    """Label-invariant canonical form; guardrail n <= 12."""
    if g.n > CANON_MAX_N:
        raise CapabilityError(f"exact canonicalizer is limited to n <= {CANON_MAX_N}")
    if g.n == 0:
        return CanonicalForm(0, 0, ())
    search = _LabelingSearch(g)
    _blocks, best_assigned = search.run_max()
    perm = [0] * g.n
    for j, v in enumerate(best_assigned):
        perm[v] = g.n - 1 - j
    canon = apply_permutation(g, perm)
    return CanonicalForm(g.n, canon.edges, tuple(perm))


def are_isomorphic(g: Hypergraph3, h: Hypergraph3) -> bool:
    if g.n != h.n:
        return False
    if g.edge_count != h.edge_count:
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g).edges == canonical_form(h).edges


def is_canonical_labeling(g: Hypergraph3) -> bool:
    """True iff g's own labeling attains the canonical block key.

    This is the augmentation filter of the enumeration engine; it shares the
    search with canonical_form but exits on the first strictly better
    labeling.
    """
    if g.n > CANON_MAX_N:
        raise CapabilityError(f"exact canonicalizer is limited to n <= {CANON_MAX_N}")
    if g.n == 0:
        return True
    search = _LabelingSearch(g)
    return search.run_test()
