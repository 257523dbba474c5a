"""Vectorized exhaustive scans over m-vertex subsets.

The scan walks size-(m-1) prefixes depth-first and evaluates all completions
of a prefix in one numpy slice.  Per prefix vertex v it maintains

  pair[w]   -- number of edges with exactly two endpoints in the prefix plus w,
  single[x,w] -- number of prefix vertices u with {u,x,w} an edge,

so extending a prefix is two vectorized adds and the induced count of a full
m-set is one lookup.  This turns the C(60,6) ~ 5e7 six-set certification into
roughly C(60,5) slice operations.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence

import numpy as np

from .core import CapabilityError, Hypergraph3

KERNEL_MAX_N = 128
DEFAULT_SUBSET_BUDGET = 10**8


def build_m3(g: Hypergraph3) -> np.ndarray:
    """Symmetric (n,n,n) edge indicator; zero on any repeated index."""
    if g.n > KERNEL_MAX_N:
        raise CapabilityError(f"subset kernel is limited to n <= {KERNEL_MAX_N}")
    m3 = np.zeros((g.n, g.n, g.n), dtype=np.int16)
    for a, b, c in g.edge_triples():
        for x, y, z in ((a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)):
            m3[x, y, z] = 1
    return m3


@dataclass(frozen=True)
class SubsetScanResult:
    m: int
    histogram: tuple[int, ...]          # counts[f] over all m-subsets scanned
    max_count: int                      # -1 when there are no m-subsets
    witness: Optional[tuple[int, ...]]  # an m-set attaining max_count


class _Scan:
    def __init__(self, m3: np.ndarray, n: int, m: int, prefix: Sequence[int]):
        self.m3 = m3
        self.n = n
        self.m = m
        self.prefix = tuple(sorted(prefix))
        if len(set(self.prefix)) != len(self.prefix):
            raise ValueError("prefix vertices must be distinct")
        if self.prefix and not (0 <= self.prefix[0] and self.prefix[-1] < n):
            raise ValueError("prefix vertex out of range")
        if m < len(self.prefix):
            raise ValueError("prefix larger than subset size")
        self.avail = np.array(
            [v for v in range(n) if v not in set(self.prefix)], dtype=np.intp
        )
        self.need = m - len(self.prefix)
        depth_cap = self.need + 1
        self.pair = [np.zeros(n, dtype=np.int16) for _ in range(depth_cap)]
        self.single = [np.zeros((n, n), dtype=np.int16) for _ in range(depth_cap)]
        self.e0 = 0
        # fold the forced prefix into depth-0 buffers
        pair, single, e = self.pair[0], self.single[0], 0
        for v in self.prefix:
            e += int(pair[v])
            pair += single[v]
            single += m3[v]
        self.e0 = e
        self.chosen: list[int] = []

    def _push(self, d: int, v: int, e: int) -> int:
        np.add(self.pair[d], self.single[d][v], out=self.pair[d + 1])
        np.add(self.single[d], self.m3[v], out=self.single[d + 1])
        self.chosen.append(v)
        return e + int(self.pair[d][v])

    def _pop(self) -> None:
        self.chosen.pop()


def subset_histogram(
    g: Hypergraph3, m: int, *, budget: int = DEFAULT_SUBSET_BUDGET,
    prefix: Sequence[int] = (),
) -> SubsetScanResult:
    """Distribution of induced edge counts over all m-subsets (extending prefix)."""
    if not (3 <= m <= g.n):
        raise ValueError(f"need 3 <= m <= n, got m={m}, n={g.n}")
    scan = _Scan(build_m3(g), g.n, m, prefix)
    total = comb(len(scan.avail), scan.need)
    if total > budget:
        raise CapabilityError(
            f"{total} subsets exceed the scan budget of {budget}"
        )
    hist = np.zeros(comb(m, 3) + 1, dtype=np.int64)
    best = {"count": -1, "witness": None}
    avail, need = scan.avail, scan.need

    if need == 0:
        hist[scan.e0] += 1
        return SubsetScanResult(m, tuple(int(x) for x in hist), scan.e0, scan.prefix)

    def rec(start: int, d: int, e: int) -> None:
        if d == need - 1:
            cands = avail[start:]
            if cands.size == 0:
                return
            counts = e + scan.pair[d][cands]
            hist[:] = hist + np.bincount(counts, minlength=hist.size)
            local = int(counts.max())
            if local > best["count"]:
                best["count"] = local
                pick = int(cands[int(np.argmax(counts))])
                best["witness"] = tuple(sorted(scan.prefix + tuple(scan.chosen) + (pick,)))
            return
        last = len(avail) - (need - d) + 1
        for idx in range(start, last):
            v = int(avail[idx])
            e2 = scan._push(d, v, e)
            rec(idx + 1, d + 1, e2)
            scan._pop()

    rec(0, 0, scan.e0)
    return SubsetScanResult(m, tuple(int(x) for x in hist), best["count"], best["witness"])


def find_violation(
    m3: np.ndarray, n: int, m: int, threshold: int, *, prefix: Sequence[int] = ()
) -> Optional[tuple[int, ...]]:
    """Some m-set (extending prefix) inducing more than threshold edges, else None.

    Induced counts are monotone under adding vertices, so any prefix already
    over the threshold certifies a violation and is completed arbitrarily.
    """
    scan = _Scan(m3, n, m, prefix)
    avail, need = scan.avail, scan.need

    def complete(extra: int) -> tuple[int, ...]:
        used = set(scan.prefix) | set(scan.chosen) | {extra}
        fill = [v for v in range(n) if v not in used]
        out = sorted(used | set(fill[: m - len(used)]))
        return tuple(out)

    if scan.e0 > threshold:
        used = sorted(set(scan.prefix))
        fill = [v for v in range(n) if v not in set(used)]
        return tuple(sorted(used + fill[: m - len(used)]))
    if need == 0:
        return None

    def rec(start: int, d: int, e: int) -> Optional[tuple[int, ...]]:
        if d == need - 1:
            cands = avail[start:]
            if cands.size == 0:
                return None
            counts = e + scan.pair[d][cands]
            over = np.nonzero(counts > threshold)[0]
            if over.size:
                pick = int(cands[int(over[0])])
                return tuple(sorted(scan.prefix + tuple(scan.chosen) + (pick,)))
            return None
        last = len(avail) - (need - d) + 1
        for idx in range(start, last):
            v = int(avail[idx])
            e2 = scan._push(d, v, e)
            if e2 > threshold:
                scan._pop()
                return complete(v)
            hit = rec(idx + 1, d + 1, e2)
            scan._pop()
            if hit is not None:
                return hit
        return None

    return rec(0, 0, scan.e0)
