"""Normalized unions of closed integer intervals.

Adjacent and overlapping intervals are merged, so every set of integers has
exactly one representation and equality of interval sets is structural
equality.  Membership is a bisect over the sorted endpoints.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional


def _normalize(pairs: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    items = sorted((lo, hi) for lo, hi in pairs if lo <= hi)
    merged: list[list[int]] = []
    for lo, hi in items:
        if merged and lo <= merged[-1][1] + 1:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return tuple((lo, hi) for lo, hi in merged)


@dataclass(frozen=True)
class IntervalSet:
    intervals: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_intervals(cls, pairs: Iterable[tuple[int, int]]) -> "IntervalSet":
        return cls(_normalize(pairs))

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls(())

    def __contains__(self, value: int) -> bool:
        idx = bisect_right(self.intervals, (value, float("inf"))) - 1
        return idx >= 0 and self.intervals[idx][1] >= value

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def __or__(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet.from_intervals(self.intervals + other.intervals)

    def __and__(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        a, b = list(self.intervals), list(other.intervals)
        i = j = 0
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo <= hi:
                out.append((lo, hi))
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        return IntervalSet(tuple(out))

    def clamp(self, lo: int, hi: int) -> "IntervalSet":
        return self & IntervalSet(((lo, hi),))

    def size(self) -> int:
        return sum(hi - lo + 1 for lo, hi in self.intervals)

    def members(self, limit: Optional[int] = None) -> Iterator[int]:
        emitted = 0
        for lo, hi in self.intervals:
            for v in range(lo, hi + 1):
                if limit is not None and emitted >= limit:
                    raise ValueError(f"interval set has more than {limit} members")
                yield v
                emitted += 1

    def gap_around(self, value: int, lo: int, hi: int) -> tuple[int, int]:
        """Largest interval within [lo, hi] that contains value and avoids this set."""
        if value in self:
            raise ValueError(f"{value} is a member; it sits in no gap")
        left, right = lo, hi
        for a, b in self.intervals:
            if b < value:
                left = max(left, b + 1)
            elif a > value:
                right = min(right, a - 1)
                break
        return (left, right)
