"""Exact-integer search for the tetrahedral three-way coincidence.

For a vertex count m, a size f is admissible only if simultaneously
f = C(x1,3), f = C(m,3) - C(x2,3), and f = C(x3,3) + C(x3,2)(m - x3) with
x1, x2, x3 all in [m-1].  The search iterates x3 (the third form is the
cheapest complete family to scan), inverts tetrahedral numbers by integer
cube root, and re-verifies every candidate with arbitrary-precision integer
arithmetic.  A numpy sieve accelerates the scan where all intermediates
provably fit in int64; candidates it produces are still re-verified exactly.
"""
from __future__ import annotations

import hashlib
import json
import multiprocessing
import os
from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence

import numpy as np

# all int64 intermediates (6f <= ~1.0e18, x^3 for x ~ cbrt(6f)) stay exact
_VECTOR_MAX_M = 10**6


class CheckpointMismatchError(RuntimeError):
    """A checkpoint's parameter hash does not match the requested search."""


def tetra(x: int) -> int:
    """The tetrahedral number C(x,3)."""
    if x < 0:
        raise ValueError("negative argument")
    return x * (x - 1) * (x - 2) // 6


def icbrt(v: int) -> int:
    """floor(v ** (1/3)) by Newton iteration on exact integers."""
    if v < 0:
        raise ValueError("negative argument")
    if v == 0:
        return 0
    x = 1 << ((v.bit_length() + 2) // 3)
    while True:
        y = (2 * x + v // (x * x)) // 3
        if y >= x:
            break
        x = y
    while x * x * x > v:
        x -= 1
    return x


def is_tetra(v: int) -> Optional[int]:
    """Smallest x with C(x,3) = v, or None.  Integer arithmetic throughout."""
    if v < 0:
        return None
    if v == 0:
        return 0  # C(0,3) = C(1,3) = C(2,3) = 0; smallest preimage by convention
    x = icbrt(6 * v) + 1
    for cand in (x - 1, x, x + 1):
        if cand >= 3 and tetra(cand) == v:
            return cand
    return None


def third_form(m: int, x3: int) -> int:
    """C(x3,3) + C(x3,2)(m - x3); strictly increasing on 4 <= x3 <= m-4 for m >= 13."""
    if not (0 <= x3 <= m):
        raise ValueError(f"need 0 <= x3 <= m, got x3={x3}, m={m}")
    return tetra(x3) + x3 * (x3 - 1) // 2 * (m - x3)


@dataclass(frozen=True)
class DiophantineSolution:
    """Witness (m, x1, x2, x3, f); the three equalities re-verify on construction."""

    m: int
    x1: int
    x2: int
    x3: int
    f: int

    def __post_init__(self):
        if not verify_solution(self.m, self.x1, self.x2, self.x3, self.f):
            raise ValueError(f"not a solution: {self}")

    def as_dict(self) -> dict:
        return {"m": self.m, "x1": self.x1, "x2": self.x2, "x3": self.x3, "f": self.f}


def verify_solution(m: int, x1: int, x2: int, x3: int, f: int) -> bool:
    """Independent exact checker; shares no code with the search inner loop."""
    if not all(1 <= x <= m - 1 for x in (x1, x2, x3)):
        return False
    if not (0 < f < comb(m, 3)):
        return False
    return (
        comb(x1, 3) == f
        and comb(m, 3) - comb(x2, 3) == f
        and comb(x3, 3) + comb(x3, 2) * (m - x3) == f
    )


def assert_exact_arithmetic() -> None:
    """Startup self-test: near-maximal operands multiply without precision loss."""
    m = 10**7
    big = comb(m, 3)
    assert big == m * (m - 1) * (m - 2) // 6
    assert big > 2**63  # the search range must not silently fit into machine words
    x = icbrt(6 * big)
    assert x**3 <= 6 * big < (x + 1) ** 3
    assert is_tetra(tetra(m)) == m
    assert is_tetra(big + 1) is None


def _solve_for_m_pure(m: int) -> list[DiophantineSolution]:
    out = []
    cm3 = comb(m, 3)
    for x3 in range(1, m):
        f = third_form(m, x3)
        if not (0 < f < cm3):
            continue
        x1 = is_tetra(f)
        if x1 is None or not (1 <= x1 <= m - 1):
            continue
        x2 = is_tetra(cm3 - f)
        if x2 is None or not (1 <= x2 <= m - 1):
            continue
        out.append(DiophantineSolution(m, x1, x2, x3, f))
    return out


def _tetra_inverse_vec(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(x, ok): smallest tetrahedral preimages where they exist, vectorized."""
    guess = np.rint(np.cbrt(6.0 * values.astype(np.float64))).astype(np.int64) + 1
    x = np.zeros_like(values)
    ok = np.zeros(values.shape, dtype=bool)
    for delta in (-2, -1, 0, 1):
        cand = guess + delta
        good = (cand >= 3) & (cand * (cand - 1) * (cand - 2) // 6 == values)
        x = np.where(good & ~ok, cand, x)
        ok |= good
    zero = values == 0
    x = np.where(zero, 0, x)
    ok |= zero
    return x, ok


def _solve_for_m_vector(m: int) -> list[DiophantineSolution]:
    cm3 = comb(m, 3)
    x3 = np.arange(1, m, dtype=np.int64)
    f = x3 * (x3 - 1) * (x3 - 2) // 6 + x3 * (x3 - 1) // 2 * (m - x3)
    mask = (f > 0) & (f < cm3)
    x1, ok1 = _tetra_inverse_vec(f)
    mask &= ok1 & (x1 >= 1) & (x1 <= m - 1)
    g = cm3 - f
    x2, ok2 = _tetra_inverse_vec(g)
    mask &= ok2 & (x2 >= 1) & (x2 <= m - 1)
    out = []
    for i in np.nonzero(mask)[0]:
        # exact re-verification happens inside the dataclass constructor
        out.append(DiophantineSolution(m, int(x1[i]), int(x2[i]), int(x3[i]), int(f[i])))
    return out


def solve_for_m(m: int) -> list[DiophantineSolution]:
    """Complete solution list for one m, ordered by x3."""
    if m < 4:
        raise ValueError("m must be at least 4")
    if m <= _VECTOR_MAX_M:
        return _solve_for_m_vector(m)
    return _solve_for_m_pure(m)


# ---------------------------------------------------------------------------
# chunked, resumable range search

DEFAULT_CHUNK = 1024


@dataclass
class SearchCheckpoint:
    m_lo: int
    m_hi: int
    chunk: int
    done_chunks: list[int]
    found: list[dict]
    params_hash: str

    @property
    def frontier(self) -> int:
        """First m not covered by a completed prefix of chunks."""
        done = set(self.done_chunks)
        m = self.m_lo
        idx = 0
        while idx in done:
            m = min(self.m_hi + 1, self.m_lo + (idx + 1) * self.chunk)
            idx += 1
        return m

    def to_json(self) -> str:
        return json.dumps(
            {
                "m_lo": self.m_lo,
                "m_hi": self.m_hi,
                "chunk": self.chunk,
                "frontier_chunks": sorted(self.done_chunks),
                "found": self.found,
                "params_hash": self.params_hash,
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "SearchCheckpoint":
        d = json.loads(text)
        return cls(
            m_lo=d["m_lo"], m_hi=d["m_hi"], chunk=d["chunk"],
            done_chunks=list(d["frontier_chunks"]), found=list(d["found"]),
            params_hash=d["params_hash"],
        )


def _params_hash(m_lo: int, m_hi: int, chunk: int) -> str:
    blob = f"dio-search-v1:{m_lo}:{m_hi}:{chunk}".encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _chunk_bounds(m_lo: int, m_hi: int, chunk: int, idx: int) -> tuple[int, int]:
    lo = m_lo + idx * chunk
    return lo, min(m_hi, lo + chunk - 1)


def _search_chunk(args: tuple[int, int, int, int]) -> tuple[int, list[dict]]:
    m_lo, m_hi, chunk, idx = args
    lo, hi = _chunk_bounds(m_lo, m_hi, chunk, idx)
    found = []
    for m in range(lo, hi + 1):
        for sol in solve_for_m(m):
            found.append(sol.as_dict())
    return idx, found


def search_range(
    m_lo: int,
    m_hi: int,
    checkpoint_path: Optional[str] = None,
    workers: int = 1,
    chunk: int = DEFAULT_CHUNK,
) -> tuple[list[DiophantineSolution], SearchCheckpoint]:
    """Union of solve_for_m over [m_lo, m_hi], chunked and resumable.

    The checkpoint stores completed chunk ids and solutions found; resuming
    verifies the parameter hash and skips finished chunks.  Output is sorted
    by m and independent of worker count or interruption pattern.
    """
    if not (4 <= m_lo <= m_hi):
        raise ValueError("need 4 <= m_lo <= m_hi")
    assert_exact_arithmetic()
    phash = _params_hash(m_lo, m_hi, chunk)
    n_chunks = (m_hi - m_lo) // chunk + 1

    state = SearchCheckpoint(m_lo, m_hi, chunk, [], [], phash)
    if checkpoint_path and os.path.exists(checkpoint_path):
        with open(checkpoint_path, "r", encoding="utf-8") as fh:
            loaded = SearchCheckpoint.from_json(fh.read())
        if loaded.params_hash != phash:
            raise CheckpointMismatchError(
                f"checkpoint at {checkpoint_path} was written for different parameters"
            )
        state = loaded

    todo = [i for i in range(n_chunks) if i not in set(state.done_chunks)]
    tasks = [(m_lo, m_hi, chunk, i) for i in todo]

    def flush():
        if checkpoint_path:
            tmp = checkpoint_path + ".tmp"
            with open(tmp, "w", encoding="utf-8") as fh:
                fh.write(state.to_json())
            os.replace(tmp, checkpoint_path)

    if workers > 1 and len(tasks) > 1:
        with multiprocessing.Pool(workers) as pool:
            for idx, found in pool.imap_unordered(_search_chunk, tasks):
                state.done_chunks.append(idx)
                state.found.extend(found)
                flush()
    else:
        for task in tasks:
            idx, found = _search_chunk(task)
            state.done_chunks.append(idx)
            state.found.extend(found)
            flush()

    state.done_chunks.sort()
    state.found.sort(key=lambda d: (d["m"], d["x3"]))
    flush()
    solutions = [
        DiophantineSolution(d["m"], d["x1"], d["x2"], d["x3"], d["f"])
        for d in state.found
    ]
    return solutions, state
