"""Command-line entry point.

Every subcommand emits one JSON report on stdout (or ``--out``); human
summaries go to stderr so pipelines stay machine-clean.  Graph payloads are
embedded as the text interchange format.  Exit status: 0 decided/pass,
1 error, 2 unknown verdict.  Seeds default to a fixed constant so runs are
reproducible; pass ``--seed random`` to opt out.
"""
from __future__ import annotations

import argparse
import json
import os
import secrets
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Optional

from . import __version__
from .core import (
    CapabilityError,
    Hypergraph3,
    complement,
    read_graph_text,
    write_graph_text,
)
from .constructions import (
    CanonicalParams,
    InsufficientSparseEdges,
    blowup,
    canonical_minus,
    canonical_plus,
    construct_Hn,
    construct_Hn_iterated,
    g_construction,
    hn_it_density,
    hn_it_edge_count,
    m_sparse_random,
    seed_H,
)
from .diophantine import search_range
from .forcing import (
    OrderSizePair,
    arrow_exhaustive,
    arrow_search,
    scan_forced_set,
    size_histogram,
    theorem2_filter,
    zero_density_certificate,
)
from .subsets import subset_histogram

DEFAULT_SEED = 1789
WORKERS_ENV = "ORDERSIZE_WORKERS"

DENSITY_TARGET = 0.26447
AVOIDANCE_TARGET = 0.47106


@dataclass
class RunReport:
    subcommand: str
    inputs: dict
    payload: dict
    counters: dict = field(default_factory=dict)
    wall_time: float = 0.0
    version: str = __version__
    seed: Optional[int] = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls(**json.loads(text))


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _parse_seed(raw: str) -> int:
    if raw == "random":
        return secrets.randbelow(2**31)
    return int(raw)


def _parse_S(raw: str) -> frozenset[int]:
    raw = raw.strip().lower()
    if raw in ("", "-", "none", "{}"):
        return frozenset()
    parts = {int(p) for p in raw.replace("{", "").replace("}", "").split(",") if p}
    if not parts <= {1, 2}:
        raise ValueError(f"S must be a subset of {{1,2}}, got {raw!r}")
    return frozenset(parts)


def _graph_payload(g: Hypergraph3) -> dict:
    return {"n": g.n, "edge_count": g.edge_count, "graph": write_graph_text(g)}


# ---------------------------------------------------------------------------
# subcommand implementations: each returns (exit_status, payload, counters)

def _cmd_construct(args) -> tuple[int, dict, dict]:
    seed = args.seed
    name = args.family
    params: dict = {}
    certificate: Optional[dict] = None
    if name == "seed-h":
        g = seed_H()
    elif name == "hn":
        g = construct_Hn(args.n)
        params = {"n": args.n}
    elif name == "hnit":
        g = construct_Hn_iterated(args.n, args.cutoff)
        params = {"n": args.n, "cutoff": args.cutoff}
    elif name == "gsnk":
        g = g_construction(CanonicalParams(_parse_S(args.S), args.n, args.k))
        params = {"S": sorted(_parse_S(args.S)), "n": args.n, "k": args.k}
    elif name == "canonical-plus":
        g = canonical_plus(CanonicalParams(_parse_S(args.S), args.n, args.k),
                           args.m, seed, args.sparse_edges)
        params = {"S": sorted(_parse_S(args.S)), "n": args.n, "k": args.k, "m": args.m}
    elif name == "canonical-minus":
        g = canonical_minus(CanonicalParams(_parse_S(args.S), args.n, args.k),
                            args.m, seed, args.sparse_edges)
        params = {"S": sorted(_parse_S(args.S)), "n": args.n, "k": args.k, "m": args.m}
    elif name == "sparse":
        g, cert = m_sparse_random(args.n, args.m, seed)
        params = {"n": args.n, "m": args.m}
        certificate = {
            "m": cert.m, "worst_count": cert.worst_count,
            "worst_set": list(cert.worst_set) if cert.worst_set else None,
            "valid": cert.valid,
        }
    elif name == "blowup":
        pattern = _named_pattern(args.pattern)
        g = blowup(pattern, args.t)
        params = {"pattern": args.pattern, "t": args.t}
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(name)

    if args.certify and certificate is None:
        scan = subset_histogram(g, 6) if g.n >= 6 else None
        certificate = {
            "max_six_set_count": scan.max_count if scan else None,
            "six_sets_at_ten": scan.histogram[10] if scan else None,
            "worst_set": list(scan.witness) if scan and scan.witness else None,
        }

    payload = {"construction": name, "parameters": params, "seed": seed}
    payload.update(_graph_payload(g))
    if certificate is not None:
        payload["sparse_certificate" if name == "sparse" else "certificate"] = certificate
    if args.graph_out:
        with open(args.graph_out, "w", encoding="utf-8") as fh:
            fh.write(write_graph_text(g))
        payload["graph"] = args.graph_out
        if args.certify:
            sidecar = dict(payload)
            sidecar.pop("graph", None)
            with open(args.graph_out + ".json", "w", encoding="utf-8") as fh:
                json.dump(sidecar, fh, sort_keys=True, indent=2)
    return 0, payload, {"edges": g.edge_count}


def _named_pattern(name: str) -> Hypergraph3:
    if name == "seed-h":
        return seed_H()
    if name == "k4":
        return Hypergraph3.complete(4)
    if name == "k4-minus":
        return Hypergraph3.from_edges(4, [(0, 1, 2), (0, 1, 3), (0, 2, 3)])
    with open(name, "r", encoding="utf-8") as fh:
        return read_graph_text(fh.read())


def _verdict_payload(v) -> dict:
    out = {"status": v.status, "graphs_examined": v.graphs_examined,
           "budget_spent": v.budget_spent}
    if v.counterexample is not None:
        out["counterexample"] = write_graph_text(v.counterexample)
    return out


def _cmd_check_arrow(args) -> tuple[int, dict, dict]:
    pair = OrderSizePair(args.m, args.f)
    if args.search:
        v = arrow_search(args.n, args.e, pair, budget=args.budget or 20000,
                         seed=args.seed)
    else:
        v = arrow_exhaustive(args.n, args.e, pair, budget=args.budget)
    status = 0 if v.decided else 2
    return status, _verdict_payload(v), {"graphs_examined": v.graphs_examined,
                                         "budget_spent": v.budget_spent}


def _cmd_scan(args) -> tuple[int, dict, dict]:
    pair = OrderSizePair(args.m, args.f)
    res = scan_forced_set(args.n, pair, seed=args.seed,
                          search_budget=args.search_budget)
    ratio: Fraction = res.ratio
    payload = {
        "n": args.n, "pair": {"m": args.m, "f": args.f},
        "forced": list(res.forced),
        "ratio": f"{ratio.numerator}/{ratio.denominator}",
        "density_proxy": float(ratio),
        "decided_by": {str(e): how for e, how in sorted(res.decided_by.items())},
    }
    return 0, payload, {"counterexamples": len(res.counterexamples)}


def _cmd_histogram(args) -> tuple[int, dict, dict]:
    with open(args.graphfile, "r", encoding="utf-8") as fh:
        g = read_graph_text(fh.read())
    hist = size_histogram(g, args.m)
    payload = {"n": g.n, "m": args.m, "counts": list(hist.counts),
               "subsets": sum(hist.counts)}
    return 0, payload, {"subsets": sum(hist.counts)}


def _cmd_certify_zero(args) -> tuple[int, dict, dict]:
    pair = OrderSizePair(args.m, args.f)
    cert = zero_density_certificate(pair)
    if cert is None:
        return 0, {"m": args.m, "f": args.f, "certificate": None}, {}
    payload = {"m": args.m, "f": args.f,
               "certificate": {"S": sorted(cert.S), "gap": list(cert.gap)}}
    return 0, payload, {}


def _cmd_filter_thm2(args) -> tuple[int, dict, dict]:
    if not (4 <= args.m_lo <= args.m_hi):
        raise ValueError("need 4 <= m_lo <= m_hi")
    survivors = {}
    for m in range(args.m_lo, args.m_hi + 1):
        fs = theorem2_filter(m)
        if fs:
            survivors[str(m)] = list(fs)
    return 0, {"m_lo": args.m_lo, "m_hi": args.m_hi, "survivors": survivors}, \
        {"m_scanned": args.m_hi - args.m_lo + 1}


def _cmd_search_dio(args) -> tuple[int, dict, dict]:
    workers = args.workers if args.workers is not None else _default_workers()
    sols, ck = search_range(args.m_lo, args.m_hi, checkpoint_path=args.checkpoint,
                            workers=workers, chunk=args.chunk)
    payload = {
        "range": [args.m_lo, args.m_hi],
        "solutions": [s.as_dict() for s in sols],
        "chunks_done": len(ck.done_chunks),
    }
    return 0, payload, {"workers": workers, "chunks": len(ck.done_chunks)}


# ---------------------------------------------------------------------------
# repro: scripted acceptance-style checks

def _repro_density_hnit() -> tuple[bool, dict]:
    d = hn_it_density(2000)
    bound = 1 - 2 * d
    ok = abs(d - DENSITY_TARGET) < 0.01 and abs(bound - AVOIDANCE_TARGET) < 0.02
    return ok, {"n": 2000, "density": d, "avoidance_bound": bound,
                "density_target": DENSITY_TARGET, "bound_target": AVOIDANCE_TARGET}


def _repro_lemma10_gap() -> tuple[bool, dict]:
    from .constructions import F_set

    bad = []
    for m in range(16, 301):
        fs = F_set({1}, m).clamp(1, comb(m - 1, 2) - 1)
        if fs:
            bad.append(m)
    return not bad, {"range": [16, 300], "violations": bad}


def _repro_dio_10k() -> tuple[bool, dict]:
    sols, _ = search_range(4, 10000, workers=_default_workers())
    expect = [{"m": 6, "x1": 5, "x2": 5, "x3": 3, "f": 10}]
    got = [s.as_dict() for s in sols]
    return got == expect, {"solutions": got}


def _repro_hnit_six_sets_60() -> tuple[bool, dict]:
    g = construct_Hn_iterated(60)
    scan = subset_histogram(g, 6)
    ok = scan.max_count <= 9 and scan.histogram[10] == 0
    return ok, {"n": 60, "max_six_set_count": scan.max_count,
                "six_sets_at_ten": scan.histogram[10],
                "six_sets_scanned": sum(scan.histogram)}


def _repro_forcing_n6() -> tuple[bool, dict]:
    res = scan_forced_set(6, OrderSizePair(6, 10))
    return res.forced == (10,), {"forced": list(res.forced), "ratio": str(res.ratio)}


def _repro_lemma7_fixtures() -> tuple[bool, dict]:
    from .core import induced_edge_count
    from .constructions import weak_blowup_fixture

    full = blowup(Hypergraph3.complete(4), 3)
    a = induced_edge_count(full, [0, 1, 2, 3, 6, 9])
    weak = weak_blowup_fixture(_named_pattern("k4-minus"), 2, None)
    b = induced_edge_count(weak, [0, 1, 2, 3, 4, 6])
    return a == 10 and b == 10, {"full_blowup_count": a, "weak_blowup_count": b}


REPRO_REGISTRY: dict[str, Callable[[], tuple[bool, dict]]] = {
    "density-hnit": _repro_density_hnit,
    "lemma10-gap": _repro_lemma10_gap,
    "dio-10k": _repro_dio_10k,
    "hnit-6sets-60": _repro_hnit_six_sets_60,
    "forcing-n6": _repro_forcing_n6,
    "lemma7-fixtures": _repro_lemma7_fixtures,
}


def _cmd_repro(args) -> tuple[int, dict, dict]:
    if args.name not in REPRO_REGISTRY:
        raise ValueError(
            f"unknown repro script {args.name!r}; known: {sorted(REPRO_REGISTRY)}"
        )
    ok, details = REPRO_REGISTRY[args.name]()
    print(f"{'PASS' if ok else 'FAIL'} {args.name}", file=sys.stderr)
    return (0 if ok else 1), {"name": args.name, "passed": ok, "details": details}, {}


# ---------------------------------------------------------------------------
# parser and dispatch

class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ordersize", description=__doc__)
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    sub = p.add_subparsers(dest="subcommand", required=True)

    c = sub.add_parser("construct", help="emit a graph family member")
    c.add_argument("family", choices=["seed-h", "hn", "hnit", "gsnk", "canonical-plus",
                                      "canonical-minus", "sparse", "blowup"])
    c.add_argument("--n", type=int, default=0)
    c.add_argument("--k", type=int, default=0)
    c.add_argument("--m", type=int, default=8)
    c.add_argument("--S", default="")
    c.add_argument("--t", type=int, default=2)
    c.add_argument("--cutoff", type=int, default=6)
    c.add_argument("--pattern", default="seed-h")
    c.add_argument("--sparse-edges", type=int, default=None)
    c.add_argument("--seed", type=_parse_seed, default=DEFAULT_SEED)
    c.add_argument("--certify", action="store_true")
    c.add_argument("--graph-out", help="write graph text here; report references it")
    c.set_defaults(func=_cmd_construct)

    a = sub.add_parser("check-arrow", help="decide one arrow instance")
    a.add_argument("n", type=int)
    a.add_argument("e", type=int)
    a.add_argument("m", type=int)
    a.add_argument("f", type=int)
    mode = a.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", default=True)
    mode.add_argument("--search", action="store_true")
    a.add_argument("--budget", type=int, default=None)
    a.add_argument("--seed", type=_parse_seed, default=DEFAULT_SEED)
    a.set_defaults(func=_cmd_check_arrow)

    s = sub.add_parser("scan", help="exact forced-e set at one n")
    s.add_argument("n", type=int)
    s.add_argument("m", type=int)
    s.add_argument("f", type=int)
    s.add_argument("--seed", type=_parse_seed, default=DEFAULT_SEED)
    s.add_argument("--search-budget", type=int, default=4000)
    s.set_defaults(func=_cmd_scan)

    h = sub.add_parser("histogram", help="induced size distribution of a graph file")
    h.add_argument("graphfile")
    h.add_argument("m", type=int)
    h.set_defaults(func=_cmd_histogram)

    z = sub.add_parser("certify-zero", help="zero-density interval certificate")
    z.add_argument("m", type=int)
    z.add_argument("f", type=int)
    z.set_defaults(func=_cmd_certify_zero)

    t = sub.add_parser("filter-thm2", help="sizes surviving the tetrahedral conditions")
    t.add_argument("m_lo", type=int)
    t.add_argument("m_hi", type=int)
    t.set_defaults(func=_cmd_filter_thm2)

    d = sub.add_parser("search-dio", help="range search for three-way coincidences")
    d.add_argument("m_lo", type=int)
    d.add_argument("m_hi", type=int)
    d.add_argument("--checkpoint", default=None)
    d.add_argument("--workers", type=int, default=None)
    d.add_argument("--chunk", type=int, default=1024)
    d.set_defaults(func=_cmd_search_dio)

    r = sub.add_parser("repro", help="run a registered reproduction check")
    r.add_argument("name")
    r.set_defaults(func=_cmd_repro)
    return p


def dispatch(argv: list[str]) -> tuple[int, Optional[RunReport]]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1, None
    seed = getattr(args, "seed", None)
    t0 = time.perf_counter()
    try:
        status, payload, counters = args.func(args)
    except (ValueError, InsufficientSparseEdges, CapabilityError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1, None
    report = RunReport(
        subcommand=args.subcommand,
        inputs={k: v for k, v in vars(args).items()
                if k not in ("func", "out") and not callable(v)},
        payload=payload,
        counters=counters,
        wall_time=time.perf_counter() - t0,
        seed=seed,
    )
    text = report.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text)
    summary = payload.get("status") or payload.get("construction") or args.subcommand
    print(f"[ordersize] {args.subcommand}: {summary} "
          f"({report.wall_time:.2f}s)", file=sys.stderr)
    return status, report


def main() -> None:
    sys.exit(dispatch(sys.argv[1:])[0])


if __name__ == "__main__":
    main()
