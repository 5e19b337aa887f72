"""Command line interface: ``nhc {cluster,stream,bench-dynamic,eval,louvain,generate}``."""

from __future__ import annotations

import argparse
import logging
import os
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional, Sequence

from . import io as nio
from . import metrics
from .engine import UNASSIGNED, Engine, EngineError
from .generators import HolmeKimParams, holme_kim, random_script
from .graph import GraphError
from .hubs import HubPolicy, HubPolicyError
from .louvain import LouvainError, flatten, louvain
from .oracle import batch_recompute, diff_states

log = logging.getLogger("nhc")


class CliError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get("NHC_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"NHC_SEED must be an integer, got {raw!r}") from None


def _add_policy_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    grp = p.add_mutually_exclusive_group(required=required)
    grp.add_argument("--min-degree", type=int, help="fixed hub degree threshold")
    grp.add_argument("--top-hubs", type=int, help="the N highest-degree nodes (ties included)")
    grp.add_argument("--hub-fraction", type=float, help="target fraction of hub nodes")
    p.add_argument("--k-min", type=int, default=1, help="lower degree cutoff for the power-law fit")
    p.add_argument(
        "--fitted-pmf",
        action="store_true",
        help="with --hub-fraction, use the fitted power-law pmf instead of the empirical CCDF",
    )


def _policy(args, default_fraction: Optional[float] = None) -> HubPolicy:
    if args.min_degree is None and args.top_hubs is None and args.hub_fraction is None:
        args.hub_fraction = default_fraction
    return HubPolicy(
        min_degree=args.min_degree,
        top_n=args.top_hubs,
        fraction=args.hub_fraction,
        k_min=args.k_min,
        fitted_pmf=args.fitted_pmf,
    )


def _emit(rows: Sequence[tuple], out=None) -> None:
    out = out or sys.stdout
    for k, v in rows:
        if isinstance(v, float):
            v = f"{v:.6f}"
        out.write(f"{k}\t{v}\n")


def _cluster_count(labels: Dict[int, int]) -> int:
    return len({c for c in labels.values() if c != UNASSIGNED})


def _truth_rows(pred: Dict[int, int], comms: List[List[int]]) -> List[tuple]:
    truth = metrics.flatten_cover(comms)
    missing = [u for u in truth if u not in pred]
    if missing:
        raise CliError(f"{len(missing)} ground-truth nodes are missing from the prediction")
    scored = {u: pred[u] for u in truth}
    return [
        ("truth_nodes", len(truth)),
        ("truth_communities", len(comms)),
        ("v_measure", metrics.v_measure(scored, truth)),
        ("nmi", metrics.nmi(scored, truth)),
    ]


# -- cluster ---------------------------------------------------------------


def cmd_cluster(args) -> int:
    g = nio.read_edge_list(args.edges)
    policy = _policy(args)
    t0 = time.perf_counter()
    eng = Engine.initialize(g, policy)
    log.info("initialized in %.3fs", time.perf_counter() - t0)
    labels = eng.crisp_assignment()
    _write_outputs(eng, labels, args)
    rows = [
        ("nodes", len(g)),
        ("edges", g.edge_count),
        ("min_degree", eng.threshold),
        ("hubs", len(eng.hubs)),
        ("clusters", _cluster_count(labels)),
        ("unassigned", sum(1 for c in labels.values() if c == UNASSIGNED)),
        ("messages", eng.trace[0].messages_processed),
    ]
    if g.edge_count:
        rows.append(("modularity", metrics.modularity(g, labels)))
    if args.truth:
        rows += _truth_rows(labels, nio.read_communities(args.truth))
    _emit(rows)
    return 0


def _write_outputs(eng: Engine, labels: Dict[int, int], args) -> None:
    if args.output:
        nio.write_assignments(labels, args.output)
    if args.fuzzy:
        nio.write_assignments(eng.fuzzy_assignment(), args.fuzzy)


# -- stream ----------------------------------------------------------------


def cmd_stream(args) -> int:
    g = nio.read_edge_list(args.edges)
    script = nio.read_script(args.script)
    eng = Engine.initialize(g, _policy(args))
    threshold = eng.threshold
    records = []
    touched: set = set()
    every = max(1, args.recheck_every)
    for i, ev in enumerate(script.events):
        try:
            if ev.kind == "add":
                st = eng.add_edge(ev.u, ev.v, ev.w)
                touched.update((ev.u, ev.v))
            elif ev.kind == "remove":
                st = eng.remove_edge(ev.u, ev.v)
                touched.update((ev.u, ev.v))
            else:
                touched.update(eng.graph.adj(ev.u))
                st = eng.remove_node(ev.u)
        except (GraphError, EngineError) as exc:
            raise CliError(f"event {i} ({ev.kind} {ev.u} {ev.v}): {exc}") from None
        n = st.messages_processed
        if (i + 1) % every == 0:
            n += eng.sync_hubs(touched, threshold)
            touched.clear()
        st.messages_processed = n
        records.append(st)
    if touched:
        extra = eng.sync_hubs(touched, threshold)
        if records:
            records[-1].messages_processed += extra
    labels = eng.crisp_assignment()
    _write_outputs(eng, labels, args)
    if args.trace:
        nio.write_event_trace(records, args.trace)
    counts = [r.messages_processed for r in records]
    rows = [
        ("events", len(records)),
        ("hubs", len(eng.hubs)),
        ("clusters", _cluster_count(labels)),
        ("mean_messages", statistics.mean(counts) if counts else 0.0),
        ("max_messages", max(counts) if counts else 0),
    ]
    _emit(rows)
    if args.verify:
        problems = diff_states(eng.snapshot(), batch_recompute(eng.graph, eng.hubs))
        if problems:
            for line in problems[:20]:
                sys.stdout.write(f"diff\t{line}\n")
            raise CliError(f"state diverges from batch recompute at {len(problems)} nodes")
        sys.stdout.write("verified\n")
    return 0


# -- bench-dynamic ---------------------------------------------------------


def _bench_replicate(job) -> List[int]:
    n, m, p, seed, events, kind, policy = job
    g = holme_kim(HolmeKimParams(n, m, p, seed))
    eng = Engine.initialize(g, policy)
    script_seed = seed * 1_000_003 + 17
    script = random_script(g, events if kind == "add" else 0, events if kind == "remove" else 0, script_seed)
    counts = []
    for ev in script.events:
        if kind == "add":
            st = eng.add_edge(ev.u, ev.v)
        else:
            st = eng.remove_edge(ev.u, ev.v)
        counts.append(st.messages_processed + eng.sync_hubs((ev.u, ev.v), eng.threshold))
    return counts


def log2_histogram(counts: Sequence[int]) -> List[tuple]:
    """Bins ``[0, 0], [1, 1], [2, 3], [4, 7], ...``; returns ``(lo, hi, count)``."""
    if not counts:
        return []
    top = max(counts)
    bins = [(0, 0)]
    lo = 1
    while lo <= top:
        bins.append((lo, 2 * lo - 1))
        lo *= 2
    out = []
    for lo, hi in bins:
        out.append((lo, hi, sum(1 for c in counts if lo <= c <= hi)))
    return out


def bench_summary(counts: Sequence[int], kind: str) -> List[tuple]:
    floor = 2 if kind == "add" else 0
    if not counts:
        return [("events", 0), ("floor", floor), ("fraction_at_floor", 0.0), ("mean", 0.0), ("max", 0)]
    return [
        ("events", len(counts)),
        ("floor", floor),
        ("fraction_at_floor", sum(1 for c in counts if c == floor) / len(counts)),
        ("mean", statistics.mean(counts)),
        ("max", max(counts)),
    ]


def run_bench(n, m, p, graphs, events, kind, seed, policy, jobs=1) -> List[int]:
    work = [(n, m, p, seed + i, events, kind, policy) for i in range(graphs)]
    if jobs > 1 and graphs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_bench_replicate, work))
    else:
        parts = [_bench_replicate(w) for w in work]
    return [c for part in parts for c in part]


def cmd_bench_dynamic(args) -> int:
    policy = _policy(args, default_fraction=0.1)
    t0 = time.perf_counter()
    counts = run_bench(args.n, args.m, args.p, args.graphs, args.events, args.kind, args.seed, policy, args.jobs)
    log.info("bench finished in %.1fs", time.perf_counter() - t0)
    out = sys.stdout
    _emit([("kind", args.kind), ("graphs", args.graphs), ("events_per_graph", args.events)])
    _emit(bench_summary(counts, args.kind))
    out.write("# histogram\tlo\thi\tevents\n")
    for lo, hi, c in log2_histogram(counts):
        out.write(f"bin\t{lo}\t{hi}\t{c}\n")
    out.write("# raw\tmessages\tevents\n")
    freq: Dict[int, int] = {}
    for c in counts:
        freq[c] = freq.get(c, 0) + 1
    for k in sorted(freq):
        out.write(f"raw\t{k}\t{freq[k]}\n")
    if args.counts_out:
        with open(args.counts_out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("# event\tmessages\n")
            for i, c in enumerate(counts):
                fh.write(f"{i}\t{c}\n")
    return 0


# -- eval ------------------------------------------------------------------


def cmd_eval(args) -> int:
    pred = nio.read_assignments(args.pred)
    if any(isinstance(v, dict) for v in pred.values()):
        raise CliError("eval expects a crisp assignment file")
    rows: List[tuple] = [("nodes", len(pred)), ("clusters", _cluster_count(pred))]
    if args.graph:
        g = nio.read_edge_list(args.graph)
        if set(g) != set(pred):
            raise CliError(f"node sets differ: graph has {len(g)}, prediction has {len(pred)}")
        rows += [
            ("modularity", metrics.modularity(g, pred)),
            ("intra_density", metrics.intra_density(g, pred)),
            ("inter_sparseness", metrics.inter_sparseness(g, pred)),
        ]
    if args.truth:
        rows += _truth_rows(pred, nio.read_communities(args.truth))
    if args.truth_labels:
        truth = nio.read_assignments(args.truth_labels)
        if set(truth) != set(pred):
            raise CliError(
                f"node sets differ: prediction {len(pred)}, truth {len(truth)}, "
                f"shared {len(set(pred) & set(truth))}"
            )
        rows += [("v_measure", metrics.v_measure(pred, truth)), ("nmi", metrics.nmi(pred, truth))]
    _emit(rows)
    return 0


# -- louvain ---------------------------------------------------------------


def cmd_louvain(args) -> int:
    g = nio.read_edge_list(args.edges)
    dendro = louvain(g, seed=args.seed)
    level = -1 if args.level is None else args.level
    labels = flatten(dendro, level)
    if args.output:
        nio.write_assignments(labels, args.output)
    if args.levels_prefix:
        for i in range(len(dendro)):
            nio.write_assignments(flatten(dendro, i), f"{args.levels_prefix}{i}.tsv")
    rows = [("levels", len(dendro))]
    for i, q in enumerate(dendro.modularities):
        rows.append((f"level{i}_communities", len(set(flatten(dendro, i).values()))))
        rows.append((f"level{i}_modularity", q))
    rows += [("communities", len(set(labels.values()))), ("modularity", metrics.modularity(g, labels))]
    if args.truth:
        rows += _truth_rows(labels, nio.read_communities(args.truth))
    _emit(rows)
    return 0


# -- generate --------------------------------------------------------------


def cmd_generate(args) -> int:
    g = holme_kim(HolmeKimParams(args.n, args.m, args.p, args.seed))
    nio.write_edge_list(g, args.output)
    if args.script:
        script = random_script(g, args.adds, args.removes, args.seed * 1_000_003 + 17)
        nio.write_script(script, args.script)
    _emit([("nodes", len(g)), ("edges", g.edge_count)])
    return 0


# -- entry point -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nhc", description="Nearest hub clustering on dynamic graphs")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def seed_arg(p):
        p.add_argument("--seed", type=int, default=None, help="random seed (default: $NHC_SEED or 0)")

    p = sub.add_parser("cluster", help="cluster a static graph")
    p.add_argument("edges")
    _add_policy_args(p)
    p.add_argument("-o", "--output", help="crisp assignment output")
    p.add_argument("--fuzzy", help="fuzzy membership output")
    p.add_argument("--truth", help="ground-truth community file for V-measure/NMI")
    seed_arg(p)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("stream", help="apply a mutation script incrementally")
    p.add_argument("edges")
    p.add_argument("script")
    _add_policy_args(p)
    p.add_argument("-o", "--output")
    p.add_argument("--fuzzy")
    p.add_argument("--trace", help="per-event message counts (TSV)")
    p.add_argument("--verify", action="store_true", help="compare final state with a batch recompute")
    p.add_argument("--recheck-every", type=int, default=1, help="hub policy re-check cadence in events")
    seed_arg(p)
    p.set_defaults(func=cmd_stream)

    p = sub.add_parser("bench-dynamic", help="message counts for random edge insertions or deletions")
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--m", type=int, default=10)
    p.add_argument("--p", type=float, default=0.7)
    p.add_argument("--graphs", type=int, default=100)
    p.add_argument("--events", type=int, default=100)
    p.add_argument("--kind", choices=("add", "remove"), default="add")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--counts-out", help="per-event message counts (TSV)")
    _add_policy_args(p, required=False)
    seed_arg(p)
    p.set_defaults(func=cmd_bench_dynamic)

    p = sub.add_parser("eval", help="score an assignment file")
    p.add_argument("pred")
    p.add_argument("--graph", help="edge list for modularity, density and sparseness")
    p.add_argument("--truth", help="ground-truth community file")
    p.add_argument("--truth-labels", help="ground-truth crisp assignment file")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("louvain", help="Louvain baseline")
    p.add_argument("edges")
    p.add_argument("-o", "--output")
    p.add_argument("--level", type=int, default=None, help="dendrogram level to write (default: top)")
    p.add_argument("--levels-prefix", help="write every level to PREFIX<i>.tsv")
    p.add_argument("--truth")
    seed_arg(p)
    p.set_defaults(func=cmd_louvain)

    p = sub.add_parser("generate", help="write a Holme-Kim graph and optional mutation script")
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--m", type=int, default=10)
    p.add_argument("--p", type=float, default=0.7)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--script")
    p.add_argument("--adds", type=int, default=100)
    p.add_argument("--removes", type=int, default=0)
    seed_arg(p)
    p.set_defaults(func=cmd_generate)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        return args.func(args)
    except (CliError, GraphError, EngineError, HubPolicyError, LouvainError, metrics.MetricError, ValueError, OSError) as exc:
        sys.stderr.write(f"nhc: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
