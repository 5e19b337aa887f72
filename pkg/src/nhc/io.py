"""Edge lists, ground-truth community files, assignments and event traces."""

from __future__ import annotations

import logging
import os
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple, Union

from .generators import Event, MutationScript
from .graph import DynamicGraph

log = logging.getLogger(__name__)

PathLike = Union[str, os.PathLike]


class FormatError(ValueError):
    def __init__(self, path, lineno: int, msg: str, col: int | None = None):
        where = f"{path}:{lineno}" + (f":{col}" if col is not None else "")
        super().__init__(f"{where}: {msg}")
        self.lineno = lineno
        self.col = col


def _data_lines(path: PathLike) -> Iterator[Tuple[int, List[str]]]:
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            yield lineno, s.split()


def _node_id(tok: str, path, lineno: int, col: int) -> int:
    try:
        u = int(tok)
    except ValueError:
        raise FormatError(path, lineno, f"node id {tok!r} is not an integer", col) from None
    if u < 0:
        raise FormatError(path, lineno, f"node id {u} is negative", col)
    return u


def read_edge_list(path: PathLike) -> DynamicGraph:
    """Parse ``u v [w]`` lines. Self-loops are skipped, duplicates collapsed."""
    g = DynamicGraph()
    loops = dups = 0
    for lineno, toks in _data_lines(path):
        if len(toks) not in (2, 3):
            raise FormatError(path, lineno, f"expected 'u v [w]', got {len(toks)} fields")
        u = _node_id(toks[0], path, lineno, 1)
        v = _node_id(toks[1], path, lineno, 2)
        w = 1.0
        if len(toks) == 3:
            try:
                w = float(toks[2])
            except ValueError:
                raise FormatError(path, lineno, f"weight {toks[2]!r} is not a number", 3) from None
            if not 0 < w < float("inf"):
                raise FormatError(path, lineno, f"weight {w} must be positive", 3)
        if u == v:
            loops += 1
            continue
        if g.has_edge(u, v):
            dups += 1
        g.add_edge(u, v, w)
    if loops:
        log.warning("%s: skipped %d self-loop(s)", path, loops)
    if dups:
        log.warning("%s: collapsed %d duplicate edge(s)", path, dups)
    return g


def write_edge_list(g: DynamicGraph, path: PathLike) -> None:
    unit = g.is_unit_weight()
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for u, v, w in sorted(g.edges()):
            fh.write(f"{u} {v}\n" if unit else f"{u} {v} {w!r}\n")


def read_communities(path: PathLike) -> List[List[int]]:
    """One community per line, members separated by tabs or spaces."""
    comms = [
        [_node_id(t, path, lineno, col) for col, t in enumerate(toks, 1)]
        for lineno, toks in _data_lines(path)
    ]
    if not comms:
        raise FormatError(path, 0, "no communities found")
    return comms


def write_communities(comms: Iterable[Iterable[int]], path: PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for c in comms:
            fh.write("\t".join(str(u) for u in c) + "\n")


def write_assignments(assign: Mapping[int, object], path: PathLike) -> None:
    """Crisp (``node -> label``) or fuzzy (``node -> {label: membership}``), sorted by node."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for u in sorted(assign):
            val = assign[u]
            if isinstance(val, Mapping):
                body = ",".join(f"{h}:{val[h]!r}" for h in sorted(val))
                fh.write(f"{u}\t{body}\n")
            else:
                fh.write(f"{u}\t{val}\n")


def read_assignments(path: PathLike) -> Dict[int, object]:
    """Inverse of :func:`write_assignments`; fuzzy lines contain ``:``."""
    out: Dict[int, object] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise FormatError(path, lineno, "expected 'node<TAB>label'")
            u = _node_id(parts[0], path, lineno, 1)
            body = parts[1]
            if ":" in body:
                mem = {}
                for item in body.split(","):
                    h, _, a = item.partition(":")
                    mem[int(h)] = float(a)
                if abs(sum(mem.values()) - 1.0) > 1e-9:
                    raise FormatError(path, lineno, "memberships do not sum to 1")
                out[u] = mem
            elif body == "":
                out[u] = {}
            else:
                try:
                    out[u] = int(body)
                except ValueError:
                    raise FormatError(path, lineno, f"label {body!r} is not an integer", 2) from None
    return out


def write_event_trace(stats: Iterable, path: PathLike) -> None:
    """One tab-separated record per mutation: kind, u, v, messages."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("# kind\tu\tv\tmessages\n")
        for s in stats:
            u = "-" if s.u is None else s.u
            v = "-" if s.v is None else s.v
            fh.write(f"{s.kind}\t{u}\t{v}\t{s.messages_processed}\n")


def read_event_trace(path: PathLike) -> List[Tuple[str, str, str, int]]:
    rows = []
    for lineno, toks in _data_lines(path):
        if len(toks) != 4:
            raise FormatError(path, lineno, "expected 4 tab-separated fields")
        rows.append((toks[0], toks[1], toks[2], int(toks[3])))
    return rows


def write_script(script: MutationScript, path: PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# seed {script.seed}\n")
        for ev in script.events:
            if ev.kind == "add":
                fh.write(f"add {ev.u} {ev.v}" + ("" if ev.w == 1.0 else f" {ev.w!r}") + "\n")
            elif ev.kind == "remove":
                fh.write(f"remove {ev.u} {ev.v}\n")
            else:
                fh.write(f"{ev.kind} {ev.u}\n")


def read_script(path: PathLike) -> MutationScript:
    """Lines ``add u v [w]``, ``remove u v`` or ``remove_node u``."""
    events = []
    seed = 0
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            toks = line.split()
            if not toks:
                continue
            if toks[0] == "#":
                if len(toks) == 3 and toks[1] == "seed":
                    seed = int(toks[2])
                continue
            if toks[0].startswith("#"):
                continue
            kind = toks[0]
            ids = [_node_id(t, path, lineno, i + 2) for i, t in enumerate(toks[1:3])]
            if kind == "add" and len(toks) in (3, 4):
                w = float(toks[3]) if len(toks) == 4 else 1.0
                events.append(Event("add", ids[0], ids[1], w))
            elif kind == "remove" and len(toks) == 3:
                events.append(Event("remove", ids[0], ids[1]))
            elif kind == "remove_node" and len(toks) == 2:
                events.append(Event("remove_node", ids[0]))
            else:
                raise FormatError(path, lineno, f"bad event line {line.strip()!r}")
    return MutationScript(events, seed)
