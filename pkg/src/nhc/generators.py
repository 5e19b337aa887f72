"""Holme-Kim clustered power-law graphs and random mutation scripts."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional

from .graph import DynamicGraph


@dataclass(frozen=True)
class HolmeKimParams:
    n: int
    m: int
    p: float
    seed: int = 0

    def __post_init__(self):
        if not 1 <= self.m < self.n:
            raise ValueError(f"need 1 <= m < n, got m={self.m}, n={self.n}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"triangle probability must be in [0, 1], got {self.p}")


def _pick_distinct(pool: List[int], k: int, rng: random.Random) -> List[int]:
    chosen: List[int] = []
    seen = set()
    while len(chosen) < k:
        x = rng.choice(pool)
        if x not in seen:
            seen.add(x)
            chosen.append(x)
    return chosen


def holme_kim(params: HolmeKimParams) -> DynamicGraph:
    """Preferential attachment with probabilistic triangle closure.

    Nodes ``0..m-1`` form an edgeless core. Each later node makes one
    preferential attachment, then ``m - 1`` further links: with probability
    ``p`` to an unlinked neighbor of the last preferential target (triangle
    step), otherwise to the next preferential target. A triangle step with
    no candidates falls back to a preferential step. Every new node gets
    exactly ``m`` edges, so the graph has ``(n - m) * m`` edges.
    """
    n, m, p = params.n, params.m, params.p
    rng = random.Random(params.seed)
    g = DynamicGraph()
    for u in range(m):
        g.add_node(u)
    # node u appears deg(u) times, so uniform draws are degree-proportional
    repeated: List[int] = list(range(m))
    for source in range(m, n):
        g.add_node(source)
        targets = _pick_distinct(repeated, m, rng)
        target = targets.pop()
        g.add_edge(source, target)
        new = [target]
        count = 1
        while count < m:
            if rng.random() < p:
                cands = sorted(x for x in g.adj(target) if x != source and not g.has_edge(source, x))
                if cands:
                    nbr = rng.choice(cands)
                    g.add_edge(source, nbr)
                    new.append(nbr)
                    count += 1
                    continue
            while True:
                target = targets.pop() if targets else _pick_distinct(repeated, 1, rng)[0]
                if not g.has_edge(source, target):
                    break
            g.add_edge(source, target)
            new.append(target)
            count += 1
        repeated.extend(new)
        repeated.extend([source] * m)
    return g


@dataclass(frozen=True)
class Event:
    kind: str  # "add" | "remove" | "remove_node"
    u: int
    v: Optional[int] = None
    w: float = 1.0


@dataclass
class MutationScript:
    events: List[Event]
    seed: int

    def __len__(self) -> int:
        return len(self.events)


def random_script(
    g: DynamicGraph, n_add: int, n_remove: int, seed: int, shuffle: bool = True
) -> MutationScript:
    """Uniformly sampled edge insertions and deletions, valid in sequence.

    The graph is not modified. With ``shuffle`` the add and remove events
    are interleaved in random order; otherwise all adds precede all removes.
    """
    if n_add < 0 or n_remove < 0:
        raise ValueError("event counts must be non-negative")
    rng = random.Random(seed)
    nodes = g.nodes
    n = len(nodes)
    kinds = ["add"] * n_add + ["remove"] * n_remove
    if shuffle:
        rng.shuffle(kinds)
    edges = {(u, v) for u, v, _ in g.edges()}
    edge_list = sorted(edges)
    pos = {e: i for i, e in enumerate(edge_list)}
    max_edges = n * (n - 1) // 2
    events: List[Event] = []
    for kind in kinds:
        if kind == "add":
            if len(edges) >= max_edges:
                raise ValueError("no non-edge left to add")
            while True:
                a, b = rng.sample(nodes, 2)
                e = (min(a, b), max(a, b))
                if e not in edges:
                    break
            edges.add(e)
            pos[e] = len(edge_list)
            edge_list.append(e)
        else:
            if not edges:
                raise ValueError("no edge left to remove")
            e = edge_list[rng.randrange(len(edge_list))]
            # swap-remove keeps sampling uniform and O(1)
            last = edge_list[-1]
            i = pos.pop(e)
            edge_list[i] = last
            edge_list.pop()
            if last != e:
                pos[last] = i
            edges.discard(e)
        events.append(Event(kind, e[0], e[1]))
    return MutationScript(events, seed)


def apply_event(g: DynamicGraph, ev: Event) -> None:
    """Apply ``ev`` to a bare graph (no engine)."""
    if ev.kind == "add":
        g.add_edge(ev.u, ev.v, ev.w)
    elif ev.kind == "remove":
        g.remove_edge(ev.u, ev.v)
    elif ev.kind == "remove_node":
        g.remove_node(ev.u)
    else:
        raise ValueError(f"unknown event kind {ev.kind!r}")
