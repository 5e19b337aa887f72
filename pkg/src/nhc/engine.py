"""Incremental nearest-hub clustering by local message passing.

Every node keeps a hub distance and a table of ``(hub, parent, alpha)``
tuples, stored as ``{parent: {hub: alpha}}``. Hubs hold ``{None: {self: 1}}``
at distance 0. Nodes exchange normalized tables along edges; graph
mutations only wake the nodes they touch, and the message queue is drained
until no rule changes any table.

A node that answers a message it cannot improve on replies with its own
table only when the message asks for it. Invalidations ask; replies and
the paired notifications sent on edge insertion do not, which rules out
reply ping-pong between equidistant neighbors. Broadcasts after a distance
decrease or an equal-distance table change do not ask either: in a
consistent neighborhood nobody can offer a shorter route than the one just
adopted.

Queue layout: each directed edge owns at most one pending message slot.
Re-sending on an edge overwrites the slot content. Slots are popped in two
tiers: invalidations (distance ``inf``, empty table) first, then finite
messages by ascending distance. Draining invalidations before any finite
route is accepted keeps stale routes from circulating after a removal.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from .graph import DynamicGraph, GraphError
from .hubs import HubPolicy

INF = math.inf
UNASSIGNED = -1
REL_TOL = 1e-9

Table = Dict[Optional[int], Dict[int, float]]


class EngineError(RuntimeError):
    pass


class StabilizationError(EngineError):
    """Raised when an event exceeds the message-processing cap."""

    def __init__(self, msg: str, processed: int, pending: int, sample: list):
        super().__init__(f"{msg} (processed={processed}, pending={pending}, sample={sample[:5]})")
        self.processed = processed
        self.pending = pending
        self.sample = sample


def dist_eq(a: float, b: float) -> bool:
    if a == b:
        return True
    if math.isinf(a) or math.isinf(b):
        return False
    return abs(a - b) <= REL_TOL * max(abs(a), abs(b))


def dist_lt(a: float, b: float) -> bool:
    return a < b and not dist_eq(a, b)


@dataclass
class NodeState:
    dist: float = INF
    table: Table = field(default_factory=dict)

    def hub_weights(self) -> Dict[int, float]:
        acc: Dict[int, float] = {}
        for entries in self.table.values():
            for h, a in entries.items():
                acc[h] = acc.get(h, 0.0) + a
        return acc

    def payload(self) -> Dict[int, float]:
        """Per-hub alpha sums divided by the total alpha."""
        acc = self.hub_weights()
        total = sum(acc.values())
        return {h: a / total for h, a in acc.items()}

    def tuples(self) -> List[Tuple[int, Optional[int], float]]:
        return [(h, p, a) for p, entries in self.table.items() for h, a in entries.items()]


@dataclass
class Message:
    source: int
    target: int
    payload: Dict[int, float]
    dist: float
    solicit: bool = True
    seq: int = 0


@dataclass
class EventStats:
    kind: str
    u: Optional[int]
    v: Optional[int]
    messages_processed: int = 0


class Engine:
    """Clustering state bound to one :class:`DynamicGraph`.

    The ``on_*`` handlers expect the graph mutation to be applied already.
    The convenience methods ``add_edge``, ``remove_edge`` and
    ``remove_node`` apply it and then call the matching handler.
    """

    def __init__(self, graph: DynamicGraph, hubs: Iterable[int] = (), queue: str = "priority"):
        if queue not in ("priority", "fifo"):
            raise ValueError("queue must be 'priority' or 'fifo'")
        self.graph = graph
        self.queue_mode = queue
        self.hubs: set = set()
        self.state: Dict[int, NodeState] = {u: NodeState() for u in graph}
        self._slots: Dict[Tuple[int, int], Message] = {}
        self._heap: list = []
        self._seq = itertools.count()
        self.trace: List[EventStats] = []
        self.threshold: Optional[int] = None
        for h in hubs:
            self._seed_hub(h)

    # -- construction ------------------------------------------------------

    @classmethod
    def initialize(cls, graph: DynamicGraph, policy: HubPolicy, queue: str = "priority") -> "Engine":
        threshold = policy.threshold(list(graph.degrees().values()))
        hubs = [u for u in graph.nodes if graph.degree(u) >= threshold]
        eng = cls(graph, hubs, queue=queue)
        eng.threshold = threshold
        eng._event("initialize", None, None)
        return eng

    def _seed_hub(self, u: int) -> None:
        if u not in self.graph:
            raise EngineError(f"hub {u} not in graph")
        self.hubs.add(u)
        st = self.state[u]
        st.dist = 0.0
        st.table = {None: {u: 1.0}}
        self._broadcast(u, solicit=False)

    # -- queue -------------------------------------------------------------

    def _send(self, x: int, y: int, solicit: bool) -> None:
        st = self.state[x]
        d = st.dist + self.graph.weight(x, y) if st.table else INF
        payload = st.payload() if st.table else {}
        old = self._slots.get((x, y))
        if old is not None:
            solicit = solicit or old.solicit
        seq = next(self._seq)
        self._slots[(x, y)] = Message(x, y, payload, d, solicit, seq)
        if math.isinf(d):
            key = (0, 0.0, seq)
        elif self.queue_mode == "priority":
            key = (1, d, seq)
        else:
            key = (1, 0.0, seq)
        heapq.heappush(self._heap, (key, x, y))

    def _broadcast(self, x: int, solicit: bool, exclude: Optional[int] = None) -> None:
        for y in self.graph.adj(x):
            if y != exclude:
                self._send(x, y, solicit)

    def _pop(self) -> Optional[Message]:
        while self._heap:
            key, x, y = heapq.heappop(self._heap)
            msg = self._slots.get((x, y))
            if msg is not None and msg.seq == key[2]:
                del self._slots[(x, y)]
                return msg
        return None

    def _drop_slots_on(self, u: int, v: int) -> None:
        self._slots.pop((u, v), None)
        self._slots.pop((v, u), None)

    @property
    def pending(self) -> int:
        return len(self._slots)

    def stabilize(self, kind: str = "stabilize", u=None, v=None, cap: Optional[int] = None) -> EventStats:
        """Drain the queue to quiescence."""
        stats = EventStats(kind, u, v)
        if cap is None:
            cap = 64 * max(self.graph.edge_count, 1)
        while True:
            msg = self._pop()
            if msg is None:
                break
            stats.messages_processed += 1
            if stats.messages_processed > cap:
                sample = sorted(self._slots)[:5]
                raise StabilizationError(
                    f"{kind}: exceeded cap of {cap} messages", stats.messages_processed, self.pending, sample
                )
            self.process_message(msg)
        return stats

    def _event(self, kind: str, u, v) -> EventStats:
        stats = self.stabilize(kind, u, v)
        self.trace.append(stats)
        return stats

    # -- message processing -----------------------------------------------

    def process_message(self, msg: Message) -> None:
        x, y = msg.source, msg.target
        if y not in self.state or not self.graph.has_edge(x, y):
            return
        w = self.graph.weight(x, y)
        st = self.state[y]
        d_new = msg.dist
        payload = msg.payload

        if payload and dist_lt(d_new, st.dist):
            # strictly shorter route through x
            st.dist = d_new
            st.table = {x: dict(payload)}
            self._slots.pop((y, x), None)
            self._broadcast(y, solicit=False, exclude=x)
            return

        if payload and dist_eq(d_new, st.dist):
            # another shortest route: replace whatever x supplied before
            if st.table.get(x) != payload:
                st.table[x] = dict(payload)
                self._broadcast(y, solicit=False, exclude=x)
            return

        if x in st.table:
            # x no longer supports y at distance st.dist; x itself may hold
            # tuples through y, so it is told as well
            del st.table[x]
            if not st.table:
                st.dist = INF
            self._broadcast(y, solicit=not st.table)
        elif msg.solicit and st.table and d_new >= st.dist + w:
            self._send(y, x, solicit=False)

    # -- graph mutation handlers -------------------------------------------

    def on_edge_added(self, u: int, v: int, w: Optional[float] = None) -> EventStats:
        self._ensure_node(u)
        self._ensure_node(v)
        self._send(u, v, solicit=False)
        self._send(v, u, solicit=False)
        return self._event("add", u, v)

    def on_edge_removed(self, u: int, v: int) -> EventStats:
        self._drop_slots_on(u, v)
        for a, b in ((u, v), (v, u)):
            st = self.state.get(a)
            if st is not None and b in st.table:
                del st.table[b]
                if not st.table:
                    st.dist = INF
                self._broadcast(a, solicit=not st.table)
        return self._event("remove", u, v)

    def on_node_removed(self, u: int, removed_edges: List[tuple]) -> EventStats:
        self.hubs.discard(u)
        self.state.pop(u, None)
        for key in [k for k in self._slots if u in k]:
            del self._slots[key]
        for e in removed_edges:
            v = e[1] if e[0] == u else e[0]
            st = self.state.get(v)
            if st is not None and u in st.table:
                del st.table[u]
                if not st.table:
                    st.dist = INF
                self._broadcast(v, solicit=not st.table)
        return self._event("remove_node", u, None)

    def promote_hub(self, u: int) -> EventStats:
        if u in self.hubs:
            raise EngineError(f"node {u} is already a hub")
        self._ensure_node(u)
        self._seed_hub(u)
        return self._event("promote", u, None)

    def demote_hub(self, u: int) -> EventStats:
        if u not in self.hubs:
            raise EngineError(f"node {u} is not a hub")
        self.hubs.discard(u)
        st = self.state[u]
        st.dist = INF
        st.table = {}
        self._broadcast(u, solicit=True)
        return self._event("demote", u, None)

    def _ensure_node(self, u: int) -> None:
        if u not in self.graph:
            raise GraphError(f"node {u} not in graph")
        if u not in self.state:
            self.state[u] = NodeState()

    # -- convenience mutators ------------------------------------------------

    def add_node(self, u: int) -> None:
        self.graph.add_node(u)
        self._ensure_node(u)

    def add_edge(self, u: int, v: int, w: float = 1.0) -> EventStats:
        existed = self.graph.has_edge(u, v)
        if existed and self.graph.weight(u, v) == float(w):
            return self.on_edge_added(u, v, w)
        if existed:
            self.graph.remove_edge(u, v)
            first = self.on_edge_removed(u, v)
            self.graph.add_edge(u, v, w)
            stats = self.on_edge_added(u, v, w)
            self.trace[-2:] = [EventStats("reweight", u, v, first.messages_processed + stats.messages_processed)]
            return self.trace[-1]
        self.graph.add_edge(u, v, w)
        return self.on_edge_added(u, v, w)

    def remove_edge(self, u: int, v: int) -> EventStats:
        self.graph.remove_edge(u, v)
        return self.on_edge_removed(u, v)

    def remove_node(self, u: int) -> EventStats:
        removed = self.graph.remove_node(u)
        return self.on_node_removed(u, removed)

    def sync_hubs(self, nodes: Iterable[int], threshold: int) -> int:
        """Promote/demote ``nodes`` against a degree threshold; returns messages spent."""
        spent = 0
        for u in sorted(set(nodes)):
            if u not in self.graph:
                continue
            should = self.graph.degree(u) >= threshold
            if should and u not in self.hubs:
                spent += self.promote_hub(u).messages_processed
            elif not should and u in self.hubs:
                spent += self.demote_hub(u).messages_processed
        return spent

    # -- extraction ------------------------------------------------------------

    def crisp_assignment(self) -> Dict[int, int]:
        labels = {}
        for u in sorted(self.state):
            weights = self.state[u].hub_weights()
            if not weights:
                labels[u] = UNASSIGNED
                continue
            best = max(weights.values())
            labels[u] = min(h for h, a in weights.items() if dist_eq(a, best))
        return labels

    def fuzzy_assignment(self) -> Dict[int, Dict[int, float]]:
        return {u: self.state[u].payload() if self.state[u].table else {} for u in sorted(self.state)}

    def snapshot(self) -> Dict[int, Tuple[float, Dict[Tuple[int, Optional[int]], float]]]:
        """``{node: (dist, {(hub, parent): alpha})}`` for comparison against the oracle."""
        return {
            u: (st.dist, {(h, p): a for h, p, a in st.tuples()}) for u, st in self.state.items()
        }

    def is_quiescent(self) -> bool:
        return not self._slots
