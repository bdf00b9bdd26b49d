"""Path semantics and shortest-path / reachability queries.

Two traversal models run over the same subject-keyed adjacency index:

* triple-node model (``ldm3n``): expanding a node relaxes, for each stored
  pair (pred, obj) under it, the predicate at distance +1 and the object at
  distance +2 (the predicate sits between them). Distances count edges of
  the triple-node graph, and a walk may only use a terminal edge right
  after the matching initial edge of the same triple.
* labeled-arc model (``nlan``): expanding a node relaxes each object at
  distance +1 and never visits predicates, so anything connected only
  through a predicate node is unreachable.

Each visited entry remembers the exact triple through which the node was
relaxed, not just the previous node id. A predicate node shared by several
triples can hold a best-distance entry from one triple while some object is
reached through another; reconstructing through node-keyed previous
pointers alone could then splice an initial edge of one triple onto the
terminal edge of another. Keeping the relaxing triple pins reconstruction
to whole triples, so returned paths always satisfy the pairing constraint.
"""

from __future__ import annotations

import enum
import heapq
import time
from dataclasses import dataclass

from .dictionary import is_literal_id
from .errors import UnknownNode, UnknownTriple
from .graph_model import EdgeKind, Ldm3nGraph


class Model(enum.Enum):
    LDM3N = "ldm3n"
    NLAN = "nlan"


class PathStatus(enum.Enum):
    FOUND = "found"
    UNREACHABLE = "unreachable"


class Role(enum.Enum):
    SOURCE = 0
    PRED = 1
    OBJ = 2


@dataclass(slots=True)
class VisitedEntry:
    node: int
    best_distance: int
    previous: int  # 0 for the source
    role: Role
    triple: tuple[int, int, int] | None  # the triple that relaxed this node


@dataclass(slots=True)
class PathQueryResult:
    status: PathStatus
    distance: int | None
    resource_path: list[int] | None
    triple_path: list[tuple[int, int, int]] | None
    nodes_explored: int
    elapsed_s: float

    @property
    def found(self) -> bool:
        return self.status is PathStatus.FOUND


def _check_endpoints(store, source: int, target: int) -> None:
    if not store.is_issued(source):
        raise UnknownNode(f"source id {source} was never issued")
    if not store.is_issued(target):
        raise UnknownNode(f"target id {target} was never issued")


def _dijkstra(store, source: int, target: int, model: Model, max_dist: int | None) -> PathQueryResult:
    started = time.perf_counter()
    _check_endpoints(store, source, target)

    visited: dict[int, VisitedEntry] = {
        source: VisitedEntry(source, 0, 0, Role.SOURCE, None)
    }
    heap: list[tuple[int, int]] = [(0, source)]
    explored = 0

    def update(node: int, dist: int, prev: int, role: Role, triple: tuple[int, int, int]) -> bool:
        entry = visited.get(node)
        if entry is None:
            visited[node] = VisitedEntry(node, dist, prev, role, triple)
            return True
        if dist < entry.best_distance:
            entry.best_distance = dist
            entry.previous = prev
            entry.role = role
            entry.triple = triple
            return True
        return False

    while heap:
        dis, curid = heapq.heappop(heap)
        if dis > visited[curid].best_distance:
            continue  # stale queue entry
        if max_dist is not None and dis > max_dist:
            break
        explored += 1
        if curid == target:
            nodes, triples = _reconstruct(visited, source, target, model)
            return PathQueryResult(
                PathStatus.FOUND, dis, nodes, triples, explored, time.perf_counter() - started
            )
        if is_literal_id(curid):
            continue  # literals are sinks; skip the index probe
        for pred, obj in store.neighbors(curid):
            triple = (curid, pred, obj)
            if model is Model.LDM3N:
                if update(pred, dis + 1, curid, Role.PRED, triple):
                    heapq.heappush(heap, (dis + 1, pred))
                if update(obj, dis + 2, pred, Role.OBJ, triple):
                    heapq.heappush(heap, (dis + 2, obj))
            else:
                if update(obj, dis + 1, curid, Role.OBJ, triple):
                    heapq.heappush(heap, (dis + 1, obj))

    return PathQueryResult(
        PathStatus.UNREACHABLE, None, None, None, explored, time.perf_counter() - started
    )


def _reconstruct(
    visited: dict[int, VisitedEntry], source: int, target: int, model: Model
) -> tuple[list[int], list[tuple[int, int, int]]]:
    rev_nodes: list[int] = []
    rev_triples: list[tuple[int, int, int]] = []
    cur = target
    while cur != source:
        entry = visited[cur]
        s, p, o = entry.triple
        if entry.role is Role.OBJ:
            rev_nodes.append(o)
            if model is Model.LDM3N:
                rev_nodes.append(p)
        else:
            rev_nodes.append(p)
        rev_triples.append((s, p, o))
        cur = s
    rev_nodes.append(source)
    rev_nodes.reverse()
    rev_triples.reverse()
    return rev_nodes, rev_triples


def dijkstra_ldm3n(store, source: int, target: int, max_dist: int | None = None) -> PathQueryResult:
    """Shortest walk on the triple-node graph, with the paired-edge constraint.

    Distances are edge counts: +1 to enter a triple's predicate, +2 to pass
    through to its object. The source must be issued; literal ids behave as
    sinks. Popping the target (including source == target at distance 0)
    ends the search; an exhausted queue means unreachable.
    """
    return _dijkstra(store, source, target, Model.LDM3N, max_dist)


def dijkstra_nlan(store, source: int, target: int, max_dist: int | None = None) -> PathQueryResult:
    """Shortest walk counting one hop per triple, predicates never visited."""
    return _dijkstra(store, source, target, Model.NLAN, max_dist)


def shortest_path(
    store, source: int, target: int, model: Model, max_dist: int | None = None
) -> PathQueryResult:
    return _dijkstra(store, source, target, model, max_dist)


def reachable(
    store, source: int, target: int, model: Model, max_dist: int | None = None
) -> tuple[bool, PathQueryResult]:
    """True iff the model's shortest-path search finds the target.

    Same traversal as the path query, distance bookkeeping retained, so the
    stats (and the witness path) come along for free.
    """
    result = _dijkstra(store, source, target, model, max_dist)
    return result.found, result


def validate_resource_path(g: Ldm3nGraph, nodes: list[int]) -> bool:
    """Check a node sequence against the triple-node path rules.

    Each consecutive pair must be joined by an edge, and any terminal edge
    used must directly follow its paired initial edge (a terminal edge can
    never open the path). Parallel edges between the same node pair are
    resolved by searching for *some* consistent edge assignment.
    """
    if not nodes:
        return False
    if any(n not in g.nodes for n in nodes):
        return False
    if len(nodes) == 1:
        return True

    tau_inv = {term: init for init, term in g.tau.items()}
    # prev holds the edges usable for the previous step under some valid
    # choice of prefix; an initial edge only needs the prefix to exist, a
    # terminal edge needs its own paired initial edge chosen right before.
    prev: set[int] = set()
    for k in range(len(nodes) - 1):
        current: set[int] = set()
        for e in g.edges_between(nodes[k], nodes[k + 1]):
            if e.kind is EdgeKind.INITIAL:
                if k == 0 or prev:
                    current.add(e.id)
            elif k > 0 and tau_inv.get(e.id) in prev:
                current.add(e.id)
        if not current:
            return False
        prev = current
    return True


def validate_triple_path(store, triples: list[tuple[int, int, int]]) -> bool:
    """Check the chaining rule: each triple's subject is the previous
    triple's predicate or object. Every listed triple must exist in the
    store (UnknownTriple otherwise)."""
    for t in triples:
        if not store.contains(*t):
            raise UnknownTriple(f"triple {t} not in store")
    for (s1, p1, o1), (s2, _, _) in zip(triples, triples[1:]):
        if s2 != p1 and s2 != o1:
            return False
    return True
