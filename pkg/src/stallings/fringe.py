"""Enumeration of all quotients of a core graph and the immediate-quotient DAG."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .core_graph import CoreGraph, find_morphism, merge_and_fold

__all__ = [
    "DEFAULT_NODE_CAP",
    "FringeCapExceeded",
    "FringeDag",
    "enumerate_fringe",
    "immediate_quotients",
    "distance",
    "distance_to",
    "nodes_by_rank",
]

DEFAULT_NODE_CAP = 100_000


class FringeCapExceeded(RuntimeError):
    """The number of discovered quotients exceeded the configured cap."""

    def __init__(self, cap: int, discovered: int):
        super().__init__(f"fringe exceeded node cap {cap} ({discovered} quotients discovered so far)")
        self.cap = cap
        self.discovered = discovered


def _pair_representatives(g: CoreGraph) -> list[tuple[int, int]]:
    """One vertex pair per class of pairs that force each other when merged.

    Identifying {x, y} identifies the endpoints of their equally-labeled
    edges and vice versa, so all pairs in a class give the same quotient.
    """
    n = g.vertex_count
    index = {pair: i for i, pair in enumerate(combinations(range(n), 2))}
    parent = list(range(len(index)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for row in g._succ:
        arrows = [(u, v) for u, v in enumerate(row) if v >= 0]
        for (u1, v1), (u2, v2) in combinations(arrows, 2):
            a = index[(min(u1, u2), max(u1, u2))]
            b = index[(min(v1, v2), max(v1, v2))]
            parent[find(a)] = find(b)
    reps: dict[int, tuple[int, int]] = {}
    for pair, i in index.items():
        reps.setdefault(find(i), pair)
    return list(reps.values())


def immediate_quotients(g: CoreGraph) -> list[CoreGraph]:
    """Distinct graphs obtained by merging one pair of vertices of ``g``."""
    seen: dict[CoreGraph, None] = {}
    for u, v in _pair_representatives(g):
        seen.setdefault(merge_and_fold(g, u, v), None)
    return list(seen)


@dataclass
class FringeDag:
    """All quotients of ``root`` with immediate-quotient edges.

    Nodes are CoreGraphs (canonical, hence hashable) listed in BFS order;
    ``distance`` is the length of a shortest chain of immediate quotients
    from the root.
    """

    root: CoreGraph
    nodes: list[CoreGraph] = field(default_factory=list)
    edges: set[tuple[CoreGraph, CoreGraph]] = field(default_factory=set)
    distances: dict[CoreGraph, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, g: CoreGraph) -> bool:
        return g in self.distances

    def distance(self, target: CoreGraph) -> int | None:
        return self.distances.get(target)

    def rank(self, node: CoreGraph) -> int:
        return node.rank

    def successors(self, node: CoreGraph) -> list[CoreGraph]:
        return [q for p, q in self.edges if p == node]

    def predecessors(self, node: CoreGraph) -> list[CoreGraph]:
        return self._predecessors.get(node, [])

    @cached_property
    def _predecessors(self) -> dict[CoreGraph, list[CoreGraph]]:
        preds: dict[CoreGraph, list[CoreGraph]] = {}
        for p, q in self.edges:
            preds.setdefault(q, []).append(p)
        return preds

    def nodes_by_rank(self) -> dict[int, list[CoreGraph]]:
        out: dict[int, list[CoreGraph]] = {}
        for g in self.nodes:
            out.setdefault(g.rank, []).append(g)
        return dict(sorted(out.items()))

    def _ids(self) -> dict[CoreGraph, int]:
        return {g: i for i, g in enumerate(self.nodes)}

    def sorted_edges(self) -> list[tuple[int, int]]:
        ids = self._ids()
        return sorted((ids[p], ids[q]) for p, q in self.edges)

    def to_dot(self) -> str:
        lines = ["digraph fringe {", "  node [shape=box];"]
        for i, g in enumerate(self.nodes):
            lines.append(f'  n{i} [label="#{i}\\nrank={g.rank}\\ndistance={self.distances[g]}"];')
        for a, b in self.sorted_edges():
            lines.append(f"  n{a} -> n{b} [style=dashed];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "nodes": [
                {
                    "id": i,
                    "canonical": g.serialize(),
                    "rank": g.rank,
                    "distance": self.distances[g],
                }
                for i, g in enumerate(self.nodes)
            ],
            "edges": [list(e) for e in self.sorted_edges()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def enumerate_fringe(root: CoreGraph, cap: int = DEFAULT_NODE_CAP) -> FringeDag:
    """Breadth-first closure of ``root`` under immediate quotients."""
    dag = FringeDag(root, [root], set(), {root: 0})
    queue = deque([root])
    while queue:
        g = queue.popleft()
        d = dag.distances[g]
        for q in immediate_quotients(g):
            dag.edges.add((g, q))
            if q not in dag.distances:
                dag.distances[q] = d + 1
                dag.nodes.append(q)
                if len(dag.nodes) > cap:
                    raise FringeCapExceeded(cap, len(dag.nodes))
                queue.append(q)
    return dag


def distance(dag: FringeDag, target: CoreGraph) -> int | None:
    return dag.distance(target)


def nodes_by_rank(dag: FringeDag) -> dict[int, list[CoreGraph]]:
    return dag.nodes_by_rank()


def distance_to(root: CoreGraph, target: CoreGraph, cap: int = DEFAULT_NODE_CAP) -> int | None:
    """Length of a shortest chain of immediate quotients from ``root`` to ``target``.

    Every graph on such a chain maps onto ``target``, so only pairs of
    vertices lying in the same fiber of that map need to be merged.  Returns
    None when ``root`` does not cover ``target``.
    """
    m = find_morphism(root, target)
    if m is None or not m.is_surjective():
        return None
    dist = {root: 0}
    queue = deque([root])
    while queue:
        g = queue.popleft()
        if g == target:
            return dist[g]
        fibers = find_morphism(g, target).fibers()
        for fiber in fibers.values():
            for u, v in combinations(fiber, 2):
                q = merge_and_fold(g, u, v)
                if q not in dist:
                    dist[q] = dist[g] + 1
                    if len(dist) > cap:
                        raise FringeCapExceeded(cap, len(dist))
                    queue.append(q)
    raise AssertionError("target covered but not reached")  # pragma: no cover
