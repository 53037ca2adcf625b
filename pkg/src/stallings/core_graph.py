"""Stallings core graphs of finitely generated subgroups of F_k.

Graphs are kept in a canonical vertex numbering: a breadth-first search from
the basepoint (vertex 0) that visits, at each vertex, the neighbours along
label 1 outgoing, label 1 incoming, label 2 outgoing, and so on.  Because a
folded graph has at most one edge per (label, direction) at a vertex, this
numbering depends only on the isomorphism class of the pointed labeled graph,
and two core graphs are equal as Python objects iff they describe the same
subgroup.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .words import GeneratingSet, Word

__all__ = [
    "CoreGraph",
    "Morphism",
    "Trace",
    "build_core_graph",
    "wedge_of_loops",
    "trivial_graph",
    "rank",
    "trace",
    "contains",
    "find_morphism",
    "image_subgraph",
    "merge_and_fold",
    "canonical_key",
    "handle_number",
]


class _Folder:
    """Union-find over vertices with one neighbour per (label, direction) slot.

    Slot ``a`` of a vertex holds the endpoint reached by reading letter ``a``:
    ``+j`` follows the outgoing j-edge, ``-j`` the incoming one backwards.
    Any attempt to give a class two different neighbours in one slot merges
    those neighbours, so the structure is always folded between calls.
    """

    def __init__(self, vertex_count: int = 1):
        self.parent = list(range(vertex_count))
        self.slots: list[dict[int, int] | None] = [{} for _ in range(vertex_count)]

    @classmethod
    def from_graph(cls, g: "CoreGraph") -> "_Folder":
        f = cls.__new__(cls)
        f.parent = list(range(g.vertex_count))
        f.slots = [dict(t) for t in g._slot_table]
        return f

    def new_vertex(self) -> int:
        self.parent.append(len(self.parent))
        self.slots.append({})
        return len(self.parent) - 1

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def add_edge(self, u: int, j: int, v: int) -> None:
        u, v = self.find(u), self.find(v)
        out, inc = self.slots[u].get(j), self.slots[v].get(-j)
        if out is not None:
            self.merge(out, v)
        elif inc is not None:
            self.merge(inc, u)
        else:
            self.slots[u][j] = v
            self.slots[v][-j] = u

    def merge(self, a: int, b: int) -> None:
        pending = [(a, b)]
        while pending:
            a, b = pending.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            if len(self.slots[a]) < len(self.slots[b]):
                a, b = b, a
            self.parent[b] = a
            slots_a, slots_b = self.slots[a], self.slots[b]
            self.slots[b] = None
            for slot, nb in slots_b.items():
                existing = slots_a.get(slot)
                if existing is None:
                    slots_a[slot] = nb
                else:
                    pending.append((existing, nb))

    def graph(self, ambient_rank: int, basepoint: int = 0) -> "CoreGraph":
        root = self.find(basepoint)
        number = {root: 0}
        order = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            slots = self.slots[u]
            for j in range(1, ambient_rank + 1):
                for a in (j, -j):
                    nb = slots.get(a)
                    if nb is None:
                        continue
                    nb = self.find(nb)
                    if nb not in number:
                        number[nb] = len(order)
                        order.append(nb)
                        queue.append(nb)
        succ = []
        for j in range(1, ambient_rank + 1):
            row = []
            for u in order:
                nb = self.slots[u].get(j)
                row.append(-1 if nb is None else number[self.find(nb)])
            succ.append(tuple(row))
        return CoreGraph(ambient_rank, len(order), tuple(succ))


class Trace(NamedTuple):
    """Result of reading a word from the basepoint.

    ``vertex`` is the final vertex, or None when the walk got stuck;
    ``position`` is the number of letters consumed.
    """

    vertex: int | None
    position: int


class CoreGraph:
    """A pointed, folded, edge-labeled graph; basepoint is vertex 0.

    Instances are immutable and always stored in canonical numbering, so
    ``==`` and ``hash`` identify subgroups.  Use :func:`build_core_graph` or
    :meth:`from_edges` rather than the constructor.
    """

    def __init__(self, ambient_rank: int, vertex_count: int, succ: tuple[tuple[int, ...], ...]):
        self.ambient_rank = ambient_rank
        self.vertex_count = vertex_count
        self._succ = succ

    @classmethod
    def from_edges(
        cls,
        ambient_rank: int,
        edges: Iterable[tuple[int, int, int]],
        vertex_count: int | None = None,
    ) -> "CoreGraph":
        """Build from ``(label, origin, terminus)`` triples, folding as needed.

        Vertex 0 is the basepoint.  Vertices unreachable from it are dropped.
        """
        edges = list(edges)
        n = vertex_count if vertex_count is not None else 1 + max(
            (max(u, v) for _, u, v in edges), default=0
        )
        folder = _Folder(n)
        for j, u, v in edges:
            if not 1 <= j <= ambient_rank:
                raise ValueError(f"label {j} outside 1..{ambient_rank}")
            folder.add_edge(u, j, v)
        return folder.graph(ambient_rank)

    # ---- counts -------------------------------------------------------

    @cached_property
    def _pred(self) -> tuple[tuple[int, ...], ...]:
        pred = []
        for row in self._succ:
            p = [-1] * self.vertex_count
            for u, v in enumerate(row):
                if v >= 0:
                    p[v] = u
            pred.append(tuple(p))
        return tuple(pred)

    @cached_property
    def edge_counts(self) -> tuple[int, ...]:
        """Number of j-edges for j = 1..k."""
        return tuple(sum(1 for v in row if v >= 0) for row in self._succ)

    @property
    def edge_count(self) -> int:
        return sum(self.edge_counts)

    @property
    def rank(self) -> int:
        return self.edge_count - self.vertex_count + 1

    def follow(self, u: int, letter: int) -> int | None:
        """Endpoint of reading ``letter`` at ``u``, or None."""
        if letter > 0:
            v = self._succ[letter - 1][u]
        else:
            v = self._pred[-letter - 1][u]
        return None if v < 0 else v

    @cached_property
    def _slot_table(self) -> tuple[dict[int, int], ...]:
        table: list[dict[int, int]] = [{} for _ in range(self.vertex_count)]
        for j, row in enumerate(self._succ, start=1):
            for u, v in enumerate(row):
                if v >= 0:
                    table[u][j] = v
                    table[v][-j] = u
        return tuple(table)

    def _slots(self, u: int) -> Iterable[tuple[int, int]]:
        slots = self._slot_table[u]
        for j in range(1, self.ambient_rank + 1):
            for a in (j, -j):
                if a in slots:
                    yield a, slots[a]

    def edges(self) -> list[tuple[int, int, int]]:
        """All edges as ``(label, origin, terminus)`` in canonical order."""
        return [
            (j, u, v)
            for j, row in enumerate(self._succ, start=1)
            for u, v in enumerate(row)
            if v >= 0
        ]

    def degree(self, u: int) -> int:
        return sum(1 for _ in self._slots(u))

    # ---- words --------------------------------------------------------

    def trace(self, w: Word | Sequence[int], start: int = 0) -> Trace:
        u = start
        for i, a in enumerate(w):
            nxt = self.follow(u, a)
            if nxt is None:
                return Trace(None, i)
            u = nxt
        return Trace(u, len(w))

    def contains(self, w: Word) -> bool:
        return self.trace(w).vertex == 0

    def __contains__(self, w: Word) -> bool:
        return self.contains(w)

    @cached_property
    def _tree(self) -> tuple[tuple[Word, ...], frozenset[tuple[int, int, int]]]:
        paths: list[Word | None] = [None] * self.vertex_count
        paths[0] = Word()
        tree = set()
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for a, v in self._slots(u):
                if paths[v] is None:
                    paths[v] = paths[u] * Word((a,))
                    tree.add((a, u, v) if a > 0 else (-a, v, u))
                    queue.append(v)
        return tuple(paths), frozenset(tree)

    def path_word(self, v: int) -> Word:
        """Reduced word of a shortest path from the basepoint to ``v``."""
        return self._tree[0][v]

    def generators(self) -> list[Word]:
        """A basis of the subgroup: one word per edge outside a BFS spanning tree."""
        paths, tree = self._tree
        return [
            paths[u] * Word((j,)) * paths[v].inverse()
            for j, u, v in self.edges()
            if (j, u, v) not in tree
        ]

    def generating_set(self) -> GeneratingSet:
        return GeneratingSet(self.ambient_rank, tuple(self.generators()))

    # ---- identity -----------------------------------------------------

    def serialize(self) -> str:
        """Canonical text form: ``k=<k> v=<v>`` then one ``j u v`` line per edge."""
        lines = [f"k={self.ambient_rank} v={self.vertex_count}"]
        lines.extend(f"{j} {u} {v}" for j, u, v in self.edges())
        return "\n".join(lines) + "\n"

    @cached_property
    def canonical_key(self) -> bytes:
        return self.serialize().encode("ascii")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoreGraph):
            return NotImplemented
        return self.ambient_rank == other.ambient_rank and self._succ == other._succ

    def __hash__(self) -> int:
        return hash((self.ambient_rank, self._succ))

    def __repr__(self) -> str:
        return (
            f"<CoreGraph k={self.ambient_rank} v={self.vertex_count} "
            f"e={self.edge_count} rank={self.rank}>"
        )

    def check_invariants(self) -> None:
        """Raise AssertionError unless this is a valid core graph."""
        for row in self._succ:
            targets = [v for v in row if v >= 0]
            assert len(targets) == len(set(targets)), "two j-edges share a terminus"
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for _, v in self._slots(u):
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        assert len(seen) == self.vertex_count, "graph is disconnected"
        for u in range(1, self.vertex_count):
            assert self.degree(u) >= 2, f"vertex {u} has degree < 2"

    # ---- output -------------------------------------------------------

    def to_dot(self, name: str = "core") -> str:
        lines = [f"digraph {name} {{"]
        lines.append('  0 [shape=doublecircle, label="⊗"];')
        for u in range(1, self.vertex_count):
            lines.append(f'  {u} [shape=circle, label="{u}"];')
        for j, u, v in self.edges():
            lines.append(f'  {u} -> {v} [label="x{j}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "ambient_rank": self.ambient_rank,
            "vertex_count": self.vertex_count,
            "edge_counts": list(self.edge_counts),
            "rank": self.rank,
            "edges": [list(e) for e in self.edges()],
            "canonical": self.serialize(),
            "generators": [str(w) for w in self.generators()],
        }


def wedge_of_loops(ambient_rank: int, labels: Iterable[int] | None = None) -> CoreGraph:
    """Core graph of the subgroup generated by the given basis letters (default all)."""
    labels = range(1, ambient_rank + 1) if labels is None else labels
    return CoreGraph.from_edges(ambient_rank, [(j, 0, 0) for j in labels], vertex_count=1)


def trivial_graph(ambient_rank: int) -> CoreGraph:
    return CoreGraph.from_edges(ambient_rank, [], vertex_count=1)


def build_core_graph(gens: GeneratingSet | Iterable[Word], ambient_rank: int | None = None) -> CoreGraph:
    """Fold the bouquet of generator loops into the core graph of the subgroup.

    >>> from stallings.words import parse_generating_set
    >>> build_core_graph(parse_generating_set("a b A B", 2))
    <CoreGraph k=2 v=4 e=4 rank=1>
    """
    if isinstance(gens, GeneratingSet):
        k = gens.ambient_rank if ambient_rank is None else ambient_rank
        words = list(gens.generators)
    else:
        words = [w if isinstance(w, Word) else Word(tuple(w)) for w in gens]
        if ambient_rank is None:
            raise TypeError("ambient_rank is required when passing bare words")
        k = ambient_rank
    folder = _Folder(1)
    for w in words:
        if not w:
            continue
        u = 0
        for i, a in enumerate(w):
            v = 0 if i == len(w) - 1 else folder.new_vertex()
            if a > 0:
                folder.add_edge(u, a, v)
            else:
                folder.add_edge(v, -a, u)
            u = v
    return folder.graph(k)


def rank(g: CoreGraph) -> int:
    return g.rank


def trace(g: CoreGraph, w: Word) -> Trace:
    return g.trace(w)


def contains(g: CoreGraph, w: Word) -> bool:
    return g.contains(w)


def canonical_key(g: CoreGraph) -> bytes:
    return g.canonical_key


@dataclass(frozen=True)
class Morphism:
    source: CoreGraph
    target: CoreGraph
    vertex_map: tuple[int, ...]

    def edge_image(self) -> set[tuple[int, int, int]]:
        m = self.vertex_map
        return {(j, m[u], m[v]) for j, u, v in self.source.edges()}

    def is_surjective(self) -> bool:
        return (
            len(set(self.vertex_map)) == self.target.vertex_count
            and len(self.edge_image()) == self.target.edge_count
        )

    def is_embedding(self) -> bool:
        return (
            len(set(self.vertex_map)) == self.source.vertex_count
            and len(self.edge_image()) == self.source.edge_count
        )

    def fibers(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for u, t in enumerate(self.vertex_map):
            out.setdefault(t, []).append(u)
        return out


def find_morphism(source: CoreGraph, target: CoreGraph) -> Morphism | None:
    """The unique basepoint-preserving labeled graph map, if one exists.

    Exists iff the source subgroup is contained in the target subgroup.
    """
    if source.ambient_rank != target.ambient_rank:
        raise ValueError("graphs live in free groups of different rank")
    image = [-1] * source.vertex_count
    image[0] = 0
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for a, v in source._slots(u):
            t = target.follow(image[u], a)
            if t is None:
                return None
            if image[v] < 0:
                image[v] = t
                queue.append(v)
            elif image[v] != t:
                return None
    return Morphism(source, target, tuple(image))


def image_subgraph(m: Morphism) -> CoreGraph:
    """The subgraph of the target spanned by the image of the morphism."""
    return CoreGraph.from_edges(m.target.ambient_rank, sorted(m.edge_image()), m.target.vertex_count)


def merge_and_fold(g: CoreGraph, u: int, v: int) -> CoreGraph:
    """Identify vertices ``u`` and ``v`` of ``g`` and fold: an immediate quotient."""
    if u == v:
        raise ValueError("merge_and_fold needs two distinct vertices")
    for x in (u, v):
        if not 0 <= x < g.vertex_count:
            raise IndexError(f"vertex {x} out of range")
    folder = _Folder.from_graph(g)
    folder.merge(u, v)
    return folder.graph(g.ambient_rank)


def quotient_by_merges(g: CoreGraph, pairs: Iterable[tuple[int, int]]) -> CoreGraph:
    """Identify several pairs of vertices of ``g`` at once, then fold."""
    folder = _Folder.from_graph(g)
    for u, v in pairs:
        folder.merge(u, v)
    return folder.graph(g.ambient_rank)


def handle_number(g: CoreGraph, w: Word) -> int:
    """Length of the untraceable middle of ``w`` once the longest prefix
    readable from the basepoint and the longest suffix readable into it are
    removed; 0 if those two overlap.  Requires ``w`` not in the subgroup.
    """
    if g.contains(w):
        raise ValueError(f"{w} lies in the subgroup; handle number is undefined")
    prefix = g.trace(w).position
    suffix = g.trace(w.inverse()).position
    return max(len(w) - prefix - suffix, 0)
