"""Undirected labeled graphs with dense integer vertex ids.

Vertices are dense indices ``0..n-1`` with a side table of distinct string
labels; every algorithm in this package works on indices and uses labels only
at the I/O boundary. Adjacency is kept both as a frozen set of ``(lo, hi)``
pairs and as per-vertex neighbor bitmasks so membership tests are O(1).
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

__all__ = [
    "GraphError",
    "DuplicateLabel",
    "UnknownEndpoint",
    "SelfLoop",
    "LabeledGraph",
    "build_graph",
    "build_wheel",
    "induced_subgraph",
    "max_degree_vertex",
    "is_proper_coloring",
    "graph_to_json",
    "graph_from_json",
    "graph_to_dot",
]


class GraphError(Exception):
    """Base class for graph construction errors."""


class DuplicateLabel(GraphError):
    pass


class UnknownEndpoint(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class LabeledGraph:
    """Simple undirected graph; immutable after construction.

    ``edges`` holds each edge once as ``(lo, hi)`` with ``lo < hi``.
    ``adj[v]`` is a bitmask of the neighbors of ``v``.
    """

    __slots__ = ("labels", "edges", "index", "adj")

    def __init__(self, labels: Sequence[str], edges: Iterable[tuple[int, int]]):
        labels = tuple(labels)
        index: dict[str, int] = {}
        for i, lab in enumerate(labels):
            if lab in index:
                raise DuplicateLabel(lab)
            index[lab] = i
        n = len(labels)
        norm = set()
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n):
                raise UnknownEndpoint(f"vertex id out of range: {(a, b)}")
            if a == b:
                raise SelfLoop(labels[a])
            norm.add((a, b) if a < b else (b, a))
        adj = [0] * n
        for a, b in norm:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        self.labels = labels
        self.edges = frozenset(norm)
        self.index = index
        self.adj = tuple(adj)

    @property
    def n(self) -> int:
        return len(self.labels)

    def has_edge(self, a: int, b: int) -> bool:
        return a != b and bool(self.adj[a] >> b & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        mask, out = self.adj[v], []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out

    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return self.labels == other.labels and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.labels, self.edges))

    def __repr__(self) -> str:
        return f"LabeledGraph(n={self.n}, m={len(self.edges)})"


def build_graph(labels: Sequence[str], edges: Iterable[tuple[str, str]]) -> LabeledGraph:
    """Build a graph from labels and label-pair edges; duplicates collapse."""
    idx: dict[str, int] = {}
    for i, lab in enumerate(labels):
        if lab in idx:
            raise DuplicateLabel(lab)
        idx[lab] = i
    pairs = []
    for a, b in edges:
        if a not in idx:
            raise UnknownEndpoint(a)
        if b not in idx:
            raise UnknownEndpoint(b)
        pairs.append((idx[a], idx[b]))
    return LabeledGraph(labels, pairs)


def build_wheel(m: int) -> LabeledGraph:
    """Cycle c0..c{m-1} plus hub h adjacent to every rim vertex; 2m edges."""
    if m < 3:
        raise ValueError(f"wheel needs rim length >= 3, got {m}")
    labels = [f"c{i}" for i in range(m)] + ["h"]
    edges = [(i, (i + 1) % m) for i in range(m)] + [(i, m) for i in range(m)]
    return LabeledGraph(labels, edges)


def induced_subgraph(g: LabeledGraph, keep: Iterable[int]) -> LabeledGraph:
    """Subgraph on ``keep``, reindexed in ascending id order, labels kept."""
    kept = sorted(set(keep))
    for v in kept:
        if not 0 <= v < g.n:
            raise UnknownEndpoint(f"vertex id {v}")
    remap = {v: i for i, v in enumerate(kept)}
    labels = [g.labels[v] for v in kept]
    edges = [(remap[a], remap[b]) for a, b in g.edges if a in remap and b in remap]
    return LabeledGraph(labels, edges)


def max_degree_vertex(g: LabeledGraph) -> int:
    if g.n == 0:
        raise ValueError("empty graph has no max-degree vertex")
    # ties break to the smallest index
    return max(range(g.n), key=lambda v: (g.degree(v), -v))


def is_proper_coloring(g: LabeledGraph, colors: Sequence[int]) -> bool:
    if len(colors) != g.n:
        raise ValueError(f"coloring covers {len(colors)} of {g.n} vertices")
    return all(colors[a] != colors[b] for a, b in g.edges)


def graph_to_json(g: LabeledGraph) -> dict:
    """Canonical JSON object: labels sorted, edges as sorted label pairs."""
    labels = sorted(g.labels)
    edges = sorted(sorted((g.labels[a], g.labels[b])) for a, b in g.edges)
    return {"labels": labels, "edges": edges}


def graph_from_json(obj: Mapping) -> LabeledGraph:
    labels = list(obj["labels"])
    return build_graph(labels, [tuple(e) for e in obj["edges"]])


def graph_to_dot(g: LabeledGraph, name: str = "g") -> str:
    lines = [f"graph {name} {{"]
    for i, lab in enumerate(g.labels):
        lines.append(f'  v{i} [label="{lab}"];')
    for a, b in g.edge_list():
        lines.append(f"  v{a} -- v{b};")
    lines.append("}")
    return "\n".join(lines)
