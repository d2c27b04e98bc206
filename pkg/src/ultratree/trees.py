"""Finite simple trees: validation, paths, degrees, diameter, classification,
and exhaustive enumeration over labeled vertex sets.

Vertex identifiers are arbitrary non-empty strings. A ``Tree`` keeps its
vertices in construction order; that order is meaningful, it becomes the
point order of any metric space generated from the tree. Edges are stored
sorted, as sorted pairs, so structural equality is well defined.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import (
    BadEdge,
    CapExceeded,
    EmptyVertexSet,
    HasCycle,
    NotConnected,
    SamePoint,
    UnknownVertex,
)

DEFAULT_ENUMERATION_CAP = 8


@dataclass(frozen=True)
class Tree:
    """An immutable finite tree. Build instances through validate_tree."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        norm = sorted({(a, b) if a <= b else (b, a) for a, b in self.edges})
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def order(self) -> int:
        return len(self.vertices)

    @cached_property
    def _adjacency(self) -> dict[str, tuple[str, ...]]:
        nbrs: dict[str, list[str]] = {v: [] for v in self.vertices}
        for a, b in self.edges:
            nbrs[a].append(b)
            nbrs[b].append(a)
        return {v: tuple(sorted(ns)) for v, ns in nbrs.items()}

    def __contains__(self, vertex: str) -> bool:
        return vertex in self._adjacency


class TreeKind(enum.Enum):
    STAR = "Star"
    DOUBLE_STAR = "DoubleStar"
    OTHER = "Other"


@dataclass(frozen=True)
class TreeClass:
    """Classification result: the tag plus the high-degree vertices backing it.

    ``centers`` is empty for Other (and for trees with no vertex of degree
    two or more), a single vertex for a proper star, and exactly two
    adjacent vertices for a double star.
    """

    tag: TreeKind
    centers: tuple[str, ...]


def validate_tree(vertices: Iterable[str], edges: Iterable) -> Tree:
    """Check that (vertices, edges) forms a tree and return it.

    Accepts edges as any two-element collections, in either vertex order;
    duplicates collapse. Raises EmptyVertexSet, BadEdge, HasCycle, or
    NotConnected. A tree on n vertices must have exactly n - 1 edges and be
    connected; those two facts together rule out cycles. When the edge count
    is right but the graph splits into components (each then carrying a
    cycle), NotConnected is reported.
    """
    verts: list[str] = []
    seen: set[str] = set()
    for v in vertices:
        if not isinstance(v, str) or not v:
            raise BadEdge(f"vertex ids must be non-empty strings, got {v!r}")
        if v not in seen:
            seen.add(v)
            verts.append(v)
    if not verts:
        raise EmptyVertexSet("a tree needs at least one vertex")

    norm_edges: set[tuple[str, str]] = set()
    for edge in edges:
        pair = tuple(edge)
        if len(pair) != 2:
            raise BadEdge(f"edge {pair!r} is not a two-element set", pair)
        a, b = pair
        if a == b:
            raise BadEdge(f"self-loop at {a!r}", (a,))
        if a not in seen or b not in seen:
            raise BadEdge(f"edge ({a!r}, {b!r}) references an unknown vertex", (a, b))
        norm_edges.add((a, b) if a <= b else (b, a))

    n = len(verts)
    if len(norm_edges) > n - 1:
        raise HasCycle(f"{len(norm_edges)} edges on {n} vertices, a tree has {n - 1}")
    if len(norm_edges) < n - 1:
        raise NotConnected(f"{len(norm_edges)} edges cannot connect {n} vertices")

    if n > 1:
        adj: dict[str, list[str]] = {v: [] for v in verts}
        for a, b in norm_edges:
            adj[a].append(b)
            adj[b].append(a)
        reached = {verts[0]}
        queue = deque([verts[0]])
        while queue:
            for u in adj[queue.popleft()]:
                if u not in reached:
                    reached.add(u)
                    queue.append(u)
        if len(reached) != n:
            raise NotConnected(f"{n - len(reached)} vertices unreachable from {verts[0]!r}")

    return Tree(tuple(verts), tuple(norm_edges))


def _require_vertex(tree: Tree, v: str) -> None:
    if v not in tree._adjacency:
        raise UnknownVertex(f"vertex {v!r} is not in the tree", (v,))


def unique_path(tree: Tree, u: str, v: str) -> tuple[str, ...]:
    """The unique simple path from u to v, endpoints included."""
    _require_vertex(tree, u)
    _require_vertex(tree, v)
    if u == v:
        raise SamePoint(f"no path from {u!r} to itself", (u,))
    adj = tree._adjacency
    parent = {u: u}
    queue = deque([u])
    while queue:
        w = queue.popleft()
        if w == v:
            break
        for x in adj[w]:
            if x not in parent:
                parent[x] = w
                queue.append(x)
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    path.reverse()
    return tuple(path)


def degree(tree: Tree, v: str) -> int:
    _require_vertex(tree, v)
    return len(tree._adjacency[v])


def high_degree_vertices(tree: Tree) -> set[str]:
    """Vertices of degree two or more."""
    return {v for v, ns in tree._adjacency.items() if len(ns) >= 2}


def _farthest(tree: Tree, start: str) -> tuple[str, int]:
    adj = tree._adjacency
    dist = {start: 0}
    queue = deque([start])
    last = start
    while queue:
        w = queue.popleft()
        last = w
        for x in adj[w]:
            if x not in dist:
                dist[x] = dist[w] + 1
                queue.append(x)
    return last, dist[last]


def longest_path_length(tree: Tree) -> int:
    """Edge count of a longest simple path (0 for the one-vertex tree).

    Two breadth-first sweeps: the farthest vertex from any start is an
    endpoint of some longest path, and the farthest vertex from that
    endpoint realizes the full length.
    """
    if tree.order == 1:
        return 0
    end, _ = _farthest(tree, tree.vertices[0])
    _, length = _farthest(tree, end)
    return length


def classify(tree: Tree) -> TreeClass:
    """Star / DoubleStar / Other by the number of high-degree vertices."""
    high = sorted(high_degree_vertices(tree))
    if len(high) <= 1:
        return TreeClass(TreeKind.STAR, tuple(high))
    if len(high) == 2:
        return TreeClass(TreeKind.DOUBLE_STAR, tuple(high))
    return TreeClass(TreeKind.OTHER, ())


def _prufer_edges(seq: tuple[int, ...], n: int) -> list[tuple[int, int]]:
    """Decode a length n-2 sequence over 0..n-1 into sorted edge pairs."""
    deg = [1] * n
    for v in seq:
        deg[v] += 1
    edges: list[tuple[int, int]] = []
    for v in seq:
        leaf = min(i for i in range(n) if deg[i] == 1)
        edges.append((leaf, v) if leaf < v else (v, leaf))
        deg[leaf] -= 1
        deg[v] -= 1
    u, w = (i for i in range(n) if deg[i] == 1)
    edges.append((u, w) if u < w else (w, u))
    return edges


def _vertex_names(n: int) -> tuple[str, ...]:
    return tuple(f"v{i + 1}" for i in range(n))


def enumerate_trees(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[Tree]:
    """Every tree on vertices v1..vn, one per Prufer sequence.

    Yields n**(n-2) trees for n >= 2 (one for n in {1, 2}), in lexicographic
    sequence order. Distinct vertex labelings count as distinct trees; no
    isomorphism folding happens here. Raises CapExceeded when n is outside
    1..cap before any work is done.
    """
    if n < 1 or n > cap:
        raise CapExceeded(f"order {n} is outside 1..{cap}")
    return _iter_trees(n)


def _iter_trees(n: int) -> Iterator[Tree]:
    names = _vertex_names(n)
    if n == 1:
        yield validate_tree(names, [])
        return
    if n == 2:
        yield validate_tree(names, [names])
        return
    for seq in itertools.product(range(n), repeat=n - 2):
        edges = [(names[a], names[b]) for a, b in _prufer_edges(seq, n)]
        yield validate_tree(names, edges)
