"""Infinite graph spaces, finite windows, and exact shortest-path tools.

A :class:`GraphSpace` is an infinite, connected, locally finite graph with
unit edge weights, described by a deterministic neighbor rule.  A
:class:`Window` is a finite ball around a base vertex; every distance
consumer states which validity zone it needs, so truncation never silently
corrupts a value.
"""

from __future__ import annotations

import os
from collections import deque
from fractions import Fraction

from .errors import DomainError, ResourceLimitError, ZoneError

DEFAULT_MAX_VERTICES = 2_000_000
MAX_VERTICES_ENV = "DLSCAPE_MAX_VERTICES"


def vertex_budget():
    raw = os.environ.get(MAX_VERTICES_ENV)
    if raw is None:
        return DEFAULT_MAX_VERTICES
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"{MAX_VERTICES_ENV} must be an integer, got {raw!r}")
    if value <= 0:
        raise DomainError(f"{MAX_VERTICES_ENV} must be positive")
    return value


class GraphSpace:
    """Base class for generated infinite graphs.

    Subclasses fix the vertex encoding, a deterministic neighbor order,
    a degree bound, and a rational scale factor: the reported distance is
    ``hops / scale``.
    """

    generator_id = "?"
    degree_bound = 0

    def __init__(self, scale=Fraction(1)):
        scale = Fraction(scale)
        if scale <= 0:
            raise DomainError("scale must be positive")
        self.scale = scale

    # -- interface every generator implements -------------------------------
    def neighbors(self, v):
        raise NotImplementedError

    def contains(self, v):
        raise NotImplementedError

    def default_base(self):
        raise NotImplementedError

    def parse_vertex(self, text):
        raise NotImplementedError

    def vertex_label(self, v):
        raise NotImplementedError

    @property
    def params(self):
        return {}

    # -----------------------------------------------------------------------
    def spec_dict(self):
        return {
            "generator": self.generator_id,
            "params": dict(self.params),
            "scale": {"num": self.scale.numerator, "den": self.scale.denominator},
        }

    def check_vertex(self, v):
        if not self.contains(v):
            raise DomainError(
                f"vertex {v!r} is not a vertex of generator {self.generator_id}"
            )
        return v

    def __repr__(self):
        ps = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.generator_id}({ps})"


def vertex_set(window, vertices):
    """Sorted, duplicate-free tuple of vertex ids, all checked in-window."""
    out = []
    seen = set()
    for v in vertices:
        if v not in window.index:
            raise DomainError(f"vertex {v!r} is not in the window")
        if v not in seen:
            seen.add(v)
            out.append(v)
    out.sort()
    return tuple(out)


class Window:
    """Materialized ball ``B_R(base)`` of a graph space.

    Immutable after construction.  ``vertices`` is in breadth-first order
    with the generator's neighbor ordering, so two materializations of the
    same (space, base, R) are identical.
    """

    __slots__ = ("space", "base", "radius", "vertices", "index",
                 "dist_from_base", "adjacency")

    def __init__(self, space, base, radius, vertices, index, dist, adjacency):
        self.space = space
        self.base = base
        self.radius = radius
        self.vertices = vertices
        self.index = index
        self.dist_from_base = dist
        self.adjacency = adjacency

    def __len__(self):
        return len(self.vertices)

    @property
    def base_index(self):
        return 0

    def indices_within(self, rho):
        dist = self.dist_from_base
        return [i for i in range(len(dist)) if dist[i] <= rho]

    def require_zone(self, vertex, rho, what="query"):
        i = self.index.get(vertex)
        if i is None:
            raise ZoneError(f"{what} vertex {vertex!r} not in window",
                            parameter="radius", witness=vertex)
        if self.dist_from_base[i] > rho:
            raise ZoneError(
                f"{what} vertex {vertex!r} at distance "
                f"{self.dist_from_base[i]} exceeds zone {rho}",
                parameter="zone", witness=vertex)
        return i

    def edge_list(self):
        """Edges as (i, j) index pairs with i < j, in row order."""
        out = []
        for i, row in enumerate(self.adjacency):
            for j in row:
                if i < j:
                    out.append((i, j))
        return out

    def to_json(self):
        space = self.space
        return {
            "space": space.spec_dict(),
            "base": space.vertex_label(self.base),
            "radius": self.radius,
            "vertices": [space.vertex_label(v) for v in self.vertices],
            "dist_from_base": list(self.dist_from_base),
            "edges": [[i, j] for i, j in self.edge_list()],
        }


def materialize_window(space, base, radius, max_vertices=None):
    """Breadth-first materialization of ``B_radius(base)``.

    Adjacency rows keep the generator's neighbor order, restricted to
    in-window vertices.  Raises :class:`ResourceLimitError` when the vertex
    budget (``DLSCAPE_MAX_VERTICES``, default 2,000,000) would be exceeded.
    """
    if radius < 0:
        raise DomainError("radius must be >= 0")
    space.check_vertex(base)
    budget = max_vertices if max_vertices is not None else vertex_budget()

    index = {base: 0}
    vertices = [base]
    dist = [0]
    adjacency = []
    nbr = space.neighbors
    get = index.get
    head = 0
    while head < len(vertices):
        v = vertices[head]
        dv = dist[head]
        row = []
        if dv < radius:
            for w in nbr(v):
                j = get(w)
                if j is None:
                    j = len(vertices)
                    if j >= budget:
                        raise ResourceLimitError(
                            f"window ({space!r}, base={base!r}, R={radius}) "
                            f"exceeds vertex budget {budget}")
                    index[w] = j
                    vertices.append(w)
                    dist.append(dv + 1)
                row.append(j)
        else:
            # Peripheral shell: every in-window neighbor (dist <= R) has
            # already been discovered, so filtering by the index is exact.
            for w in nbr(v):
                j = get(w)
                if j is not None:
                    row.append(j)
        adjacency.append(row)
        head += 1
    return Window(space, base, radius, vertices, index, dist, adjacency)


def dist_field(window, sources):
    """Hop distance to a non-empty source set, by multi-source BFS.

    Returns one integer per window vertex (window-truncated distances;
    exactness guarantees are the caller's responsibility via zones).
    """
    if not sources:
        raise DomainError("source set must be non-empty")
    idx = window.index
    seeds = []
    for v in sources:
        i = idx.get(v)
        if i is None:
            raise DomainError(f"source vertex {v!r} not in window")
        seeds.append(i)
    return _bfs_from_indices(window, seeds)


def _bfs_from_indices(window, seeds):
    adjacency = window.adjacency
    dist = [-1] * len(window.vertices)
    queue = deque()
    for i in seeds:
        if dist[i] != 0:
            dist[i] = 0
            queue.append(i)
    pop = queue.popleft
    push = queue.append
    while queue:
        v = pop()
        dv = dist[v] + 1
        for w in adjacency[v]:
            if dist[w] < 0:
                dist[w] = dv
                push(w)
    return dist


def sphere(window, r):
    """All vertices at hop distance exactly ``r`` from the base."""
    if r < 0 or r > window.radius:
        raise ZoneError(f"sphere radius {r} outside window radius "
                        f"{window.radius}", parameter="radius")
    dist = window.dist_from_base
    members = [window.vertices[i] for i in range(len(dist)) if dist[i] == r]
    members.sort()
    return tuple(members)


def pairwise_dist(window, sample):
    """Exact distance matrix on a sample inside the R/3 validity zone."""
    if not sample:
        raise DomainError("sample must be non-empty")
    zone = window.radius // 3
    idxs = [window.require_zone(v, zone, what="sample") for v in sample]
    n = len(idxs)
    mat = [[0] * n for _ in range(n)]
    for a in range(n):
        d = _bfs_from_indices(window, [idxs[a]])
        for b in range(n):
            mat[a][b] = d[idxs[b]]
    for a in range(n):
        for b in range(n):
            if mat[a][b] != mat[b][a]:
                raise ZoneError("asymmetric in-window distances; enlarge the "
                                "window", parameter="radius",
                                witness=(sample[a], sample[b]))
    return mat


def shortest_path(window, start, goal):
    """One shortest vertex path start..goal, deterministic.

    BFS parents follow the generator's neighbor order, so the returned
    path is reproducible.  The path is a geodesic of the window.
    """
    s = window.index.get(start)
    g = window.index.get(goal)
    if s is None or g is None:
        raise DomainError("endpoints must lie in the window")
    adjacency = window.adjacency
    parent = {s: None}
    queue = deque([s])
    while queue:
        v = queue.popleft()
        if v == g:
            break
        for w in adjacency[v]:
            if w not in parent:
                parent[w] = v
                queue.append(w)
    if g not in parent:
        raise DomainError("goal not reachable inside the window")
    path = []
    v = g
    while v is not None:
        path.append(window.vertices[v])
        v = parent[v]
    path.reverse()
    return path
