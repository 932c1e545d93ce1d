"""Gradient lines (co-rays) of distance-like fields.

A discrete co-ray is a maximal vertex path along which the field drops by
exactly one per step; on unit graphs this realizes the gradient identity
verbatim and every such path is a geodesic.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import DescentError, DomainError
from .fields import busemann
from .space import _bfs_from_indices


@dataclass(frozen=True)
class CoRay:
    """Unit-decrement vertex path; ``truncated`` means it stopped at the
    zone boundary rather than at a genuine minimum."""

    vertices: tuple
    decrements: tuple
    truncated: bool

    @property
    def length(self):
        return len(self.vertices) - 1


@dataclass
class CoRayTrace:
    paths: list
    exhausted: bool    # False when max_paths cut the enumeration short


def _descending(field, i):
    """In-zone neighbors one below, in generator order."""
    values = field.values
    target = values[i] - 1
    return [j for j in field.window.adjacency[i]
            if values.get(j) == target]


def trace_corays(field, start, max_paths=64):
    """Depth-first enumeration of maximal unit-decrement paths from start.

    Neighbor ties break in generator order.  A path that stops strictly
    inside the zone contradicts co-ray existence and raises
    :class:`DescentError`; a stop at the zone boundary is reported as a
    truncated path.
    """
    window = field.window
    i0 = field.index_of(start)
    dist = window.dist_from_base
    zone = field.zone
    values = field.values
    paths = []
    exhausted = True

    stack = [(i0,)]
    while stack:
        if len(paths) >= max_paths:
            exhausted = False
            break
        path = stack.pop()
        down = _descending(field, path[-1])
        if down:
            for j in reversed(down):
                stack.append(path + (j,))
            continue
        tip = path[-1]
        if dist[tip] < zone and len(path) > 1:
            raise DescentError(
                "no descending neighbor strictly inside the zone; field is "
                "not distance-like there",
                vertex=window.vertices[tip])
        if len(path) == 1 and dist[tip] < zone:
            raise DescentError("no descending neighbor at start",
                               vertex=start)
        verts = tuple(window.vertices[i] for i in path)
        decs = tuple(values[a] - values[b] for a, b in zip(path, path[1:]))
        paths.append(CoRay(verts, decs, truncated=True))
    return CoRayTrace(paths, exhausted)


def verify_gradient(coray, field):
    """Independent re-check of the gradient identity and geodesy.

    True iff the field drops by exactly one per step and every vertex pair
    on the path is at hop distance equal to its index gap.  The distance
    test is exact under truncation: the path bounds the in-window distance
    above, and in-window distances bound the true ones below.
    """
    window = field.window
    try:
        idxs = [field.index_of(v) for v in coray.vertices]
    except Exception:
        return False
    values = field.values
    for a, b in zip(idxs, idxs[1:]):
        if b not in window.adjacency[a]:
            return False
        if values[a] - values[b] != 1:
            return False
    L = len(idxs)
    for s in range(L - 1):
        d = _bfs_from_indices(window, [idxs[s]])
        for t in range(s + 1, L):
            if d[idxs[t]] != t - s:
                return False
    return True


def uniqueness_probe(field, start):
    """Number of neighbors one below the field value at start."""
    return len(_descending(field, field.index_of(start)))


@dataclass
class ReprEntry:
    start: object
    busemann_at_x: int
    field_at_start: int
    bound: int
    equality: bool
    stable: bool


@dataclass
class ReprReport:
    """Representation-formula evidence u(x) <= u(g(0)) + b_g(x)."""

    x: object
    value: int
    entries: list = dc_field(default_factory=list)
    inconclusive: list = dc_field(default_factory=list)

    @property
    def ok(self):
        return all(self.value <= e.bound for e in self.entries if e.stable)

    @property
    def equality_achieved(self):
        return any(e.equality for e in self.entries if e.stable)


def representation_check(field, x, corays):
    """Check the co-ray representation of the field value at x.

    Each supplied co-ray contributes the bound u(g(0)) + b_g(x); the bound
    with the self-started co-ray is exact (b vanishes at its own origin).
    Rays whose Busemann sweep has not stabilized at x are reported as
    inconclusive, not as failures.
    """
    window = field.window
    ux = field.value_at(x)
    report = ReprReport(x=x, value=ux)
    for coray in corays:
        start = coray.vertices[0]
        if coray.length == 0:
            if start == x:
                report.entries.append(ReprEntry(start, 0, ux, ux,
                                                equality=True, stable=True))
            else:
                report.inconclusive.append((start, "zero-length co-ray"))
            continue
        try:
            bfield, brep = busemann(window, list(coray.vertices),
                                    coray.length, field.zone)
        except DomainError as exc:
            report.inconclusive.append((start, str(exc)))
            continue
        bx = bfield.value_at(x)
        stable = bfield.stable_at(x) or (start == x and bx == 0)
        bound = field.value_at(start) + bx
        entry = ReprEntry(start, bx, field.value_at(start), bound,
                          equality=(ux == bound), stable=stable)
        if stable:
            report.entries.append(entry)
        else:
            report.inconclusive.append((start, "busemann value not stable"))
    return report
