"""The induced pseudo-metric rho and its equivalence classes.

rho(x,y) = -(u_x(y) + u_y(x)) / 2 is kept as the integer 2*rho for exact
arithmetic; the rational scale is applied only at export.  Class detection
is window evidence: two bases land in one block when their fields differ
by an exact constant across the shared evaluation zone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConsistencyError, DomainError, ZoneError
from .fields import u_point_assigned
from .space import dist_field, materialize_window


def point_assigned_family(window, bases, schedule, zone, tail=None):
    """Point-assigned fields for several bases of one space.

    Each base gets its own window of the same radius, so every field's
    zone is exact around its own base.
    """
    fields = {}
    for b in bases:
        wb = materialize_window(window.space, b, window.radius)
        fld, _ = u_point_assigned(wb, schedule, zone, tail)
        fields[b] = fld
    return fields


@dataclass
class RhoMatrix:
    """Scaled pseudo-metric on a sample, with per-entry stability flags."""

    sample: tuple
    two_rho: tuple          # integers: 2*rho in hop units
    stable: tuple
    dist: tuple             # hop distances on the sample
    scale: Fraction

    def rho(self, i, j):
        """rho in reported (scaled) units, as an exact Fraction."""
        return Fraction(self.two_rho[i][j], 2) / self.scale

    def axiom_violations(self, stable_only=True):
        """Witnesses against the pseudo-metric axioms, exact integers."""
        n = len(self.sample)
        tr = self.two_rho
        ok = (lambda *ij: all(self.stable[a][b] for a, b in
                              zip(ij[::2], ij[1::2]))) \
            if stable_only else (lambda *ij: True)
        bad = []
        for i in range(n):
            if tr[i][i] != 0:
                bad.append(("diagonal", self.sample[i], tr[i][i]))
            for j in range(n):
                if not ok(i, j):
                    continue
                if tr[i][j] != tr[j][i]:
                    bad.append(("symmetry", self.sample[i], self.sample[j]))
                if tr[i][j] < 0:
                    bad.append(("nonnegative", self.sample[i],
                                self.sample[j]))
                if tr[i][j] > 2 * self.dist[i][j]:
                    bad.append(("rho<=d", self.sample[i], self.sample[j]))
                for k in range(n):
                    if ok(i, k) and ok(k, j) and \
                            tr[i][j] > tr[i][k] + tr[k][j]:
                        bad.append(("triangle", self.sample[i],
                                    self.sample[k], self.sample[j]))
        return bad

    def zero_blocks(self, require_stable=True):
        """Connected components of the stable rho = 0 relation."""
        n = len(self.sample)
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for i in range(n):
            for j in range(i + 1, n):
                usable = (not require_stable) or \
                    (self.stable[i][j] and self.stable[j][i])
                if usable and self.two_rho[i][j] == 0:
                    parent[find(i)] = find(j)
        blocks = {}
        for i in range(n):
            blocks.setdefault(find(i), []).append(self.sample[i])
        return sorted(sorted(b) for b in blocks.values())

    def to_json(self, space):
        n = len(self.sample)
        return {
            "sample": [space.vertex_label(v) for v in self.sample],
            "two_rho_hops": [list(row) for row in self.two_rho],
            "stable": [list(row) for row in self.stable],
            "rho_scaled": [[str(self.rho(i, j)) for j in range(n)]
                           for i in range(n)],
        }


def _sample_distances(window, sample):
    d = {}
    for v in sample:
        df = dist_field(window, (v,))
        d[v] = {w: df[window.index[w]] for w in sample}
    return d


def rho_matrix(window, sample, schedule, zone, tail=None, fields=None):
    """Pseudo-metric matrix on a sample of base points.

    Requires every pair of sample points within ``zone`` hops of each
    other so u_x(y) is exact on each per-base window.  Unstable entries
    are flagged, not failed.
    """
    sample = tuple(sample)
    if not sample:
        raise DomainError("sample must be non-empty")
    for v in sample:
        window.require_zone(v, window.radius // 3, what="sample")
    dmap = _sample_distances(window, sample)
    for x in sample:
        for y in sample:
            if dmap[x][y] > zone:
                raise ZoneError(
                    f"sample points {x!r},{y!r} are {dmap[x][y]} apart, "
                    f"beyond zone {zone}", parameter="zone", witness=(x, y))
    if fields is None:
        fields = point_assigned_family(window, sample, schedule, zone, tail)
    n = len(sample)
    two_rho = [[0] * n for _ in range(n)]
    stable = [[True] * n for _ in range(n)]
    for i, x in enumerate(sample):
        for j, y in enumerate(sample):
            ux_y = fields[x].value_at(y)
            uy_x = fields[y].value_at(x)
            two_rho[i][j] = -(ux_y + uy_x)
            stable[i][j] = fields[x].stable_at(y) and fields[y].stable_at(x)
    dist = tuple(tuple(dmap[x][y] for y in sample) for x in sample)
    return RhoMatrix(sample, tuple(map(tuple, two_rho)),
                     tuple(map(tuple, stable)), dist, window.space.scale)


def anti_triangle_check(field_x, field_y, z):
    """Exact verdict on u_x(y) + u_y(z) <= u_x(z) with y = field_y's base."""
    y = field_y.base
    return field_x.value_at(y) + field_y.value_at(z) <= field_x.value_at(z)


def base_lipschitz_gap(field_a, field_b):
    """(sup |u_a - u_b| over the shared zone, d(base_a, base_b))."""
    wa, wb = field_a.window, field_b.window
    if wa.space is not wb.space and \
            wa.space.spec_dict() != wb.space.spec_dict():
        raise DomainError("fields must live on the same space")
    common = [wa.vertices[i] for i in field_a.zone_indices()
              if wb.index.get(wa.vertices[i]) in field_b.values]
    if not common:
        raise DomainError("fields share no zone vertices")
    sup = max(abs(field_a.value_at(v) - field_b.value_at(v))
              for v in common)
    if field_b.base not in wa.index:
        raise DomainError("base of the second field not in the first window")
    d_ab = dist_field(wa, (field_b.base,))[wa.index[field_a.base]]
    return sup, d_ab


def base_lipschitz_check(field_a, field_b):
    """True iff sup |u_a - u_b| <= d(base_a, base_b) on the shared zone."""
    sup, bound = base_lipschitz_gap(field_a, field_b)
    return sup <= bound


@dataclass
class ClassPartition:
    """Blocks of sample points whose fields differ by an exact constant
    over the shared evaluation zone (window evidence only)."""

    blocks: list            # sorted list of sorted vertex lists
    offsets: dict           # (x, y) in one block -> constant c: u_x = u_y + c
    evaluation_zone: int
    evidence: str = "WINDOW-EVIDENCE"

    def to_json(self, space):
        return {
            "blocks": [[space.vertex_label(v) for v in blk]
                       for blk in self.blocks],
            "evaluation_zone": self.evaluation_zone,
            "evidence": self.evidence,
        }


def equivalence_classes(window, sample, schedule, zone, tail=None,
                        fields=None, rho=None):
    """Partition a sample by constant field difference; cross-checked
    against the rho = 0 blocks.  A mismatch between the two routes is an
    internal bug, not data."""
    sample = tuple(sample)
    if fields is None:
        fields = point_assigned_family(window, sample, schedule, zone, tail)
    if rho is None:
        rho = rho_matrix(window, sample, schedule, zone, tail, fields=fields)

    max_base_dist = max(window.dist_from_base[window.index[v]]
                        for v in sample)
    eval_zone = zone - max_base_dist
    if eval_zone < 1:
        raise ZoneError("zone too small for a shared evaluation region",
                        parameter="zone")
    eval_vertices = [window.vertices[i]
                     for i in window.indices_within(eval_zone)]

    n = len(sample)
    offsets = {}
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            fx, fy = fields[sample[i]], fields[sample[j]]
            diffs = {fx.value_at(v) - fy.value_at(v) for v in eval_vertices}
            if len(diffs) == 1:
                parent[find(i)] = find(j)
                offsets[(sample[i], sample[j])] = diffs.pop()
    blocks = {}
    for i in range(n):
        blocks.setdefault(find(i), []).append(sample[i])
    blocks = sorted(sorted(b) for b in blocks.values())

    rho_blocks = rho.zero_blocks()
    if blocks != rho_blocks:
        raise ConsistencyError(
            f"constant-difference blocks {blocks} disagree with rho=0 "
            f"blocks {rho_blocks}")
    return ClassPartition(blocks, offsets, eval_zone)
