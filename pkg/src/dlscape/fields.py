"""Candidate distance-like fields on windows.

All fields are integer hop-valued on a declared zone ``B_rho(base)`` and
carry per-vertex convergence metadata.  Truncated limits are reported as
(last value, stabilization flag over a tail window), never as a claimed
limit; the zoo oracles pin exact thresholds where they are known.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import DomainError, ZoneError
from .space import dist_field, sphere, _bfs_from_indices

FIELD_KINDS = ("u_r", "point_assigned", "busemann", "horo", "set_limit")


@dataclass
class ConvergenceReport:
    """Truncation certificate for a limit taken along a schedule."""

    schedule: tuple
    tail: int
    stable: dict
    last_change: dict
    oscillation: dict

    def stable_indices(self):
        return [i for i, ok in self.stable.items() if ok]


@dataclass
class ScalarField:
    """Integer hop values of a candidate dl-function on a zone."""

    window: object
    kind: str
    zone: int
    values: dict          # vertex index -> value
    report: ConvergenceReport

    def __post_init__(self):
        if self.kind not in FIELD_KINDS:
            raise DomainError(f"unknown field kind {self.kind!r}")

    @property
    def base(self):
        return self.window.base

    @property
    def base_index(self):
        return self.window.base_index

    def index_of(self, vertex):
        i = self.window.index.get(vertex)
        if i is None or i not in self.values:
            raise ZoneError(f"vertex {vertex!r} outside the field zone",
                            parameter="zone", witness=vertex)
        return i

    def value_at(self, vertex):
        return self.values[self.index_of(vertex)]

    def stable_at(self, vertex):
        return self.report.stable[self.index_of(vertex)]

    def normalized_value(self, vertex):
        """Value shifted so the field vanishes at the window base."""
        return self.value_at(vertex) - self.values[self.base_index]

    def zone_indices(self):
        return sorted(self.values)

    def lipschitz_violations(self):
        """Edges inside the zone across which the value jumps by > 1."""
        adjacency = self.window.adjacency
        values = self.values
        bad = []
        for i, vi in values.items():
            for j in adjacency[i]:
                if j in values and abs(vi - values[j]) > 1:
                    bad.append((self.window.vertices[i],
                                self.window.vertices[j]))
        return bad


def _summarize(window, zone_idx, schedule, history, tail, monotone_max=None):
    """Collapse a per-parameter value history into field + report.

    ``history`` maps index -> list of (parameter, value); entries may start
    later than the schedule for vertices whose early entries are invalid.
    A vertex is stable when at least two entries fall in the tail window
    (parameter > last - tail) and none of them changed the value.
    """
    values, stable, last_change, oscillation = {}, {}, {}, {}
    last_param = schedule[-1]
    cutoff = last_param - tail
    for i in zone_idx:
        seq = history[i]
        if not seq:
            continue
        vals = [v for _, v in seq]
        values[i] = vals[-1]
        change = seq[0][0]
        for (p0, v0), (p1, v1) in zip(seq, seq[1:]):
            if v1 != v0:
                change = p1
        last_change[i] = change
        tail_vals = [v for p, v in seq if p > cutoff]
        osc = max(tail_vals) - min(tail_vals) if tail_vals else 0
        oscillation[i] = osc
        stable[i] = len(tail_vals) >= 2 and osc == 0 and change <= cutoff
    return values, ConvergenceReport(tuple(schedule), tail, stable,
                                     last_change, oscillation)


def _check_zone(window, zone):
    if zone < 1:
        raise DomainError("zone must be >= 1")
    if zone > window.radius:
        raise ZoneError("zone exceeds the window radius", parameter="radius")


def u_r(window, r, zone):
    """Finite-radius approximant d(., S_r(base)) - r on B_zone(base).

    Exactness needs r + zone <= R: a shortest path from a zone vertex to
    its nearest sphere point stays inside B_{r+zone}(base).
    """
    _check_zone(window, zone)
    if r < 1 or r > window.radius:
        raise ZoneError(f"r={r} outside window radius", parameter="radius")
    if r + zone > window.radius:
        raise ZoneError(f"need r + zone <= R for exact sphere distances "
                        f"(r={r}, zone={zone}, R={window.radius})",
                        parameter="radius")
    df = dist_field(window, sphere(window, r))
    zone_idx = window.indices_within(zone)
    values = {i: df[i] - r for i in zone_idx}
    report = ConvergenceReport((r,), 0, {i: True for i in zone_idx},
                               {i: r for i in zone_idx},
                               {i: 0 for i in zone_idx})
    return ScalarField(window, "u_r", zone, values, report)


def u_point_assigned(window, schedule, zone, tail=None):
    """Truncated point-assigned field: the last u^r value per vertex.

    u^r(x) is monotone non-decreasing in r once r >= d(base, x), so only
    schedule entries in that range count; earlier entries can overshoot
    the limit (e.g. on the halfline) and are ignored per vertex.
    """
    _check_zone(window, zone)
    schedule = tuple(schedule)
    if not schedule or any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise DomainError("schedule must be non-empty strictly increasing")
    if schedule[-1] + zone > window.radius:
        raise ZoneError("need max(schedule) + zone <= R",
                        parameter="radius")
    if tail is None:
        tail = 2 * zone
    zone_idx = window.indices_within(zone)
    dist = window.dist_from_base
    history = {i: [] for i in zone_idx}
    for r in schedule:
        fld = u_r(window, r, zone)
        for i in zone_idx:
            if r >= dist[i]:
                seq = history[i]
                v = fld.values[i]
                if seq and v < seq[-1][1]:
                    raise ZoneError(
                        "u^r decreased for r >= d(base,x); window too small "
                        "for exact sphere distances", parameter="radius",
                        witness=window.vertices[i])
                seq.append((r, v))
    values, report = _summarize(window, zone_idx, schedule, history, tail)
    field = ScalarField(window, "point_assigned", zone, values, report)
    base_val = values[window.base_index]
    if base_val != 0:
        raise ZoneError(f"point-assigned value at base is {base_val}, not 0",
                        parameter="radius")
    return field, report


def verify_geodesic(window, path):
    """Check d(path[0], path[t]) == t for every stored t.

    The equality test is exact despite truncation: the path itself bounds
    the in-window distance above by t, and any in-window distance is at
    least the true one.
    """
    if not path:
        raise DomainError("path must be non-empty")
    idxs = [window.require_zone(v, window.radius, what="path") for v in path]
    adjacency = window.adjacency
    for a, b in zip(idxs, idxs[1:]):
        if b not in adjacency[a]:
            return False
    d0 = _bfs_from_indices(window, [idxs[0]])
    return all(d0[i] == t for t, i in enumerate(idxs))


def busemann(window, ray, T, zone, tail=None):
    """Busemann-type field d(., ray[t]) - t, swept over t = 1..T.

    The ray must be a geodesic vertex path (verified).  Values are exact
    on the zone when d(base, ray[t]) <= R - zone for every anchor used.
    The sweep is monotone non-increasing in t, which drives the
    stabilization flags.
    """
    _check_zone(window, zone)
    ray = list(ray)
    if T < 1 or T >= len(ray):
        raise DomainError("need 1 <= T < len(ray)")
    if not verify_geodesic(window, ray[:T + 1]):
        raise DomainError("ray is not a geodesic vertex path")
    dist = window.dist_from_base
    for t in range(T + 1):
        i = window.index[ray[t]]
        if dist[i] + zone > window.radius:
            raise ZoneError(
                f"anchor ray[{t}] too close to the window boundary "
                f"(need d(base, anchor) + zone <= R)", parameter="radius",
                witness=ray[t])
    if tail is None:
        tail = 2 * zone
    zone_idx = window.indices_within(zone)
    history = {i: [] for i in zone_idx}
    prev = {}
    for t in range(1, T + 1):
        d = dist_field(window, (ray[t],))
        for i in zone_idx:
            v = d[i] - t
            if i in prev and v > prev[i]:
                raise ZoneError("Busemann sweep increased in t; window too "
                                "small for exact anchor distances",
                                parameter="radius",
                                witness=window.vertices[i])
            prev[i] = v
            history[i].append((t, v))
    schedule = tuple(range(1, T + 1))
    values, report = _summarize(window, zone_idx, schedule, history, tail)
    return ScalarField(window, "busemann", zone, values, report), report


def horofunction(window, points, zone, tail=None):
    """Horofunction-type field d(., p_n) - d(base, p_n) along a diverging
    vertex sequence.  Sequences need not be monotone; the report carries
    the tail oscillation instead of a convergence claim.
    """
    _check_zone(window, zone)
    points = list(points)
    if len(points) < 2:
        raise DomainError("need at least two points")
    dist = window.dist_from_base
    radii = []
    for p in points:
        i = window.index.get(p)
        if i is None:
            raise ZoneError(f"point {p!r} not in window", parameter="radius",
                            witness=p)
        if dist[i] + zone > window.radius:
            raise ZoneError("point too close to the window boundary "
                            "(need d(base, p) + zone <= R)",
                            parameter="radius", witness=p)
        radii.append(dist[i])
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise DomainError("d(base, p_n) must be strictly increasing")
    if tail is None:
        tail = 2 * zone
    zone_idx = window.indices_within(zone)
    history = {i: [] for i in zone_idx}
    for p, rn in zip(points, radii):
        d = dist_field(window, (p,))
        for i in zone_idx:
            history[i].append((rn, d[i] - rn))
    values, report = _summarize(window, zone_idx, tuple(radii), history, tail)
    return ScalarField(window, "horo", zone, values, report), report


def dl_from_sets(window, sets, shifts, zone, tail=None):
    """General set-sequence field d(., H_n) - c_n.

    Exactness needs d(base, H_n) + 2*zone <= R so the realizing shortest
    path from any zone vertex stays inside the window.
    """
    _check_zone(window, zone)
    sets = [tuple(s) for s in sets]
    shifts = list(shifts)
    if len(sets) != len(shifts) or len(sets) < 2:
        raise DomainError("need matching sets/shifts lists of length >= 2")
    dist = window.dist_from_base
    base_dists = []
    for hn in sets:
        if not hn:
            raise DomainError("H_n must be non-empty")
        idxs = [window.require_zone(v, window.radius, what="H_n") for v in hn]
        a = min(dist[i] for i in idxs)
        if a + 2 * zone > window.radius:
            raise ZoneError("H_n too close to the window boundary "
                            "(need d(base, H_n) + 2*zone <= R)",
                            parameter="radius")
        base_dists.append(a)
    if any(b <= a for a, b in zip(base_dists, base_dists[1:])):
        raise DomainError("d(base, H_n) must be strictly increasing "
                          "(diverging sets)")
    if tail is None:
        tail = 2 * zone
    zone_idx = window.indices_within(zone)
    history = {i: [] for i in zone_idx}
    for hn, cn, a in zip(sets, shifts, base_dists):
        d = dist_field(window, hn)
        for i in zone_idx:
            history[i].append((a, d[i] - cn))
    values, report = _summarize(window, zone_idx, tuple(base_dists), history,
                                tail)
    return ScalarField(window, "set_limit", zone, values, report), report


@dataclass
class GromovReport:
    """Outcome of the sublevel-set identity check."""

    checked: dict = dc_field(default_factory=dict)   # t -> count
    skipped: list = dc_field(default_factory=list)   # t with empty sublevel
    violations: list = dc_field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def to_json(self, window):
        return {
            "checked": {str(t): c for t, c in sorted(self.checked.items())},
            "skipped": list(self.skipped),
            "violations": [
                {"t": t, "vertex": window.space.vertex_label(v),
                 "value": u, "sublevel_distance": d}
                for t, v, u, d in self.violations],
        }


def gromov_check(field, t_samples, stable_only=False):
    """Verify u(x) = t + d(x, {u <= t}) for sampled integer thresholds.

    ``{u <= t}`` is the integer rendering of the open sublevel set: along
    a unit-decrement descent from x the value first reaches t after
    exactly u(x) - t steps.  Only vertices whose full descent provably
    stays in the zone are checked (d(base, x) + u(x) - t <= zone), so the
    verdict is exact, never window-noise.
    """
    window = field.window
    dist = window.dist_from_base
    report = GromovReport()
    stable = field.report.stable
    for t in t_samples:
        sub = [i for i, v in field.values.items() if v <= t]
        if not sub:
            report.skipped.append(t)
            continue
        d = _bfs_from_indices(window, sub)
        count = 0
        for i, u in field.values.items():
            if u < t:
                continue
            if stable_only and not stable.get(i, False):
                continue
            if dist[i] + (u - t) > field.zone:
                continue
            count += 1
            if u != t + d[i]:
                report.violations.append((t, window.vertices[i], u, d[i]))
        report.checked[t] = count
    return report


def default_t_samples(field, count=5):
    """Integer thresholds spread over the field's zone values."""
    vals = sorted(set(field.values.values()))
    if not vals:
        raise DomainError("empty field")
    lo, hi = vals[0], vals[-1]
    if hi == lo:
        return [lo]
    step = max(1, (hi - lo) // count)
    return sorted(set(range(lo, hi + 1, step)))[:count]


def level_set(field, c):
    """In-zone vertices where the field equals c exactly."""
    window = field.window
    out = [window.vertices[i] for i, v in field.values.items() if v == c]
    out.sort()
    return tuple(out)


@dataclass
class StabilityReport:
    converged: bool
    nonconverged: list
    gromov: GromovReport

    @property
    def ok(self):
        return self.converged and self.gromov.ok


def stability_check(fields, limit, t_samples=None):
    """Check a field sequence converges to ``limit`` on the zone and the
    limit still satisfies the sublevel identity."""
    fields = list(fields)
    if not fields:
        raise DomainError("need at least one field")
    for f in fields:
        if f.window is not limit.window or f.zone != limit.zone:
            raise DomainError("all fields must share window and zone")
    nonconverged = []
    last = fields[-1]
    for i, v in limit.values.items():
        tail_ok = last.values.get(i) == v
        if len(fields) >= 2:
            tail_ok = tail_ok and fields[-2].values.get(i) == v
        if not tail_ok:
            nonconverged.append(limit.window.vertices[i])
    if t_samples is None:
        t_samples = default_t_samples(limit)
    grom = gromov_check(limit, t_samples)
    return StabilityReport(not nonconverged, nonconverged, grom)


def field_to_json(field):
    """Export schema: one record per zone vertex plus window provenance."""
    window = field.window
    space = window.space
    rep = field.report
    rows = []
    for i in field.zone_indices():
        rows.append({
            "vertex": space.vertex_label(window.vertices[i]),
            "dist_from_base": window.dist_from_base[i],
            "value": field.values[i],
            "stable": rep.stable[i],
            "last_change": rep.last_change[i],
        })
    return {
        "space": space.spec_dict(),
        "base": space.vertex_label(window.base),
        "radius": window.radius,
        "kind": field.kind,
        "zone": field.zone,
        "schedule": list(rep.schedule),
        "tail": rep.tail,
        "scale": {"num": space.scale.numerator,
                  "den": space.scale.denominator},
        "values": rows,
    }


def field_from_json(data, window):
    """Rebuild a field from its export, on a freshly materialized window."""
    space = window.space
    values, stable, last_change = {}, {}, {}
    for row in data["values"]:
        v = space.parse_vertex(row["vertex"])
        i = window.index.get(v)
        if i is None:
            raise DomainError(f"exported vertex {row['vertex']} not in the "
                              "rematerialized window")
        values[i] = row["value"]
        stable[i] = row["stable"]
        last_change[i] = row["last_change"]
    report = ConvergenceReport(tuple(data["schedule"]), data["tail"],
                               stable, last_change,
                               {i: 0 for i in values})
    return ScalarField(window, data["kind"], data["zone"], values, report)
