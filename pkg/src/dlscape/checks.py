"""Seeded randomized invariant suites.

Each suite draws its cases from a seeded RNG, checks an exact invariant
on a window of the given space, and returns a SuiteResult with explicit
witnesses for every violation.  Identical (space, radius, trials, seed)
always reproduces the same cases.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .corays import trace_corays, verify_gradient
from .errors import DomainError
from .fields import default_t_samples, gromov_check, u_point_assigned
from .pseudometric import (anti_triangle_check, base_lipschitz_gap,
                           point_assigned_family)
from .space import dist_field, materialize_window, sphere


@dataclass
class SuiteResult:
    suite: str
    trials: int
    checked: int
    violations: list = dc_field(default_factory=list)
    stats: dict = dc_field(default_factory=dict)

    @property
    def ok(self):
        return not self.violations

    def to_json(self):
        return {"suite": self.suite, "trials": self.trials,
                "checked": self.checked, "ok": self.ok,
                "violations": self.violations, "stats": self.stats}


def _window(space, radius):
    return materialize_window(space, space.default_base(), radius)


def _label(window, i):
    return window.space.vertex_label(window.vertices[i])


def suite_monotone(space, radius, trials, seed):
    """u^{r1}(x) <= u^{r2}(x) <= d(x0, x) for r1 < r2 in the exact range
    d(x0, x) <= r and r + d(x0, x) <= R."""
    window = _window(space, radius)
    rng = random.Random(seed)
    dist = window.dist_from_base
    inner = window.indices_within(radius // 3)
    cache = {}

    def u_r_at(r, i):
        if r not in cache:
            df = dist_field(window, sphere(window, r))
            cache[r] = df
        return cache[r][i] - r

    result = SuiteResult("monotone", trials, 0)
    for _ in range(trials):
        i = rng.choice(inner)
        lo, hi = max(dist[i], 1), radius - dist[i]
        if hi - lo < 1:
            continue
        r1 = rng.randint(lo, hi - 1)
        r2 = rng.randint(r1 + 1, hi)
        u1, u2 = u_r_at(r1, i), u_r_at(r2, i)
        result.checked += 1
        if not (u1 <= u2 <= dist[i]):
            result.violations.append(
                {"vertex": _label(window, i), "r1": r1, "r2": r2,
                 "u_r1": u1, "u_r2": u2, "d": dist[i]})
    return result


def _field_pool(space, radius, pool_size, rng):
    """Point-assigned fields for a small random pool of nearby vertices."""
    window = _window(space, radius)
    zone = max(4, radius // 5)
    inner = window.indices_within(zone // 2)
    picks = sorted(rng.sample(inner, min(pool_size, len(inner))))
    bases = [window.vertices[i] for i in picks]
    hi = radius - zone
    schedule = [r for r in range(max(2, hi // 6), hi + 1,
                                 max(1, hi // 6))]
    fields = point_assigned_family(window, bases, schedule, zone)
    return window, bases, fields


def suite_anti_triangle(space, radius, trials, seed, pool_size=8):
    """u_x(y) + u_y(z) <= u_x(z) on sampled triples from a field pool."""
    rng = random.Random(seed)
    window, bases, fields = _field_pool(space, radius, pool_size, rng)
    result = SuiteResult("anti-triangle", trials, 0)
    labels = window.space.vertex_label
    for _ in range(trials):
        x, y, z = (rng.choice(bases) for _ in range(3))
        fx, fy = fields[x], fields[y]
        if not (fx.stable_at(y) and fy.stable_at(z) and fx.stable_at(z)):
            continue
        result.checked += 1
        if not anti_triangle_check(fx, fy, z):
            result.violations.append(
                {"x": labels(x), "y": labels(y), "z": labels(z),
                 "u_x_y": fx.value_at(y), "u_y_z": fy.value_at(z),
                 "u_x_z": fx.value_at(z)})
    result.stats["pool"] = [labels(b) for b in bases]
    return result


def suite_lipschitz(space, radius, trials, seed, pool_size=8):
    """sup_zone |u_a - u_b| <= d(a, b) over sampled base pairs."""
    rng = random.Random(seed)
    window, bases, fields = _field_pool(space, radius, pool_size, rng)
    result = SuiteResult("lipschitz", trials, 0)
    labels = window.space.vertex_label
    for _ in range(trials):
        a, b = rng.choice(bases), rng.choice(bases)
        sup, bound = base_lipschitz_gap(fields[a], fields[b])
        result.checked += 1
        if sup > bound:
            result.violations.append(
                {"a": labels(a), "b": labels(b), "sup": sup, "d": bound})
    result.stats["pool"] = [labels(b) for b in bases]
    return result


def suite_gromov(space, radius, trials, seed):
    """Sublevel identity u(x) = t + d(x, {u <= t}) on the point-assigned
    field, at ``trials`` sampled integer thresholds."""
    window = _window(space, radius)
    rng = random.Random(seed)
    zone = max(4, radius // 5)
    hi = radius - zone
    schedule = list(range(max(2, hi // 6), hi + 1, max(1, hi // 6)))
    fld, _ = u_point_assigned(window, schedule, zone)
    lo_t = min(fld.values.values())
    hi_t = max(fld.values.values())
    ts = sorted({rng.randint(lo_t, hi_t) for _ in range(trials)}) \
        if hi_t > lo_t else [lo_t]
    report = gromov_check(fld, ts)
    result = SuiteResult("gromov", trials, sum(report.checked.values()))
    for t, v, u, d in report.violations:
        result.violations.append({"t": t, "vertex": space.vertex_label(v),
                                  "value": u, "sublevel_distance": d})
    result.stats["t_samples"] = ts
    result.stats["skipped"] = report.skipped
    return result


def suite_coray(space, radius, trials, seed):
    """Every sampled in-zone vertex yields >= 1 traced co-ray and all
    traced co-rays pass the exact gradient verification."""
    window = _window(space, radius)
    rng = random.Random(seed)
    zone = max(4, radius // 5)
    hi = radius - zone
    schedule = list(range(max(2, hi // 6), hi + 1, max(1, hi // 6)))
    fld, _ = u_point_assigned(window, schedule, zone)
    starts = window.indices_within(zone)
    result = SuiteResult("coray", trials, 0)
    traced = 0
    for _ in range(trials):
        i = rng.choice(starts)
        trace = trace_corays(fld, window.vertices[i], max_paths=16)
        if not trace.paths:
            result.violations.append({"start": _label(window, i),
                                      "reason": "no co-ray traced"})
            continue
        for cr in trace.paths:
            result.checked += 1
            traced += 1
            if not verify_gradient(cr, fld):
                result.violations.append(
                    {"start": _label(window, i),
                     "path": [window.space.vertex_label(v)
                              for v in cr.vertices],
                     "reason": "gradient identity failed"})
    result.stats["traced"] = traced
    return result


def suite_sphere(space, radius, trials, seed):
    """Every vertex of S_r has a neighbor on S_{r-1}: spheres grow by
    unit steps, the discrete trace of the geodesic property."""
    window = _window(space, radius)
    rng = random.Random(seed)
    dist = window.dist_from_base
    result = SuiteResult("sphere", trials, 0)
    for _ in range(trials):
        r = rng.randint(1, radius)
        for v in sphere(window, r):
            i = window.index[v]
            result.checked += 1
            if not any(dist[j] == r - 1 for j in window.adjacency[i]):
                result.violations.append({"r": r,
                                          "vertex": _label(window, i)})
    return result


SUITES = {
    "monotone": suite_monotone,
    "anti-triangle": suite_anti_triangle,
    "lipschitz": suite_lipschitz,
    "gromov": suite_gromov,
    "coray": suite_coray,
    "sphere": suite_sphere,
}


def run_suite(name, space, radius, trials, seed):
    fn = SUITES.get(name)
    if fn is None:
        raise DomainError(f"unknown suite {name!r}; "
                          f"choose from {sorted(SUITES)}")
    return fn(space, radius, trials, seed)
