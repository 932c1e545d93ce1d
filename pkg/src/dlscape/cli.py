"""Command-line front end.

Space specs come either as a JSON file path ({"generator", "params",
"scale"}) or as shorthand ``name`` / ``name:key=val,key=val`` with an
optional ``scale=p/q`` entry.  All output is canonical JSON (sorted keys,
fixed separators) so identical configs produce byte-identical artifacts.

Exit codes: 0 success, 1 invariant violation (JSON witness emitted),
2 usage / precondition error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import checks, corays, fields, gh, pseudometric, zoo
from .errors import DlscapeError
from .space import materialize_window, shortest_path

DEFAULT_SEED = 0


def _canonical(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _parse_fraction(text):
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def load_space(spec):
    """JSON file path, or shorthand 'name' / 'name:key=val,...'."""
    if os.path.exists(spec) or spec.endswith(".json"):
        with open(spec) as fh:
            return zoo.build_from_dict(json.load(fh))
    name, _, tail = spec.partition(":")
    params, scale = {}, Fraction(1)
    if tail:
        for item in tail.split(","):
            key, _, val = item.partition("=")
            if not val:
                raise DlscapeError(
                    f"bad space parameter {item!r}; expected key=value")
            if key == "scale":
                scale = _parse_fraction(val)
            else:
                params[key] = int(val)
    return zoo.build(name, params, scale)


def _window_for(args, space=None):
    space = space if space is not None else load_space(args.space)
    base = space.parse_vertex(args.base) if args.base is not None \
        else space.default_base()
    return space, materialize_window(space, base, args.radius)


def _schedule(args):
    step = args.r_step if args.r_step else max(1, args.r_max // 10)
    sched = list(range(step, args.r_max + 1, step))
    if sched[-1] != args.r_max:
        sched.append(args.r_max)
    return sched


def _zone(args):
    return args.zone if args.zone else max(1, args.radius // 5)


def _emit(args, text):
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _field_csv(field):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["vertex", "dist_from_base", "value", "stable",
                     "last_change"])
    window = field.window
    space = window.space
    for i in field.zone_indices():
        rep = field.report
        writer.writerow([space.vertex_label(window.vertices[i]),
                         window.dist_from_base[i], field.values[i],
                         rep.stable[i], rep.last_change[i]])
    return buf.getvalue()


def _point_assigned(args):
    space, window = _window_for(args)
    fld, _ = fields.u_point_assigned(window, _schedule(args), _zone(args),
                                     args.tail)
    return space, window, fld


def cmd_zoo(args):
    if args.action != "list":
        raise DlscapeError(f"unknown zoo action {args.action!r}")
    _emit(args, _canonical(zoo.catalog()))
    return 0


def cmd_field(args):
    _, _, fld = _point_assigned(args)
    if args.csv:
        _emit(args, _field_csv(fld))
    else:
        _emit(args, _canonical(fields.field_to_json(fld)))
    return 0


def cmd_level_set(args):
    space, _, fld = _point_assigned(args)
    verts = fields.level_set(fld, args.level)
    _emit(args, _canonical({"level": args.level,
                            "vertices": [space.vertex_label(v)
                                         for v in verts]}))
    return 0


def _ray_from_args(args, space, window):
    if args.ray:
        return [space.parse_vertex(t) for t in args.ray.split(";")]
    if args.ray_target:
        return shortest_path(window, window.base,
                             space.parse_vertex(args.ray_target))
    raise DlscapeError("provide --ray or --ray-target")


def cmd_busemann(args):
    space, window = _window_for(args)
    ray = _ray_from_args(args, space, window)
    T = args.T if args.T else len(ray) - 1
    fld, _ = fields.busemann(window, ray, T, _zone(args), args.tail)
    if args.csv:
        _emit(args, _field_csv(fld))
    else:
        _emit(args, _canonical(fields.field_to_json(fld)))
    return 0


def cmd_horo(args):
    space, window = _window_for(args)
    points = [space.parse_vertex(t) for t in args.points.split(";")]
    fld, _ = fields.horofunction(window, points, _zone(args), args.tail)
    if args.csv:
        _emit(args, _field_csv(fld))
    else:
        _emit(args, _canonical(fields.field_to_json(fld)))
    return 0


def cmd_coray(args):
    space, window, fld = _point_assigned(args)
    start = space.parse_vertex(args.start) if args.start is not None \
        else window.base
    trace = corays.trace_corays(fld, start, max_paths=args.max_paths)
    out_paths, all_ok = [], True
    for cr in trace.paths:
        ok = corays.verify_gradient(cr, fld)
        all_ok = all_ok and ok
        out_paths.append({
            "vertices": [space.vertex_label(v) for v in cr.vertices],
            "decrements": list(cr.decrements),
            "truncated": cr.truncated,
            "gradient_ok": ok,
        })
    payload = {"start": space.vertex_label(start),
               "descending_neighbors": corays.uniqueness_probe(fld, start),
               "paths": out_paths, "exhausted": trace.exhausted}
    _emit(args, _canonical(payload))
    return 0 if all_ok else 1


def cmd_rho(args):
    space, window = _window_for(args)
    sample = [space.parse_vertex(t) for t in args.sample.split(";")]
    sched, zone = _schedule(args), _zone(args)
    flds = pseudometric.point_assigned_family(window, sample, sched, zone,
                                              args.tail)
    rho = pseudometric.rho_matrix(window, sample, sched, zone, args.tail,
                                  fields=flds)
    part = pseudometric.equivalence_classes(window, sample, sched, zone,
                                            args.tail, fields=flds, rho=rho)
    bad = rho.axiom_violations()
    payload = {"rho": rho.to_json(space), "partition": part.to_json(space),
               "axiom_violations": [[str(x) for x in w] for w in bad]}
    _emit(args, _canonical(payload))
    return 0 if not bad else 1


def cmd_gh(args):
    with open(args.x) as fh:
        X = gh.FiniteMetricSpace.from_json(json.load(fh))
    with open(args.y) as fh:
        Y = gh.FiniteMetricSpace.from_json(json.load(fh))
    lower, upper, corr = gh.gh_bounds(X, Y, budget=args.budget)
    iso = gh.build_eps_isometry(corr, X, Y)
    payload = {"lower": str(lower), "upper": str(upper),
               "correspondence": corr.to_json(),
               "eps_isometry": iso.to_json()}
    _emit(args, _canonical(payload))
    return 0


def cmd_experiment(args):
    if args.kind != "pa-gh":
        raise DlscapeError(f"unknown experiment {args.kind!r}")
    space_x = load_space(args.space_x)
    space_y = load_space(args.space_y)
    wx = materialize_window(space_x, space_x.default_base(), args.radius)
    wy = materialize_window(space_y, space_y.default_base(), args.radius)
    sched, zone = _schedule(args), _zone(args)
    fx, _ = fields.u_point_assigned(wx, sched, zone, args.tail)
    fy, _ = fields.u_point_assigned(wy, sched, zone, args.tail)
    mapping = gh.MAPPINGS.get(args.map)
    if mapping is None:
        raise DlscapeError(f"unknown map {args.map!r}; "
                           f"choose from {sorted(gh.MAPPINGS)}")
    report = gh.pa_gh_experiment(fx, fy, mapping, _parse_fraction(args.eps))
    payload = report.to_json(space_x)
    payload["conclusive"] = report.conclusive
    _emit(args, _canonical(payload))
    if not report.conclusive:
        return 0
    return 0 if report.abs_bound_ok and report.one_sided_bound_ok else 1


def cmd_check(args):
    space = load_space(args.space)
    result = checks.run_suite(args.suite, space, args.radius, args.trials,
                              args.seed)
    _emit(args, _canonical(result.to_json()))
    return 0 if result.ok else 1


def _add_output(p):
    p.add_argument("--output", help="write to file instead of stdout")


def _add_window_args(p):
    p.add_argument("--space", required=True,
                   help="space spec: JSON file or name[:key=val,...]")
    p.add_argument("--base", help="base vertex label (generator default "
                                  "if omitted)")
    p.add_argument("--radius", type=int, required=True,
                   help="window radius R")
    p.add_argument("--zone", type=int, help="validity zone (default R//5)")
    p.add_argument("--tail", type=int,
                   help="stability tail W (default 2*zone)")


def _add_schedule_args(p):
    p.add_argument("--r-max", type=int, required=True,
                   help="largest sphere radius in the schedule")
    p.add_argument("--r-step", type=int,
                   help="schedule step (default r-max//10)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dlscape",
        description="Distance-like functions, co-rays, the pseudo-metric "
                    "rho, and pointed GH bounds on graph windows.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zoo", help="generator catalog")
    p.add_argument("action", choices=["list"])
    _add_output(p)
    p.set_defaults(fn=cmd_zoo)

    p = sub.add_parser("field", help="point-assigned field")
    _add_window_args(p)
    _add_schedule_args(p)
    p.add_argument("--csv", action="store_true", help="CSV table output")
    _add_output(p)
    p.set_defaults(fn=cmd_field)

    p = sub.add_parser("level-set", help="exact level set of the field")
    _add_window_args(p)
    _add_schedule_args(p)
    p.add_argument("--level", type=int, required=True)
    _add_output(p)
    p.set_defaults(fn=cmd_level_set)

    p = sub.add_parser("busemann", help="Busemann field along a ray")
    _add_window_args(p)
    p.add_argument("--ray", help="semicolon-separated vertex labels")
    p.add_argument("--ray-target",
                   help="trace the BFS geodesic from base to this vertex")
    p.add_argument("--T", type=int, help="last anchor index (default: ray "
                                         "length - 1)")
    p.add_argument("--csv", action="store_true")
    _add_output(p)
    p.set_defaults(fn=cmd_busemann)

    p = sub.add_parser("horo", help="horofunction field along points")
    _add_window_args(p)
    p.add_argument("--points", required=True,
                   help="semicolon-separated vertex labels, diverging")
    p.add_argument("--csv", action="store_true")
    _add_output(p)
    p.set_defaults(fn=cmd_horo)

    p = sub.add_parser("coray", help="trace and verify co-rays")
    _add_window_args(p)
    _add_schedule_args(p)
    p.add_argument("--start", help="start vertex label (default: base)")
    p.add_argument("--max-paths", type=int, default=64)
    _add_output(p)
    p.set_defaults(fn=cmd_coray)

    p = sub.add_parser("rho", help="pseudo-metric matrix on a sample")
    _add_window_args(p)
    _add_schedule_args(p)
    p.add_argument("--sample", required=True,
                   help="semicolon-separated vertex labels")
    _add_output(p)
    p.set_defaults(fn=cmd_rho)

    p = sub.add_parser("gh", help="pointed GH bounds for two finite spaces")
    p.add_argument("--x", required=True, help="finite-space JSON file")
    p.add_argument("--y", required=True, help="finite-space JSON file")
    p.add_argument("--budget", type=int, default=gh.SEARCH_BUDGET)
    _add_output(p)
    p.set_defaults(fn=cmd_gh)

    p = sub.add_parser("experiment", help="experiment harnesses")
    p.add_argument("kind", choices=["pa-gh"])
    p.add_argument("--space-x", required=True)
    p.add_argument("--space-y", required=True)
    p.add_argument("--eps", required=True, help="epsilon, int or p/q")
    p.add_argument("--map", default="identity",
                   help=f"named map, one of {sorted(gh.MAPPINGS)}")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--zone", type=int)
    p.add_argument("--tail", type=int)
    _add_schedule_args(p)
    _add_output(p)
    p.set_defaults(fn=cmd_experiment)

    p = sub.add_parser("check", help="seeded invariant suites")
    p.add_argument("--suite", required=True,
                   help=f"one of {sorted(checks.SUITES)}")
    p.add_argument("--space", required=True)
    p.add_argument("--radius", type=int, default=48)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    _add_output(p)
    p.set_defaults(fn=cmd_check)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except DlscapeError as exc:
        payload = {"error": type(exc).__name__, "message": str(exc)}
        for attr in ("parameter", "witness", "vertex"):
            val = getattr(exc, attr, None)
            if val is not None:
                payload[attr] = str(val)
        sys.stderr.write(_canonical(payload))
        return 2
    except OSError as exc:
        sys.stderr.write(_canonical({"error": "OSError",
                                     "message": str(exc)}))
        return 2


if __name__ == "__main__":
    sys.exit(main())
