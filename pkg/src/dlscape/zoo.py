"""Catalog of graph generators with analytically known answers.

Each generator produces an infinite, connected, locally finite unit-weight
graph.  Where a closed form for the point-assigned field or the induced
pseudo-metric is known, :func:`oracle` exposes it so tests can compare the
generic pipeline against an independent answer.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, GeneratorParamError, UnknownGeneratorError
from .space import GraphSpace


def _parse_int_pair(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise DomainError(f"expected 'x,y', got {text!r}")
    return (int(parts[0]), int(parts[1]))


class Line(GraphSpace):
    """The integer line; contains a geodesic line through every vertex."""

    generator_id = "line"
    degree_bound = 2

    def neighbors(self, v):
        return (v - 1, v + 1)

    def contains(self, v):
        return isinstance(v, int) and not isinstance(v, bool)

    def default_base(self):
        return 0

    def parse_vertex(self, text):
        return int(text)

    def vertex_label(self, v):
        return str(v)


class HalfLine(GraphSpace):
    """The one-ended ray 0,1,2,...; all point-assigned fields coincide."""

    generator_id = "halfline"
    degree_bound = 2

    def neighbors(self, v):
        if v == 0:
            return (1,)
        return (v - 1, v + 1)

    def contains(self, v):
        return isinstance(v, int) and not isinstance(v, bool) and v >= 0

    def default_base(self):
        return 0

    def parse_vertex(self, text):
        v = int(text)
        if v < 0:
            raise DomainError("halfline vertices are non-negative integers")
        return v

    def vertex_label(self, v):
        return str(v)


class Tree(GraphSpace):
    """Infinite rooted b-ary tree; every vertex is a pole for b >= 2.

    Vertices are root-to-vertex child-index tuples; the root is ().
    tree(1) degenerates to the halfline.
    """

    generator_id = "tree"

    def __init__(self, b, scale=Fraction(1)):
        if not isinstance(b, int) or b < 1:
            raise GeneratorParamError("tree branching factor b must be >= 1")
        super().__init__(scale)
        self.b = b
        self.degree_bound = b + 1

    @property
    def params(self):
        return {"b": self.b}

    def neighbors(self, v):
        children = tuple(v + (i,) for i in range(self.b))
        if v:
            return (v[:-1],) + children
        return children

    def contains(self, v):
        return (isinstance(v, tuple)
                and all(isinstance(c, int) and 0 <= c < self.b for c in v))

    def default_base(self):
        return ()

    def parse_vertex(self, text):
        if text in ("", "root"):
            return ()
        v = tuple(int(c) for c in text.split("."))
        self.check_vertex(v)
        return v

    def vertex_label(self, v):
        return "root" if not v else ".".join(str(c) for c in v)


class Grid2D(GraphSpace):
    """The Z^2 lattice with 4-neighbor adjacency."""

    generator_id = "grid2d"
    degree_bound = 4

    def neighbors(self, v):
        x, y = v
        return ((x - 1, y), (x, y - 1), (x, y + 1), (x + 1, y))

    def contains(self, v):
        return (isinstance(v, tuple) and len(v) == 2
                and all(isinstance(c, int) for c in v))

    def default_base(self):
        return (0, 0)

    def parse_vertex(self, text):
        return _parse_int_pair(text)

    def vertex_label(self, v):
        return f"{v[0]},{v[1]}"


class HGraph(GraphSpace):
    """The H-graph: x-axis plus, for every i >= 1, the three-segment arm
    joining (-i,0) to (i,0) through height i, on both signs of x.

    Vertices are integer points (x, y) with y = 0 (axis), 1 <= y <= |x|
    (column at x), or |x| <= y (row at height y).  Edges join unit-distance
    points along a common segment.
    """

    generator_id = "h_graph"
    degree_bound = 4

    def neighbors(self, v):
        x, y = v
        if y == 0:
            if x == 0:
                return ((-1, 0), (1, 0))
            return tuple(sorted(((x - 1, 0), (x + 1, 0), (x, 1))))
        out = []
        ax = abs(x)
        if ax <= y:                       # on the row at height y
            if abs(x - 1) <= y:
                out.append((x - 1, y))
            if abs(x + 1) <= y:
                out.append((x + 1, y))
        if x != 0 and y <= ax:            # on the column at x
            out.append((x, y - 1))
            if y + 1 <= ax:
                out.append((x, y + 1))
        out.sort()
        return tuple(out)

    def contains(self, v):
        if not (isinstance(v, tuple) and len(v) == 2
                and all(isinstance(c, int) for c in v)):
            return False
        x, y = v
        if y < 0:
            return False
        if y == 0:
            return True
        return abs(x) <= y or (x != 0 and y <= abs(x))

    def default_base(self):
        return (0, 0)

    def parse_vertex(self, text):
        v = _parse_int_pair(text)
        self.check_vertex(v)
        return v

    def vertex_label(self, v):
        return f"{v[0]},{v[1]}"


class Stick(GraphSpace):
    """Discrete infinite stick: an apex, m spokes of h interior vertices,
    an m-cycle, and one infinite ray per cycle vertex.

    The apex plays the pole of the smooth model; u_apex = -d(apex, .)
    exactly, and u at other bases matches d(base, apex) - d(., apex) within
    half the cycle circumference.
    """

    generator_id = "stick"

    def __init__(self, m, h, scale=Fraction(1)):
        if not isinstance(m, int) or m < 3:
            raise GeneratorParamError("stick needs m >= 3 cycle vertices")
        if not isinstance(h, int) or h < 0:
            raise GeneratorParamError("stick spoke length h must be >= 0")
        super().__init__(scale)
        self.m = m
        self.h = h
        self.degree_bound = max(m, 4)

    @property
    def params(self):
        return {"m": self.m, "h": self.h}

    def neighbors(self, v):
        m, h = self.m, self.h
        kind = v[0]
        if kind == "apex":
            if h == 0:
                return tuple(("cycle", j) for j in range(m))
            return tuple(("spoke", j, 1) for j in range(m))
        if kind == "spoke":
            _, j, t = v
            down = ("apex",) if t == 1 else ("spoke", j, t - 1)
            up = ("cycle", j) if t == h else ("spoke", j, t + 1)
            return (down, up)
        if kind == "cycle":
            _, j = v
            inward = ("apex",) if h == 0 else ("spoke", j, h)
            return (inward,
                    ("cycle", (j - 1) % m), ("cycle", (j + 1) % m),
                    ("ray", j, 1))
        _, j, t = v
        down = ("cycle", j) if t == 1 else ("ray", j, t - 1)
        return (down, ("ray", j, t + 1))

    def contains(self, v):
        if not isinstance(v, tuple) or not v:
            return False
        kind = v[0]
        if kind == "apex":
            return len(v) == 1
        if kind == "cycle":
            return len(v) == 2 and 0 <= v[1] < self.m
        if kind == "spoke":
            return (len(v) == 3 and 0 <= v[1] < self.m
                    and 1 <= v[2] <= self.h)
        if kind == "ray":
            return len(v) == 3 and 0 <= v[1] < self.m and v[2] >= 1
        return False

    def default_base(self):
        return ("apex",)

    def parse_vertex(self, text):
        parts = text.split(":")
        v = (parts[0],) + tuple(int(p) for p in parts[1:])
        self.check_vertex(v)
        return v

    def vertex_label(self, v):
        return ":".join(str(c) for c in v)

    def dist_to_apex(self, v):
        kind = v[0]
        if kind == "apex":
            return 0
        if kind == "spoke":
            return v[2]
        if kind == "cycle":
            return self.h + 1
        return self.h + 1 + v[2]


class PendantLine(GraphSpace):
    """The integer line with one pendant leaf per integer.

    Vertices are (n, 0) on the spine and (n, 1) leaves; GH-close to the
    plain line at scale 1.
    """

    generator_id = "pendant_line"
    degree_bound = 3

    def neighbors(self, v):
        n, k = v
        if k == 0:
            return ((n - 1, 0), (n, 1), (n + 1, 0))
        return ((n, 0),)

    def contains(self, v):
        return (isinstance(v, tuple) and len(v) == 2
                and isinstance(v[0], int) and v[1] in (0, 1))

    def default_base(self):
        return (0, 0)

    def parse_vertex(self, text):
        v = _parse_int_pair(text)
        self.check_vertex(v)
        return v

    def vertex_label(self, v):
        return f"{v[0]},{v[1]}"


class Cylinder(GraphSpace):
    """The two-ended discrete cylinder Z x Z_m."""

    generator_id = "cylinder"
    degree_bound = 4

    def __init__(self, m, scale=Fraction(1)):
        if not isinstance(m, int) or m < 3:
            raise GeneratorParamError("cylinder needs m >= 3")
        super().__init__(scale)
        self.m = m

    @property
    def params(self):
        return {"m": self.m}

    def neighbors(self, v):
        x, j = v
        m = self.m
        return ((x - 1, j), (x, (j - 1) % m), (x, (j + 1) % m), (x + 1, j))

    def contains(self, v):
        return (isinstance(v, tuple) and len(v) == 2
                and isinstance(v[0], int) and isinstance(v[1], int)
                and 0 <= v[1] < self.m)

    def default_base(self):
        return (0, 0)

    def parse_vertex(self, text):
        v = _parse_int_pair(text)
        self.check_vertex(v)
        return v

    def vertex_label(self, v):
        return f"{v[0]},{v[1]}"


GENERATORS = {
    "line": (Line, {}),
    "halfline": (HalfLine, {}),
    "tree": (Tree, {"b": "branching factor, int >= 1"}),
    "grid2d": (Grid2D, {}),
    "h_graph": (HGraph, {}),
    "stick": (Stick, {"m": "cycle length, int >= 3",
                      "h": "spoke interior vertices, int >= 0"}),
    "pendant_line": (PendantLine, {}),
    "cylinder": (Cylinder, {"m": "circumference, int >= 3"}),
}


def build(name, params=None, scale=Fraction(1)):
    """Instantiate a generator from the catalog."""
    entry = GENERATORS.get(name)
    if entry is None:
        raise UnknownGeneratorError(
            f"unknown generator {name!r}; known: {sorted(GENERATORS)}")
    cls, schema = entry
    params = dict(params or {})
    unknown = set(params) - set(schema)
    if unknown:
        raise GeneratorParamError(
            f"{name} does not take parameters {sorted(unknown)}")
    missing = set(schema) - set(params)
    if missing:
        raise GeneratorParamError(
            f"{name} requires parameters {sorted(missing)}")
    return cls(scale=Fraction(scale), **params)


def build_from_dict(spec):
    """Build from a space-spec mapping {generator, params, scale}."""
    if "generator" not in spec:
        raise DomainError("space spec needs a 'generator' key")
    scale = spec.get("scale", {"num": 1, "den": 1})
    return build(spec["generator"], spec.get("params"),
                 Fraction(scale["num"], scale["den"]))


def catalog():
    """Generator names, parameter schemas, and available oracles."""
    return {
        name: {
            "params": dict(schema),
            "oracles": sorted(_ORACLES.get(name, {})),
        }
        for name, (cls, schema) in sorted(GENERATORS.items())
    }


# --------------------------------------------------------------------------
# Closed-form oracles


def _h_graph_u(space, base, vertex):
    if base != (0, 0):
        raise DomainError("h_graph oracle only knows the base (0,0)")
    x, y = vertex
    if y == 0:
        return -abs(x)
    if abs(x) <= y:      # row point: reach the axis over a corner
        return y - abs(x)
    return y - abs(x)    # column point: same closed form


def _tree_u(space, base, vertex):
    # Every vertex of tree(b>=2) is a pole; tree(1) is the halfline with
    # the same formula only when the base is the root.
    if space.b == 1 and base != ():
        raise DomainError("tree(1) oracle only supports the root base")
    n = 0
    common = 0
    for a, b in zip(base, vertex):
        if a == b:
            common += 1
        else:
            break
    n = (len(base) - common) + (len(vertex) - common)
    return -n


def _line_u(space, base, vertex):
    return -abs(vertex - base)


def _halfline_u(space, base, vertex):
    return base - vertex


def _stick_u_tol(space, base, vertex):
    # d(base, apex) - d(., apex), valid within half the cycle circumference.
    ref = space.dist_to_apex(base) - space.dist_to_apex(vertex)
    return ref, space.m // 2


_ORACLES = {
    "h_graph": {"point_assigned": _h_graph_u},
    "tree": {"point_assigned": _tree_u},
    "line": {"point_assigned": _line_u,
             "rho": lambda space, x, y: Fraction(abs(x - y), 1) / space.scale},
    "halfline": {"point_assigned": _halfline_u,
                 "rho": lambda space, x, y: Fraction(0)},
    "stick": {"point_assigned_tol": _stick_u_tol},
}


def oracle(space, quantity, *args):
    """Closed-form expected value for supported (generator, quantity) pairs.

    * ``point_assigned`` (base, vertex) -> exact integer hop value
    * ``point_assigned_tol`` (base, vertex) -> (reference, tolerance)
    * ``rho`` (x, y) -> exact Fraction in reported units
    """
    table = _ORACLES.get(space.generator_id)
    if not table or quantity not in table:
        raise DomainError(
            f"no {quantity!r} oracle for generator {space.generator_id}")
    return table[quantity](space, *args)
