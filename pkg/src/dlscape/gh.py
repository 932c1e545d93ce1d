"""Pointed Gromov-Hausdorff toolkit on finite pointed metric spaces.

Distances are scaled integers (real distance = entry / scale) so every
distortion, bound, and certificate below is an exact Fraction.  The
pointed GH distance itself is never computed; only the sandwich
  D*/2 <= d_pGH <= D*
for D* the minimal distortion over pointed correspondences, plus the
epsilon-isometry and (eps, delta)-approximation certificates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, MetricError, ResourceLimitError
from .space import pairwise_dist

SEARCH_BUDGET = 8
NODE_CAP = 500_000


@dataclass(frozen=True)
class FiniteMetricSpace:
    """Pointed metric space given by a scaled-integer distance matrix."""

    n: int
    dist: tuple            # n x n tuple of tuples, integer entries
    base: int
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        n, d = self.n, self.dist
        if n < 1 or len(d) != n or any(len(row) != n for row in d):
            raise MetricError(f"matrix shape does not match n={n}")
        if not 0 <= self.base < n:
            raise MetricError(f"base index {self.base} out of range")
        if self.scale <= 0:
            raise MetricError("scale must be positive")
        for i in range(n):
            if d[i][i] != 0:
                raise MetricError("nonzero diagonal", witness=(i, i, i))
            for j in range(n):
                if d[i][j] != d[j][i]:
                    raise MetricError("asymmetric entry", witness=(i, j, i))
                if i != j and d[i][j] <= 0:
                    raise MetricError("non-positive off-diagonal",
                                      witness=(i, j, i))
                for k in range(n):
                    if d[i][j] > d[i][k] + d[k][j]:
                        raise MetricError("triangle inequality fails",
                                          witness=(i, k, j))

    def real(self, i, j):
        """Distance in real (unscaled) units, exact."""
        return Fraction(self.dist[i][j]) / self.scale

    def real_matrix(self):
        return [[self.real(i, j) for j in range(self.n)]
                for i in range(self.n)]

    @classmethod
    def from_window_sample(cls, window, sample, base=None):
        """Sampled submetric of a window; distances must be exact, so the
        sample has to sit within R // 3 of the window base."""
        sample = tuple(sample)
        if base is None:
            base = window.base
        if base not in sample:
            raise DomainError("base vertex must belong to the sample")
        mat = tuple(map(tuple, pairwise_dist(window, sample)))
        return cls(len(sample), mat, sample.index(base), window.space.scale)

    def to_json(self):
        return {"n": self.n, "base": self.base,
                "scale": {"num": self.scale.numerator,
                          "den": self.scale.denominator},
                "dist": [list(row) for row in self.dist]}

    @classmethod
    def from_json(cls, data):
        try:
            scale = Fraction(data["scale"]["num"], data["scale"]["den"])
            dist = tuple(tuple(int(v) for v in row) for row in data["dist"])
            return cls(int(data["n"]), dist, int(data["base"]), scale)
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed finite-space JSON: {exc}") from exc


def distortion(pairs, X, Y):
    """max |d_X(x,x') - d_Y(y,y')| over pairs of pairs, exact Fraction."""
    pairs = sorted(pairs)
    best = Fraction(0)
    for (i1, j1), (i2, j2) in \
            itertools.combinations_with_replacement(pairs, 2):
        gap = abs(X.real(i1, i2) - Y.real(j1, j2))
        if gap > best:
            best = gap
    return best


@dataclass(frozen=True)
class Correspondence:
    """Pointed correspondence with its exact distortion."""

    pairs: frozenset
    distortion: Fraction
    proved_optimal: bool = True

    def validate(self, X, Y):
        if (X.base, Y.base) not in self.pairs:
            raise DomainError("correspondence does not relate the bases")
        if {i for i, _ in self.pairs} != set(range(X.n)) or \
                {j for _, j in self.pairs} != set(range(Y.n)):
            raise DomainError("correspondence does not cover both spaces")
        if distortion(self.pairs, X, Y) != self.distortion:
            raise DomainError("stored distortion does not match the pairs")

    def to_json(self):
        return {"pairs": sorted(map(list, self.pairs)),
                "distortion": str(self.distortion),
                "proved_optimal": self.proved_optimal}


def brute_force_min_distortion(X, Y):
    """Full-relation minimum over all pointed correspondences.

    Exponential in n_X * n_Y; the exhaustive reduction oracle for tiny
    spaces only.
    """
    if X.n * Y.n > 12:
        raise ResourceLimitError("brute force limited to n_X * n_Y <= 12")
    base_pair = (X.base, Y.base)
    optional = [(i, j) for i in range(X.n) for j in range(Y.n)
                if (i, j) != base_pair]
    best = None
    for mask in range(1 << len(optional)):
        pairs = [base_pair] + [p for k, p in enumerate(optional)
                               if mask >> k & 1]
        if {i for i, _ in pairs} != set(range(X.n)) or \
                {j for _, j in pairs} != set(range(Y.n)):
            continue
        dis = distortion(pairs, X, Y)
        if best is None or dis < best.distortion:
            best = Correspondence(frozenset(pairs), dis)
    return best


def _search_union(X, Y, node_cap):
    """Branch and bound over unions graph(f) | graph(g) with the bases
    pinned.  Every pointed correspondence contains such a union and
    distortion only grows under inclusion, so the minimum over unions is
    the minimum over all pointed correspondences.

    Returns (pairs, distortion, proved) with deterministic tie-breaking:
    slots in fixed order, candidates by index, first strict improvement
    kept.
    """
    dX, dY = X.real_matrix(), Y.real_matrix()
    slots = [("f", i) for i in range(X.n) if i != X.base] + \
            [("g", j) for j in range(Y.n) if j != Y.base]
    base_pair = (X.base, Y.base)
    best_pairs, best_dis = None, None
    nodes = 0
    proved = True

    def gap(p, q):
        return abs(dX[p[0]][q[0]] - dY[p[1]][q[1]])

    stack = [([base_pair], Fraction(0), 0)]
    while stack:
        pairs, dis, depth = stack.pop()
        nodes += 1
        if nodes > node_cap:
            proved = False
            break
        if best_dis is not None and dis >= best_dis:
            continue
        if depth == len(slots):
            best_pairs, best_dis = pairs, dis
            continue
        side, k = slots[depth]
        rng = range(Y.n) if side == "f" else range(X.n)
        children = []
        for t in rng:
            p = (k, t) if side == "f" else (t, k)
            new_dis = dis
            ok = True
            for q in pairs:
                g = gap(p, q)
                if g > new_dis:
                    new_dis = g
                if best_dis is not None and new_dis >= best_dis:
                    ok = False
                    break
            if ok:
                children.append((pairs + [p], new_dis, depth + 1))
        stack.extend(reversed(children))
    return best_pairs, best_dis, proved


def min_distortion_correspondence(X, Y, budget=SEARCH_BUDGET,
                                  node_cap=NODE_CAP):
    """Minimum-distortion pointed correspondence, exact within budget.

    Beyond the budget the search is capped and the best correspondence
    found is returned with ``proved_optimal=False``.
    """
    cap = node_cap if max(X.n, Y.n) <= budget else min(node_cap, 50_000)
    pairs, dis, proved = _search_union(X, Y, cap)
    if pairs is None:
        raise ResourceLimitError("correspondence search found no complete "
                                 "assignment within the node cap")
    if max(X.n, Y.n) > budget:
        proved = False
    corr = Correspondence(frozenset(pairs), dis, proved)
    corr.validate(X, Y)
    return corr


def gh_bounds(X, Y, budget=SEARCH_BUDGET):
    """(lower, upper, correspondence): D*/2 <= pointed GH <= D*."""
    corr = min_distortion_correspondence(X, Y, budget=budget)
    return corr.distortion / 2, corr.distortion, corr


@dataclass(frozen=True)
class EpsIsometry:
    """Function table X -> Y with its exact distortion and net radius."""

    mapping: tuple          # mapping[i] = image index in Y
    dis: Fraction
    net_eps: Fraction

    def to_json(self):
        return {"mapping": list(self.mapping), "dis": str(self.dis),
                "net_eps": str(self.net_eps)}


def map_distortion(mapping, X, Y):
    return max((abs(X.real(i, k) - Y.real(mapping[i], mapping[k]))
                for i in range(X.n) for k in range(i, X.n)),
               default=Fraction(0))


def map_net_eps(mapping, Y):
    image = set(mapping)
    return max(min(Y.real(j, m) for m in image) for j in range(Y.n))


def build_eps_isometry(corr, X, Y):
    """Pick the smallest-index correspondent per point (base pinned).

    Guarantees dis f <= dis corr and the image is a (dis corr)-net.
    """
    corr.validate(X, Y)
    mapping = []
    for i in range(X.n):
        if i == X.base:
            mapping.append(Y.base)
        else:
            mapping.append(min(j for a, j in corr.pairs if a == i))
    mapping = tuple(mapping)
    return EpsIsometry(mapping, map_distortion(mapping, X, Y),
                       map_net_eps(mapping, Y))


def corr_from_isometry(iso, X, Y, eps):
    """Correspondence {(x, y) : d_Y(f(x), y) <= eps} from an eps-isometry.

    Its distortion is at most 3*eps (checked exactly), so it certifies
    pointed GH <= 3*eps.
    """
    eps = Fraction(eps)
    if iso.dis > eps or iso.net_eps > eps:
        raise DomainError(f"map is not an {eps}-isometry "
                          f"(dis={iso.dis}, net_eps={iso.net_eps})")
    pairs = {(i, j) for i in range(X.n) for j in range(Y.n)
             if Y.real(iso.mapping[i], j) <= eps}
    pairs.add((X.base, Y.base))
    dis = distortion(pairs, X, Y)
    corr = Correspondence(frozenset(pairs), dis, proved_optimal=False)
    corr.validate(X, Y)
    if dis > 3 * eps:
        raise DomainError(f"induced correspondence has distortion {dis} "
                          f"> 3*eps = {3 * eps}")
    return corr


@dataclass
class Certificate:
    ok: bool
    bound: Fraction | None
    witness: tuple | None
    reason: str = ""

    def to_json(self):
        return {"ok": self.ok,
                "bound": None if self.bound is None else str(self.bound),
                "witness": list(self.witness) if self.witness else None,
                "reason": self.reason}


def eps_delta_certificate(X, Y, net_x, net_y, eps, delta):
    """Aligned eps-nets with distances within delta certify
    pointed GH < 2*eps + delta."""
    eps, delta = Fraction(eps), Fraction(delta)
    if delta <= 0:
        raise DomainError("delta must be positive")
    net_x, net_y = list(net_x), list(net_y)
    if len(net_x) != len(net_y) or not net_x:
        raise DomainError("nets must be non-empty and aligned by position")
    if X.base not in net_x or Y.base not in net_y:
        raise DomainError("nets must contain the base points")
    for space, net, name in ((X, net_x, "X"), (Y, net_y, "Y")):
        for j in range(space.n):
            if min(space.real(j, m) for m in net) > eps:
                return Certificate(False, None, (name, j),
                                   f"point {j} of {name} is farther than "
                                   f"eps from the net")
    for a in range(len(net_x)):
        for b in range(len(net_x)):
            gap = abs(X.real(net_x[a], net_x[b]) -
                      Y.real(net_y[a], net_y[b]))
            if gap >= delta:
                return Certificate(False, None, (net_x[a], net_x[b]),
                                   f"net distances differ by {gap} >= delta")
    return Certificate(True, 2 * eps + delta, None,
                       "aligned eps-nets with distance gap < delta")


def identity_map(v):
    return v


def nearest_spine_map(v):
    """Pendant-line vertex (n, k) -> line vertex n."""
    return v[0]


def spine_embed_map(v):
    """Line vertex n -> pendant-line spine vertex (n, 0)."""
    return (v, 0)


def double_map(v):
    """Line vertex n -> line vertex 2n (for a half-scale target)."""
    return 2 * v


MAPPINGS = {
    "identity": identity_map,
    "nearest_spine": nearest_spine_map,
    "spine": spine_embed_map,
    "double": double_map,
}


@dataclass
class ExperimentReport:
    """Zone-restricted deviation of point-assigned fields under a map."""

    eps: Fraction
    checked: int
    max_abs_deviation: Fraction
    max_one_sided: Fraction      # u_{y0}(f(x)) - u_{x0}(x), signed max
    abs_bound_ok: bool           # max |...| <= 8 eps
    one_sided_bound_ok: bool     # signed max <= 4 eps
    unstable: list               # vertices skipped as inconclusive
    witness_abs: object = None

    @property
    def conclusive(self):
        return not self.unstable

    def to_json(self, space_x):
        return {
            "eps": str(self.eps),
            "checked": self.checked,
            "max_abs_deviation": str(self.max_abs_deviation),
            "max_one_sided": str(self.max_one_sided),
            "abs_bound_8eps_ok": self.abs_bound_ok,
            "one_sided_bound_4eps_ok": self.one_sided_bound_ok,
            "unstable": [space_x.vertex_label(v) for v in self.unstable],
            "witness_abs": None if self.witness_abs is None
            else space_x.vertex_label(self.witness_abs),
        }


def pa_gh_experiment(field_x, field_y, mapping, eps):
    """Compare point-assigned fields across an eps-isometry-like map.

    Deviations are in real units (hops / scale) so two spaces of
    different scale compare exactly.  Vertices whose value is not flagged
    stable on either side are skipped and listed; the verdict is
    inconclusive unless that list is empty.
    """
    eps = Fraction(eps)
    if eps < 0:
        raise DomainError("eps must be nonnegative")
    if callable(mapping):
        fmap = mapping
    else:
        fmap = mapping.__getitem__
    sx = field_x.window.space.scale
    sy = field_y.window.space.scale
    checked, unstable = 0, []
    max_abs = Fraction(0)
    max_one = None
    witness = None
    wy = field_y.window
    for i in sorted(field_x.values):
        vx = field_x.window.vertices[i]
        vy = fmap(vx)
        j = wy.index.get(vy)
        if j is None or j not in field_y.values:
            raise DomainError(f"map sends {vx!r} outside the target zone")
        if not field_x.report.stable[i] or not field_y.report.stable[j]:
            unstable.append(vx)
            continue
        ux = Fraction(field_x.values[i]) / sx
        uy = Fraction(field_y.values[j]) / sy
        checked += 1
        if abs(uy - ux) > max_abs:
            max_abs = abs(uy - ux)
            witness = vx
        if max_one is None or uy - ux > max_one:
            max_one = uy - ux
    if checked == 0:
        raise DomainError("no stable vertices to compare")
    return ExperimentReport(eps, checked, max_abs, max_one,
                            max_abs <= 8 * eps, max_one <= 4 * eps,
                            unstable, witness)
