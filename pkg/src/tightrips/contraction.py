"""The combing retraction onto a shortest loop, with certification.

Given a shortest simple loop alpha in a metric graph and a non-vertex
basepoint a on it, the combing map fixes alpha pointwise and slides every
off-loop point x toward a: if the nearest loop point p of x satisfies
d(x, p) < d(a, p), then x maps to the point at arc distance d(x, p) from p
along the shorter arc toward a; every other point maps to a itself.

Because trees attach to the loop at graph vertices, the nearest loop point
of any off-loop x is always a loop vertex, which keeps evaluation exact
and finite.  All verifications below are exact-rational certificates over
finite point sets: mesh samples plus the breakpoints where the relevant
piecewise-linear functions can change slope.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    HypothesisViolationError,
    InvalidBasepointError,
    InvalidInputError,
)
from .metric_graph import (
    GraphPoint,
    Loop,
    LoopChart,
    MetricGraph,
    SampledSpace,
    format_rational,
    geodesic_distance,
    parse_rational,
    shortest_cycle,
)

logger = logging.getLogger("tightrips.contraction")


class CombingMap:
    """Immutable combing retraction; use build_combing_contraction."""

    def __init__(self, g: MetricGraph, alpha: Loop, chart: LoopChart,
                 theta_a: Fraction, basepoint_shift: Fraction):
        self.graph = g
        self.alpha = alpha
        self.chart = chart
        self.theta_a = theta_a
        self.basepoint_shift = basepoint_shift
        self.half = chart.total / 2
        self.a_point = chart.point_at(theta_a)
        self.antipode_point = chart.point_at(theta_a + self.half)
        self.tie_count = 0
        self._cache: dict[GraphPoint, GraphPoint] = {}

    # -- geometry helpers ---------------------------------------------------

    def loop_vertex_thetas(self):
        return self.chart.vertex_theta

    def dist_a_to_theta(self, theta: Fraction) -> Fraction:
        return self.chart.arc_distance(self.theta_a, theta)

    def nearest_loop_vertex(self, x: GraphPoint):
        """(vertex, distance, all tied vertices) for an off-loop point."""
        best = None
        ties = []
        for w, theta_w in sorted(self.chart.vertex_theta.items(),
                                 key=lambda t: t[1]):
            d = geodesic_distance(self.graph, x, self.graph.vertex_point(w))
            if best is None or d < best[1]:
                best = (w, d, theta_w)
                ties = [w]
            elif d == best[1]:
                ties.append(w)
        return best[0], best[1], best[2], ties

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, x: GraphPoint) -> GraphPoint:
        x = self.graph.validate_point(x)
        hit = self._cache.get(x)
        if hit is not None:
            return hit
        out = self._evaluate(x)
        self._cache[x] = out
        return out

    def _evaluate(self, x: GraphPoint) -> GraphPoint:
        theta_x = self.chart.theta_of(x)
        if theta_x is not None:
            return self.chart.point_at(theta_x)
        w, d, theta_w, ties = self.nearest_loop_vertex(x)
        d_a = self.dist_a_to_theta(theta_w)
        if len(ties) > 1:
            inside = [t for t in ties
                      if d < self.dist_a_to_theta(self.chart.vertex_theta[t])]
            if len(inside) > 1:
                self.tie_count += 1
                logger.warning(
                    "nearest-loop-point tie inside the combed region at %s "
                    "(vertices %s); breaking toward the lower arc coordinate",
                    x.label(), inside,
                )
        if d >= d_a:
            return self.a_point
        rel = (theta_w - self.theta_a) % self.chart.total
        if rel < self.half:
            new_rel = rel - d
        else:
            new_rel = rel + d
        return self.chart.point_at((self.theta_a + new_rel) % self.chart.total)


def build_combing_contraction(g: MetricGraph, alpha: Loop,
                              a: GraphPoint) -> CombingMap:
    """Construct the combing map onto a shortest loop.

    alpha must achieve the graph's shortest-cycle length (the theorem
    hypothesis); a must lie on alpha.  If a or its antipode lands on a
    vertex, a is shifted by multiples of 1/1000 of the shortest loop edge
    until both are interior points; the shift is recorded on the map.
    """
    if not alpha.is_simple:
        raise HypothesisViolationError("alpha must be a simple loop")
    sc = shortest_cycle(g)
    if alpha.length != sc.length:
        raise HypothesisViolationError(
            f"alpha has length {format_rational(alpha.length)} but the "
            f"shortest cycle has length {format_rational(sc.length)}"
        )
    chart = LoopChart(g, alpha)
    theta = chart.theta_of(g.validate_point(a))
    if theta is None:
        raise InvalidBasepointError("basepoint does not lie on alpha")
    delta = min(g.edges[eid].length for eid, _ in alpha.steps) / 1000
    half = chart.total / 2
    shift = Fraction(0)
    attempts = 0
    max_attempts = 4 * len(chart.vertex_theta) + 8
    while (chart.point_at(theta).is_vertex
           or chart.point_at(theta + half).is_vertex):
        theta = (theta + delta) % chart.total
        shift += delta
        attempts += 1
        if attempts > max_attempts:
            raise InvalidBasepointError(
                "could not perturb the basepoint off the vertex set"
            )
    return CombingMap(g, alpha, chart, theta, shift)


def evaluate(cmap: CombingMap, x: GraphPoint) -> GraphPoint:
    return cmap.evaluate(x)


# ---------------------------------------------------------------------------
# discretization
# ---------------------------------------------------------------------------

@dataclass
class PointMapResult:
    """Index-level image of a sample under the combing map.

    space extends the input sample with any image points that were not
    already sampled; images[i] is the index of f(points[i]) in space.
    """

    space: SampledSpace
    images: list

    def pairs(self):
        return list(enumerate(self.images))


def induced_point_map(cmap: CombingMap, s: SampledSpace) -> PointMapResult:
    if s.graph is not cmap.graph:
        raise InvalidInputError("sample was not drawn from the map's graph")
    image_points = [cmap.evaluate(x) for x in s.points]
    extended = s.with_extra_points(image_points)
    images = []
    for y in image_points:
        idx = extended.index_of(y)
        if idx is None:
            raise InvalidInputError("image point missing after extension")
        images.append(idx)
    return PointMapResult(extended, images)


# ---------------------------------------------------------------------------
# breakpoints
# ---------------------------------------------------------------------------

def _loop_breakpoint_points(cmap: CombingMap) -> list[GraphPoint]:
    pts = [cmap.a_point, cmap.antipode_point]
    for theta in cmap.chart.vertex_theta.values():
        pts.append(cmap.chart.point_at(theta))
    return pts


def _edge_breakpoints(cmap: CombingMap, edge_id: int) -> list[Fraction]:
    """Offsets on one edge where the combing map can change linear piece.

    Per loop vertex w the distance t -> d(x_t, w) is the min of two linear
    functions; collected here are the apexes, all pairwise crossings of
    those piecewise functions, and the offsets where d(x_t, w) crosses the
    combing threshold d(a, w).  Midpoints of consecutive breakpoints are
    added afterwards by the callers that need interior samples.
    """
    g = cmap.graph
    e = g.edges[edge_id]
    L = e.length
    pieces = []  # (slope, intercept) linear candidates per loop vertex
    cuts = {Fraction(0), L}
    for w, theta_w in cmap.chart.vertex_theta.items():
        du = g.vertex_distance(e.u, w)
        dv = g.vertex_distance(e.v, w)
        pieces.append((Fraction(1), du))
        pieces.append((Fraction(-1), L + dv))
        apex = (L + dv - du) / 2
        if 0 < apex < L:
            cuts.add(apex)
        d_a = cmap.dist_a_to_theta(theta_w)
        for t in (d_a - du, L + dv - d_a):
            if 0 < t < L:
                cuts.add(t)
    for i in range(len(pieces)):
        s1, c1 = pieces[i]
        for j in range(i + 1, len(pieces)):
            s2, c2 = pieces[j]
            if s1 == s2:
                continue
            t = (c2 - c1) / (s1 - s2)
            if 0 < t < L:
                cuts.add(t)
    return sorted(cuts)


def _with_midpoints(values: Sequence[Fraction]) -> list[Fraction]:
    out = []
    for i, v in enumerate(values):
        out.append(v)
        if i + 1 < len(values):
            out.append((v + values[i + 1]) / 2)
    return out


def _certification_points(cmap: CombingMap, mesh: Fraction) -> list[GraphPoint]:
    """Vertices, mesh samples, and combing breakpoints of every edge."""
    g = cmap.graph
    pts = [g.vertex_point(v) for v in range(g.num_vertices)]
    pts.extend(_loop_breakpoint_points(cmap))
    for e in g.edges:
        offsets = set()
        k = -(-e.length // mesh)  # ceil
        for j in range(1, int(k)):
            offsets.add(e.length * j / k)
        if not cmap.chart.contains_edge(e.id):
            offsets.update(_with_midpoints(_edge_breakpoints(cmap, e.id)))
        for off in offsets:
            if 0 <= off <= e.length:
                pts.append(g.point(e.id, off))
    seen = []
    uniq = set()
    for p in pts:
        if p not in uniq:
            uniq.add(p)
            seen.append(p)
    return seen


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

@dataclass
class RetractionReport:
    holds: bool
    points_checked: int
    witness: Optional[tuple] = None  # (point, image)

    def to_json(self) -> dict:
        wit = None
        if self.witness is not None:
            wit = {"point": self.witness[0].label(),
                   "image": self.witness[1].label()}
        return {"retraction": self.holds,
                "points_checked": self.points_checked,
                "witness": wit}


@dataclass
class LipschitzReport:
    pairs_checked: int
    max_ratio: Optional[Fraction]
    witness: Optional[tuple] = None  # (x, y, ratio) for ratio > 1

    @property
    def holds(self) -> bool:
        return self.witness is None

    def to_json(self) -> dict:
        wit = None
        if self.witness is not None:
            wit = {"x": self.witness[0].label(), "y": self.witness[1].label(),
                   "ratio": format_rational(self.witness[2])}
        return {
            "max_lipschitz_ratio":
                None if self.max_ratio is None else format_rational(self.max_ratio),
            "pairs_checked": self.pairs_checked,
            "witness": wit,
        }


def verify_retraction(cmap: CombingMap, mesh) -> RetractionReport:
    """Exact check that the map fixes the loop pointwise, on mesh samples
    of the loop plus its breakpoints (vertices, basepoint, antipode)."""
    mesh = parse_rational(mesh)
    if mesh <= 0:
        raise InvalidInputError("mesh must be positive")
    pts = list(_loop_breakpoint_points(cmap))
    for eid, _ in cmap.alpha.steps:
        e = cmap.graph.edges[eid]
        k = -(-e.length // mesh)
        for j in range(int(k) + 1):
            pts.append(cmap.graph.point(eid, e.length * j / k))
    checked = 0
    for p in pts:
        checked += 1
        img = cmap.evaluate(p)
        if img != p:
            return RetractionReport(False, checked, (p, img))
    return RetractionReport(True, checked)


def verify_lipschitz(cmap: CombingMap, mesh) -> LipschitzReport:
    """Max of d(f(x), f(y)) / d(x, y) over all pairs of certification
    points; the map is 1-Lipschitz iff the reported maximum is <= 1."""
    mesh = parse_rational(mesh)
    if mesh <= 0:
        raise InvalidInputError("mesh must be positive")
    pts = _certification_points(cmap, mesh)
    images = [cmap.evaluate(p) for p in pts]
    g = cmap.graph
    checked = 0
    max_ratio = None
    witness = None
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            d = geodesic_distance(g, pts[i], pts[j])
            if d == 0:
                continue
            checked += 1
            di = geodesic_distance(g, images[i], images[j])
            ratio = di / d
            if max_ratio is None or ratio > max_ratio:
                max_ratio = ratio
                if ratio > 1 and witness is None:
                    witness = (pts[i], pts[j], ratio)
    return LipschitzReport(checked, max_ratio, witness)


@dataclass
class ScaleContractionReport:
    holds: bool
    pairs_checked: int
    witness: Optional[tuple] = None  # (i, j)

    def to_json(self) -> dict:
        return {"holds": self.holds, "pairs_checked": self.pairs_checked,
                "witness": list(self.witness) if self.witness else None}


def verify_r_contraction(images: Sequence[int], s: SampledSpace,
                         r) -> ScaleContractionReport:
    """Exact check of d(x,y) < r implies d(f x, f y) < r over sample pairs.

    images[i] indexes the image of point i inside s (which may contain
    appended image points beyond the domain prefix).
    """
    r = parse_rational(r)
    if r <= 0:
        raise InvalidInputError("scale r must be positive")
    n = len(images)
    if n > len(s) or any(not (0 <= k < len(s)) for k in images):
        raise InvalidInputError("image indices inconsistent with the sample")
    checked = 0
    for i in range(n):
        for j in range(i + 1, n):
            checked += 1
            if s.distance(i, j) < r and not (
                s.distance(images[i], images[j]) < r
            ):
                return ScaleContractionReport(False, checked, (i, j))
    return ScaleContractionReport(True, checked)


@dataclass
class SimplicialRetractionReport:
    holds: bool
    simplices_checked: int
    witness: Optional[tuple] = None  # vertex tuple

    def to_json(self) -> dict:
        return {"holds": self.holds,
                "simplices_checked": self.simplices_checked,
                "witness": list(self.witness) if self.witness else None}


def verify_simplicial_retraction(images: Sequence[int], s: SampledSpace, r,
                                 max_dim: int) -> SimplicialRetractionReport:
    """Every simplex of the open Rips complex at scale r (diameter < r,
    dimension <= max_dim) must map to a vertex set of diameter < r.

    Pairwise this is verify_r_contraction; materializing the simplices
    checks the same implication in the form the single-scale retraction
    statement uses.
    """
    r = parse_rational(r)
    if r <= 0:
        raise InvalidInputError("scale r must be positive")
    n = len(images)
    if n > len(s) or any(not (0 <= k < len(s)) for k in images):
        raise InvalidInputError("image indices inconsistent with the sample")

    checked = 0

    def image_diam_ok(verts) -> bool:
        img = sorted({images[v] for v in verts})
        for ai in range(len(img)):
            for bi in range(ai + 1, len(img)):
                if not s.distance(img[ai], img[bi]) < r:
                    return False
        return True

    current = [(v,) for v in range(n)]
    for v in range(n):
        checked += 1
        if not image_diam_ok((v,)):
            return SimplicialRetractionReport(False, checked, (v,))
    for _ in range(max_dim):
        nxt = []
        for verts in current:
            last = verts[-1]
            for w in range(last + 1, n):
                if all(s.distance(u, w) < r for u in verts):
                    simplex = verts + (w,)
                    checked += 1
                    if not image_diam_ok(simplex):
                        return SimplicialRetractionReport(False, checked, simplex)
                    nxt.append(simplex)
        if not nxt:
            break
        current = nxt
    return SimplicialRetractionReport(True, checked)
