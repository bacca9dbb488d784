"""Exact-arithmetic metric graphs.

A metric graph is a connected weighted multigraph (self-loops and parallel
edges allowed) whose edges carry strictly positive rational lengths; it is
read as the geodesic space obtained by gluing intervals.  All distances and
coordinates are `fractions.Fraction`, so every comparison made here is an
exact decision, never an epsilon test.

Everything in this module is a pure function of immutable inputs; the graph
caches its vertex-to-vertex distance table at construction time and is safe
to share across threads afterwards.
"""

from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (
    ConnectivityError,
    InvalidInputError,
    NoCycleError,
)

Rational = Fraction


# ---------------------------------------------------------------------------
# rational parsing / formatting helpers (the "p/q" wire format)
# ---------------------------------------------------------------------------

def parse_rational(value) -> Fraction:
    """Parse an int, a Fraction, a decimal string, or a 'p/q' string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"cannot parse rational {value!r}") from exc
    if isinstance(value, float):
        raise InvalidInputError(
            f"refusing float {value!r}: lengths must be exact rationals"
        )
    raise InvalidInputError(f"cannot parse rational {value!r}")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# core types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GraphPoint:
    """A point of the geodesic space: a vertex, or an interior edge point.

    Offsets 0 and full length canonicalize to the vertex representation, so
    equality of GraphPoints is equality of points of the space.  Build
    instances through MetricGraph.point / MetricGraph.vertex_point.
    """

    vertex: Optional[int] = None
    edge: Optional[int] = None
    offset: Optional[Fraction] = None

    @property
    def is_vertex(self) -> bool:
        return self.vertex is not None

    def label(self) -> str:
        if self.is_vertex:
            return f"v{self.vertex}"
        return f"e{self.edge}@{format_rational(self.offset)}"

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"GraphPoint({self.label()})"


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int
    length: Fraction

    def other(self, w: int) -> int:
        return self.v if w == self.u else self.u


class MetricGraph:
    """Connected weighted multigraph with exact rational edge lengths."""

    def __init__(self, num_vertices: int, edges: Sequence[tuple]):
        if num_vertices <= 0:
            raise InvalidInputError("graph needs at least one vertex")
        self.num_vertices = int(num_vertices)
        parsed = []
        for eid, (u, v, length) in enumerate(edges):
            u, v = int(u), int(v)
            if not (0 <= u < num_vertices and 0 <= v < num_vertices):
                raise InvalidInputError(f"edge {eid} endpoint out of range")
            ln = parse_rational(length)
            if ln <= 0:
                raise InvalidInputError(f"edge {eid} has non-positive length {ln}")
            parsed.append(Edge(eid, u, v, ln))
        self.edges: tuple[Edge, ...] = tuple(parsed)
        self.adjacency: list[list[Edge]] = [[] for _ in range(num_vertices)]
        for e in self.edges:
            self.adjacency[e.u].append(e)
            if e.v != e.u:
                self.adjacency[e.v].append(e)
        self._check_connected()
        self._vertex_dist = self._all_pairs()

    # -- construction-time validation --------------------------------------

    def _check_connected(self) -> None:
        seen = {0}
        stack = [0]
        while stack:
            w = stack.pop()
            for e in self.adjacency[w]:
                nxt = e.other(w)
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        if len(seen) != self.num_vertices:
            raise ConnectivityError(
                f"graph is disconnected ({len(seen)} of {self.num_vertices} "
                "vertices reachable from vertex 0)"
            )

    def _all_pairs(self) -> list[dict[int, Fraction]]:
        return [self._dijkstra(s) for s in range(self.num_vertices)]

    def _dijkstra(self, source: int, banned_edge: Optional[int] = None):
        dist: dict[int, Fraction] = {source: Fraction(0)}
        heap = [(Fraction(0), source)]
        done = set()
        while heap:
            d, w = heapq.heappop(heap)
            if w in done:
                continue
            done.add(w)
            for e in self.adjacency[w]:
                if e.id == banned_edge:
                    continue
                nxt = e.other(w)
                nd = d + e.length
                if nxt not in dist or nd < dist[nxt]:
                    dist[nxt] = nd
                    heapq.heappush(heap, (nd, nxt))
        return dist

    # -- point factories ----------------------------------------------------

    def vertex_point(self, v: int) -> GraphPoint:
        if not (0 <= v < self.num_vertices):
            raise InvalidInputError(f"vertex {v} out of range")
        return GraphPoint(vertex=v)

    def point(self, edge_id: int, offset) -> GraphPoint:
        if not (0 <= edge_id < len(self.edges)):
            raise InvalidInputError(f"edge {edge_id} out of range")
        off = parse_rational(offset)
        e = self.edges[edge_id]
        if off < 0 or off > e.length:
            raise InvalidInputError(
                f"offset {off} outside [0, {e.length}] on edge {edge_id}"
            )
        if off == 0:
            return GraphPoint(vertex=e.u)
        if off == e.length:
            return GraphPoint(vertex=e.v)
        return GraphPoint(edge=edge_id, offset=off)

    def validate_point(self, p: GraphPoint) -> GraphPoint:
        if p.is_vertex:
            return self.vertex_point(p.vertex)
        return self.point(p.edge, p.offset)

    def vertex_distance(self, u: int, v: int) -> Fraction:
        return self._vertex_dist[u][v]

    @property
    def cycle_rank(self) -> int:
        return len(self.edges) - self.num_vertices + 1

    def __repr__(self) -> str:  # pragma: no cover
        return f"MetricGraph(V={self.num_vertices}, E={len(self.edges)})"


# ---------------------------------------------------------------------------
# geodesic distance
# ---------------------------------------------------------------------------

def _exit_costs(g: MetricGraph, p: GraphPoint):
    """Cost of reaching each incident vertex from p, as (vertex, cost) pairs."""
    if p.is_vertex:
        return ((p.vertex, Fraction(0)),)
    e = g.edges[p.edge]
    return ((e.u, p.offset), (e.v, e.length - p.offset))


def geodesic_distance(g: MetricGraph, p: GraphPoint, q: GraphPoint) -> Fraction:
    """Length of a shortest path between two points of the graph."""
    p = g.validate_point(p)
    q = g.validate_point(q)
    if p == q:
        return Fraction(0)
    best = None
    if (not p.is_vertex) and (not q.is_vertex) and p.edge == q.edge:
        best = abs(p.offset - q.offset)
    for w1, c1 in _exit_costs(g, p):
        for w2, c2 in _exit_costs(g, q):
            d = c1 + g.vertex_distance(w1, w2) + c2
            if best is None or d < best:
                best = d
    return best


# ---------------------------------------------------------------------------
# loops
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Loop:
    """A closed edge path: cyclic sequence of directed full-edge traversals.

    `steps` is a tuple of (edge_id, forward) pairs; step i ends where step
    i+1 (cyclically) starts.  `is_simple` records whether no vertex repeats.
    """

    steps: tuple
    length: Fraction
    is_simple: bool
    start: int

    @staticmethod
    def from_steps(g: MetricGraph, steps: Iterable[tuple]) -> "Loop":
        steps = tuple((int(e), bool(f)) for e, f in steps)
        if not steps:
            raise InvalidInputError("empty loop")
        cur = None
        start = None
        visited = []
        total = Fraction(0)
        for eid, fwd in steps:
            e = g.edges[eid]
            tail, head = (e.u, e.v) if fwd else (e.v, e.u)
            if cur is None:
                start = tail
            elif tail != cur:
                raise InvalidInputError(
                    f"loop steps do not chain at edge {eid} (expected tail {cur})"
                )
            visited.append(tail)
            cur = head
            total += e.length
        if cur != start:
            raise InvalidInputError("loop is not closed")
        edge_ids = [eid for eid, _ in steps]
        simple = len(set(visited)) == len(visited) and len(set(edge_ids)) == len(edge_ids)
        return Loop(steps=steps, length=total, is_simple=simple, start=start)

    def edge_ids(self) -> tuple:
        return tuple(eid for eid, _ in self.steps)

    def edge_multiset_parity(self) -> frozenset:
        """Edges used an odd number of times (the GF(2) cycle vector)."""
        odd = set()
        for eid, _ in self.steps:
            odd.symmetric_difference_update({eid})
        return frozenset(odd)

    def signed_edge_vector(self, num_edges: int) -> list[int]:
        vec = [0] * num_edges
        for eid, fwd in self.steps:
            vec[eid] += 1 if fwd else -1
        return vec

    def reversed(self) -> "Loop":
        rev = tuple((e, not f) for e, f in reversed(self.steps))
        return Loop(steps=rev, length=self.length, is_simple=self.is_simple,
                    start=self.start)

    def canonical_key(self) -> tuple:
        ids = self.edge_ids()
        rid = tuple(reversed(ids))
        n = len(ids)
        candidates = [ids[i:] + ids[:i] for i in range(n)]
        candidates += [rid[i:] + rid[:i] for i in range(n)]
        return min(candidates)

    def vertices(self, g: MetricGraph) -> list[int]:
        out = []
        for eid, fwd in self.steps:
            e = g.edges[eid]
            out.append(e.u if fwd else e.v)
        return out

    def __repr__(self) -> str:  # pragma: no cover
        path = ",".join(f"{'+' if f else '-'}{e}" for e, f in self.steps)
        return f"Loop([{path}], len={format_rational(self.length)})"


class LoopChart:
    """Arc-length coordinates along a simple loop.

    theta runs in [0, L) starting at the loop's first traversal tail, in
    traversal direction.  Translates between theta values and GraphPoints.
    """

    def __init__(self, g: MetricGraph, loop: Loop):
        if not loop.is_simple:
            raise InvalidInputError("loop chart requires a simple loop")
        self.graph = g
        self.loop = loop
        self.total = loop.length
        self.segments = []  # (edge_id, forward, theta_start)
        self.vertex_theta: dict[int, Fraction] = {}
        theta = Fraction(0)
        for eid, fwd in loop.steps:
            e = g.edges[eid]
            tail = e.u if fwd else e.v
            self.segments.append((eid, fwd, theta))
            self.vertex_theta[tail] = theta
            theta += e.length
        self._edge_index = {eid: k for k, (eid, _, _) in enumerate(self.segments)}

    def contains_edge(self, edge_id: int) -> bool:
        return edge_id in self._edge_index

    def theta_of(self, p: GraphPoint) -> Optional[Fraction]:
        """Arc coordinate of a point on the loop, else None."""
        if p.is_vertex:
            return self.vertex_theta.get(p.vertex)
        k = self._edge_index.get(p.edge)
        if k is None:
            return None
        eid, fwd, start = self.segments[k]
        e = self.graph.edges[eid]
        along = p.offset if fwd else e.length - p.offset
        return (start + along) % self.total

    def point_at(self, theta: Fraction) -> GraphPoint:
        theta = theta % self.total
        lo, hi = 0, len(self.segments)
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.segments[mid][2] <= theta:
                lo = mid
            else:
                hi = mid
        eid, fwd, start = self.segments[lo]
        e = self.graph.edges[eid]
        along = theta - start
        offset = along if fwd else e.length - along
        return self.graph.point(eid, offset)

    def arc_distance(self, t1: Fraction, t2: Fraction) -> Fraction:
        d = abs(t1 - t2)
        return min(d, self.total - d)

    def antipode(self, theta: Fraction) -> Fraction:
        return (theta + self.total / 2) % self.total


# ---------------------------------------------------------------------------
# shortest cycles and minimum cycle bases
# ---------------------------------------------------------------------------

def _lex_dijkstra(g: MetricGraph, source: int, banned_edge: Optional[int] = None):
    """Shortest paths from source, deterministic among equal lengths.

    Returns {vertex: (dist, path)} with path a tuple of (edge_id, forward)
    steps; among equal-length paths the lexicographically least edge-id
    sequence wins, which makes every cycle construction downstream
    reproducible.
    """
    best = {source: (Fraction(0), ())}
    heap = [(Fraction(0), (), source)]
    while heap:
        d, path, w = heapq.heappop(heap)
        if best.get(w, (None, None))[0] != d or best[w][1] != path:
            continue
        for e in sorted(g.adjacency[w], key=lambda e: e.id):
            if e.id == banned_edge or e.u == e.v:
                continue
            nxt = e.other(w)
            nd = d + e.length
            npath = path + ((e.id, w == e.u),)
            cur = best.get(nxt)
            if cur is None or (nd, [p[0] for p in npath]) < (
                cur[0],
                [p[0] for p in cur[1]],
            ):
                best[nxt] = (nd, npath)
                heapq.heappush(heap, (nd, npath, nxt))
    return best


def shortest_cycle(g: MetricGraph) -> Loop:
    """A shortest simple cycle (the weighted girth loop).

    Computed as min over edges e of dist(u, v in g - e) + len(e); ties are
    broken by the loop's canonical edge-id sequence.
    """
    if g.cycle_rank < 1:
        raise NoCycleError("graph is a tree: no cycle exists")
    candidates = []
    for e in g.edges:
        if e.u == e.v:
            loop = Loop.from_steps(g, [(e.id, True)])
            candidates.append((loop.length, loop.canonical_key(), loop))
            continue
        reach = _lex_dijkstra(g, e.v, banned_edge=e.id)
        if e.u not in reach:
            continue
        d, path = reach[e.u]
        loop = Loop.from_steps(g, ((e.id, True),) + path)
        if loop.is_simple:
            candidates.append((loop.length, loop.canonical_key(), loop))
    if not candidates:
        raise NoCycleError("no simple cycle found")
    candidates.sort(key=lambda t: (t[0], t[1]))
    return candidates[0][2]


def _orient_edge_set(g: MetricGraph, edge_set: frozenset) -> Loop:
    """Walk a set of edges forming a single simple cycle into a Loop."""
    incident: dict[int, list[int]] = {}
    for eid in edge_set:
        e = g.edges[eid]
        if e.u == e.v:
            if len(edge_set) != 1:
                raise InvalidInputError("self-loop mixed into larger cycle")
            return Loop.from_steps(g, [(eid, True)])
        incident.setdefault(e.u, []).append(eid)
        incident.setdefault(e.v, []).append(eid)
    if any(len(v) != 2 for v in incident.values()):
        raise InvalidInputError("edge set is not a single simple cycle")
    start_eid = min(edge_set)
    e0 = g.edges[start_eid]
    steps = [(start_eid, True)]
    cur = e0.v
    used = {start_eid}
    while cur != e0.u:
        nxt = [eid for eid in incident[cur] if eid not in used]
        if len(nxt) != 1:
            raise InvalidInputError("edge set is not a single simple cycle")
        eid = nxt[0]
        e = g.edges[eid]
        steps.append((eid, e.u == cur))
        used.add(eid)
        cur = e.other(cur)
    if used != set(edge_set):
        raise InvalidInputError("edge set is not connected")
    return Loop.from_steps(g, steps)


def _greedy_independent(masks_with_payload, rank_needed: int):
    """Greedy GF(2) independence filter over (mask, payload) pairs."""
    reduced = []  # list of (pivot_bit, mask)
    chosen = []
    for mask, payload in masks_with_payload:
        m = mask
        for piv, rm in reduced:
            if (m >> piv) & 1:
                m ^= rm
        if m:
            reduced.append((m.bit_length() - 1, m))
            reduced.sort(key=lambda t: -t[0])
            chosen.append(payload)
            if len(chosen) == rank_needed:
                break
    return chosen


def horton_candidates(g: MetricGraph) -> list[Loop]:
    """Candidate pool for the minimum cycle basis: per-vertex shortest-path
    trees combined with each edge, plus self-loops, deduplicated by edge set.
    """
    seen: dict[frozenset, Loop] = {}

    def consider(edge_set: frozenset):
        if not edge_set or edge_set in seen:
            return
        try:
            loop = _orient_edge_set(g, edge_set)
        except InvalidInputError:
            return
        seen[edge_set] = loop

    for e in g.edges:
        if e.u == e.v:
            consider(frozenset([e.id]))
    for v in range(g.num_vertices):
        reach = _lex_dijkstra(g, v)
        for e in g.edges:
            if e.u == e.v or e.u not in reach or e.v not in reach:
                continue
            pu = {eid for eid, _ in reach[e.u][1]}
            pv = {eid for eid, _ in reach[e.v][1]}
            cyc = (pu ^ pv) ^ {e.id}
            consider(frozenset(cyc))
    return sorted(seen.values(), key=lambda L: (L.length, L.canonical_key()))


def minimum_cycle_basis(g: MetricGraph) -> list[Loop]:
    """A cycle basis with lexicographically minimal sorted length vector.

    Horton candidate generation followed by greedy GF(2) independence; the
    minimum-weight profile of a cycle basis is matroid-unique, so greedy by
    (length, canonical key) is both minimal and deterministic.
    """
    m = g.cycle_rank
    if m == 0:
        return []
    cands = horton_candidates(g)
    pairs = [(_mask(L.edge_multiset_parity()), L) for L in cands]
    basis = _greedy_independent(pairs, m)
    if len(basis) != m:
        raise InvalidInputError(
            f"candidate cycles span rank {len(basis)} < {m}"
        )
    return basis


def _mask(edge_set: frozenset) -> int:
    mask = 0
    for eid in edge_set:
        mask |= 1 << eid
    return mask


# ---------------------------------------------------------------------------
# geodesic circle verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeodesicCircleWitness:
    p: GraphPoint
    q: GraphPoint
    graph_distance: Fraction
    arc_distance: Fraction


def is_geodesic_circle(g: MetricGraph, loop: Loop):
    """Decide whether a simple loop carries its intrinsic circle metric.

    Checks graph distance == arc distance over a finite breakpoint set:
    loop vertices, traversal midpoints, and all their antipodes.  Distance
    functions between loop points are piecewise linear with kinks only at
    traversal boundaries and at the antipodal locus, so a violation
    somewhere implies a violation at one of these pairs; midpoints are
    included for extra safety at no real cost.

    Returns (True, None) or (False, witness_pair).
    """
    if not loop.is_simple:
        raise InvalidInputError("geodesic-circle test requires a simple loop")
    chart = LoopChart(g, loop)
    thetas = set(chart.vertex_theta.values())
    for eid, fwd, start in chart.segments:
        e = g.edges[eid]
        thetas.add((start + e.length / 2) % chart.total)
    thetas |= {chart.antipode(t) for t in set(thetas)}
    points = sorted(thetas)
    for i, t1 in enumerate(points):
        p1 = chart.point_at(t1)
        for t2 in points[i + 1:]:
            arc = chart.arc_distance(t1, t2)
            p2 = chart.point_at(t2)
            dg = geodesic_distance(g, p1, p2)
            if dg != arc:
                return False, GeodesicCircleWitness(p1, p2, dg, arc)
    return True, None


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

class SampledSpace:
    """Finite point sample of a metric graph with its exact distance matrix."""

    def __init__(self, points: Sequence[GraphPoint], matrix, graph=None,
                 labels=None):
        self.points = list(points)
        self.matrix = [list(row) for row in matrix]
        self.graph = graph
        self.labels = list(labels) if labels else [p.label() for p in self.points]
        n = len(self.points)
        if len(self.matrix) != n or any(len(r) != n for r in self.matrix):
            raise InvalidInputError("distance matrix shape mismatch")
        self._validate_basic()

    def _validate_basic(self):
        n = len(self.points)
        for i in range(n):
            if self.matrix[i][i] != 0:
                raise InvalidInputError(f"nonzero diagonal at {i}")
            for j in range(i + 1, n):
                if self.matrix[i][j] != self.matrix[j][i]:
                    raise InvalidInputError(f"asymmetry at ({i},{j})")
                if self.matrix[i][j] <= 0:
                    raise InvalidInputError(
                        f"non-positive distance at ({i},{j}); "
                        "duplicate sample points?"
                    )

    def validate_triangle(self):
        n = len(self.points)
        m = self.matrix
        for i in range(n):
            for j in range(i + 1, n):
                dij = m[i][j]
                for k in range(n):
                    if m[i][k] + m[k][j] < dij:
                        raise InvalidInputError(
                            f"triangle inequality fails at ({i},{j},{k})"
                        )

    def __len__(self) -> int:
        return len(self.points)

    def distance(self, i: int, j: int) -> Fraction:
        return self.matrix[i][j]

    def index_of(self, p: GraphPoint) -> Optional[int]:
        try:
            return self.points.index(p)
        except ValueError:
            return None

    def restrict(self, indices: Sequence[int]) -> "SampledSpace":
        idx = list(indices)
        pts = [self.points[i] for i in idx]
        mat = [[self.matrix[i][j] for j in idx] for i in idx]
        labels = [self.labels[i] for i in idx]
        return SampledSpace(pts, mat, graph=self.graph, labels=labels)

    def with_extra_points(self, extra: Sequence[GraphPoint]) -> "SampledSpace":
        """New sample with the given graph points appended (deduplicated)."""
        if self.graph is None:
            raise InvalidInputError("cannot extend a sample without its graph")
        pts = list(self.points)
        for p in extra:
            p = self.graph.validate_point(p)
            if p not in pts:
                pts.append(p)
        return sample_points(self.graph, pts)

    def to_csv(self) -> str:
        lines = [",".join(self.labels)]
        for row in self.matrix:
            lines.append(",".join(format_rational(x) for x in row))
        return "\n".join(lines) + "\n"


def sample_points(g: MetricGraph, points: Sequence[GraphPoint]) -> SampledSpace:
    pts = [g.validate_point(p) for p in points]
    n = len(pts)
    mat = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = geodesic_distance(g, pts[i], pts[j])
            mat[i][j] = d
            mat[j][i] = d
    return SampledSpace(pts, mat, graph=g)


def sample_space(g: MetricGraph, mesh) -> SampledSpace:
    """All vertices plus equally spaced interior points, consecutive samples
    at most `mesh` apart along every edge.  Point order: vertices by index,
    then interior points by (edge id, offset).
    """
    mesh = parse_rational(mesh)
    if mesh <= 0:
        raise InvalidInputError(f"mesh must be positive, got {mesh}")
    pts = [g.vertex_point(v) for v in range(g.num_vertices)]
    for e in g.edges:
        k = math.ceil(e.length / mesh)
        for j in range(1, k):
            pts.append(g.point(e.id, e.length * j / k))
    # canonicalization can in principle produce duplicates only via vertex
    # points, which are already present once each
    return sample_points(g, pts)


# ---------------------------------------------------------------------------
# JSON wire format
# ---------------------------------------------------------------------------

def graph_to_json(g: MetricGraph) -> dict:
    return {
        "vertices": g.num_vertices,
        "edges": [
            {"id": e.id, "u": e.u, "v": e.v, "length": format_rational(e.length)}
            for e in g.edges
        ],
    }


def graph_from_json(data) -> MetricGraph:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"malformed graph JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InvalidInputError("graph JSON must be an object")
    for key in ("vertices", "edges"):
        if key not in data:
            raise InvalidInputError(f"graph JSON missing key {key!r}")
    try:
        num_vertices = int(data["vertices"])
    except (TypeError, ValueError) as exc:
        raise InvalidInputError("graph JSON 'vertices' must be an integer") from exc
    raw_edges = data["edges"]
    if not isinstance(raw_edges, list):
        raise InvalidInputError("graph JSON 'edges' must be a list")
    rows = []
    for k, item in enumerate(raw_edges):
        if not isinstance(item, dict):
            raise InvalidInputError(f"edge entry {k} must be an object")
        for key in ("id", "u", "v", "length"):
            if key not in item:
                raise InvalidInputError(f"edge entry {k} missing key {key!r}")
        rows.append(item)
    rows.sort(key=lambda r: int(r["id"]))
    ids = [int(r["id"]) for r in rows]
    if ids != list(range(len(rows))):
        raise InvalidInputError("edge ids must be exactly 0..E-1")
    edges = [(int(r["u"]), int(r["v"]), parse_rational(r["length"])) for r in rows]
    return MetricGraph(num_vertices, edges)
