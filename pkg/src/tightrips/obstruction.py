"""Necessary conditions and non-existence certificates for contractions.

A 1-Lipschitz retraction onto a loop alpha induces an integer functional
lambda on first homology with lambda([alpha]) = 1, and for every closed
walk beta the image's winding forces |lambda([beta])| * len(alpha) <=
len(beta).  The searcher enumerates all admissible functionals within
per-coordinate caps (a coordinate beyond floor(len(basis_i)/len(alpha)) is
already violated by basis loop i itself, so caps at that floor make the
enumeration complete); if every functional admits a violating walk, no
contraction onto alpha can exist and a re-verified certificate is
returned.  A surviving functional is honest inconclusiveness, never an
existence claim.

Violating walks are searched per functional in a winding cover: each edge
carries the functional's value on its fundamental cycle, and a layered
Dijkstra finds the shortest closed walk of prescribed total winding.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    InternalConsistencyError,
    InvalidInputError,
    ResourceBudgetError,
)
from .metric_graph import (
    Loop,
    MetricGraph,
    format_rational,
    minimum_cycle_basis,
    parse_rational,
)

DEFAULT_FUNCTIONAL_BUDGET = 20000
WINDING_TARGETS = (1, 2)


# ---------------------------------------------------------------------------
# homology coordinates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CycleVector:
    """Integer coordinates of a closed walk in a fixed cycle basis."""

    coords: tuple
    basis_lengths: tuple

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


def _solve_exact_multi(columns: list, rhs_list: list) -> list:
    """Solve sum_j x_j * columns[j] = rhs over the rationals for several
    right-hand sides with one elimination.  Each answer is a coefficient
    list, or None when that rhs is outside the span."""
    rows = len(columns[0]) if columns else len(rhs_list[0])
    cols = len(columns)
    n_rhs = len(rhs_list)
    mat = [
        [Fraction(columns[j][i]) for j in range(cols)]
        + [Fraction(rhs[i]) for rhs in rhs_list]
        for i in range(rows)
    ]
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if mat[i][c] != 0), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(rows):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    if len(pivots) != cols:
        raise InternalConsistencyError("cycle basis is rank deficient")
    out = []
    for t in range(n_rhs):
        col = cols + t
        if any(mat[i][col] != 0 for i in range(r, rows)):
            out.append(None)
            continue
        x = [Fraction(0)] * cols
        for i, c in enumerate(pivots):
            x[c] = mat[i][col]
        out.append(x)
    return out


def _solve_exact(columns: list, rhs: list) -> Optional[list]:
    return _solve_exact_multi(columns, [rhs])[0]


def homology_coordinates(g: MetricGraph, basis: Sequence[Loop],
                         loop: Loop) -> CycleVector:
    """Exact integer coordinates of a closed walk in the given cycle basis.

    Solves the linear system over the signed edge space; a true basis of
    the graph's cycle lattice yields integer coordinates, and anything
    else indicates corrupted inputs.
    """
    E = len(g.edges)
    columns = [b.signed_edge_vector(E) for b in basis]
    rhs = loop.signed_edge_vector(E)
    x = _solve_exact(columns, rhs)
    if x is None:
        raise InternalConsistencyError(
            "closed walk is outside the span of the cycle basis"
        )
    coords = []
    for v in x:
        if v.denominator != 1:
            raise InternalConsistencyError(
                f"non-integer coordinate {v}; basis is not an integral "
                "cycle basis"
            )
        coords.append(int(v))
    return CycleVector(tuple(coords), tuple(b.length for b in basis))


# ---------------------------------------------------------------------------
# winding covers
# ---------------------------------------------------------------------------

class _WindingCover:
    """Edge holonomies for functionals, via a spanning tree.

    Non-tree edges carry the homology coordinates of their fundamental
    cycle; a functional turns those into integer edge weights, and the
    winding of any closed walk is the signed sum of its edge weights.
    """

    def __init__(self, g: MetricGraph, basis: Sequence[Loop]):
        self.graph = g
        self.basis = list(basis)
        parent: dict[int, tuple] = {0: None}
        order = [0]
        queue = [0]
        tree_edges = set()
        while queue:
            w = queue.pop(0)
            for e in sorted(g.adjacency[w], key=lambda e: e.id):
                if e.u == e.v:
                    continue
                nxt = e.other(w)
                if nxt not in parent:
                    parent[nxt] = (e.id, w)
                    tree_edges.add(e.id)
                    order.append(nxt)
                    queue.append(nxt)
        self.parent = parent
        self.tree_edges = tree_edges
        self.holonomy: dict[int, tuple] = {}
        m = len(self.basis)
        E = len(g.edges)
        non_tree = [e.id for e in g.edges if e.id not in tree_edges]
        columns = [b.signed_edge_vector(E) for b in self.basis]
        rhs_list = [
            self._fundamental_loop(eid).signed_edge_vector(E)
            for eid in non_tree
        ]
        solutions = _solve_exact_multi(columns, rhs_list) if non_tree else []
        for e in g.edges:
            self.holonomy[e.id] = tuple([0] * m)
        for eid, sol in zip(non_tree, solutions):
            if sol is None:
                raise InternalConsistencyError(
                    "fundamental cycle outside the basis span"
                )
            coords = []
            for v in sol:
                if v.denominator != 1:
                    raise InternalConsistencyError(
                        "non-integer holonomy; basis is not integral"
                    )
                coords.append(int(v))
            self.holonomy[eid] = tuple(coords)

    def _tree_path(self, frm: int, to: int) -> list:
        """Steps along the spanning tree from frm to to."""
        up_f = []
        anc_f = [frm]
        v = frm
        while self.parent[v] is not None:
            eid, par = self.parent[v]
            e = self.graph.edges[eid]
            up_f.append((eid, e.u == v))  # traverse v -> parent
            v = par
            anc_f.append(v)
        up_t = []
        anc_t = [to]
        v = to
        while self.parent[v] is not None:
            eid, par = self.parent[v]
            e = self.graph.edges[eid]
            up_t.append((eid, e.u == v))
            v = par
            anc_t.append(v)
        common = set(anc_f) & set(anc_t)
        ci_f = next(i for i, a in enumerate(anc_f) if a in common)
        ci_t = next(i for i, a in enumerate(anc_t) if a in common)
        down = [(eid, not fwd) for eid, fwd in reversed(up_t[:ci_t])]
        return up_f[:ci_f] + down

    def _fundamental_loop(self, edge_id: int) -> Loop:
        e = self.graph.edges[edge_id]
        if e.u == e.v:
            return Loop.from_steps(self.graph, [(edge_id, True)])
        steps = [(edge_id, True)] + self._tree_path(e.v, e.u)
        return Loop.from_steps(self.graph, steps)

    def coords_of_walk(self, loop: Loop) -> tuple:
        """Class coordinates of a closed walk as signed holonomy sums."""
        m = len(self.basis)
        acc = [0] * m
        for eid, fwd in loop.steps:
            h = self.holonomy[eid]
            if fwd:
                for i in range(m):
                    acc[i] += h[i]
            else:
                for i in range(m):
                    acc[i] -= h[i]
        return tuple(acc)

    def edge_weights(self, lam: Sequence[int]) -> list:
        return [
            sum(l * h for l, h in zip(lam, self.holonomy[e.id]))
            for e in self.graph.edges
        ]

    def shortest_walk_with_winding(self, lam: Sequence[int], k: int):
        """Shortest closed walk whose winding under lam equals k (k != 0).

        Layered Dijkstra over (vertex, partial winding) with partial
        windings clamped to |.| <= |k| + 2; walks that must leave that
        band are not seen, which can only make the caller's verdict more
        conservative.  Returns (length, Loop) or None.
        """
        if k == 0:
            raise InvalidInputError("winding target must be nonzero")
        g = self.graph
        weights = self.edge_weights(lam)
        box = abs(k) + 2
        best = None
        for start in range(g.num_vertices):
            dist = {(start, 0): Fraction(0)}
            pred: dict[tuple, tuple] = {}
            heap = [(Fraction(0), start, 0)]
            target = (start, k)
            while heap:
                d, v, c = heapq.heappop(heap)
                if dist.get((v, c)) != d:
                    continue
                if (v, c) == target and d > 0:
                    break
                for e in sorted(g.adjacency[v], key=lambda e: e.id):
                    moves = []
                    if e.u == e.v:
                        moves.append((e.v, c + weights[e.id], True))
                        moves.append((e.u, c - weights[e.id], False))
                    elif v == e.u:
                        moves.append((e.v, c + weights[e.id], True))
                    else:
                        moves.append((e.u, c - weights[e.id], False))
                    for nv, nc, fwd in moves:
                        if abs(nc) > box:
                            continue
                        nd = d + e.length
                        state = (nv, nc)
                        if state not in dist or nd < dist[state]:
                            dist[state] = nd
                            pred[state] = ((v, c), e.id, fwd)
                            heapq.heappush(heap, (nd, nv, nc))
            if target in dist and dist[target] > 0:
                if best is None or dist[target] < best[0]:
                    steps = []
                    state = target
                    while state != (start, 0) or not steps:
                        prev, eid, fwd = pred[state]
                        steps.append((eid, fwd))
                        state = prev
                    steps.reverse()
                    best = (dist[target], Loop.from_steps(g, steps))
        return best


# ---------------------------------------------------------------------------
# search results
# ---------------------------------------------------------------------------

@dataclass
class FunctionalViolation:
    lam: tuple
    beta: Loop
    winding: int

    def to_json(self) -> dict:
        return {
            "lambda": list(self.lam),
            "beta_length": format_rational(self.beta.length),
            "beta_steps": [[e, bool(f)] for e, f in self.beta.steps],
            "winding": self.winding,
        }


@dataclass
class ObstructionCertificate:
    alpha: Loop
    alpha_length: Fraction
    basis: list
    functionals: list
    bound: int
    caps: tuple
    verdict: str = "no_contraction"

    def to_json(self) -> dict:
        return {
            "alpha_length": format_rational(self.alpha_length),
            "functionals": [f.to_json() for f in self.functionals],
            "bound": self.bound,
            "caps": list(self.caps),
            "basis_lengths": [format_rational(b.length) for b in self.basis],
            "verdict": self.verdict,
        }


@dataclass
class NoObstructionFound:
    surviving: list
    exhaustive: bool

    def to_json(self) -> dict:
        return {
            "verdict": "no_obstruction",
            "surviving_functionals": [list(l) for l in self.surviving],
            "exhaustive": self.exhaustive,
        }


@dataclass
class InconclusiveBoundHit:
    reason: str
    functionals_checked: int

    def to_json(self) -> dict:
        return {
            "verdict": "inconclusive",
            "reason": self.reason,
            "functionals_checked": self.functionals_checked,
        }


# ---------------------------------------------------------------------------
# the search
# ---------------------------------------------------------------------------

def _signed_range(cap: int) -> list:
    out = [0]
    for v in range(1, cap + 1):
        out.extend([v, -v])
    return out


def winding_obstruction_search(g: MetricGraph, alpha: Loop,
                               candidates: Sequence[Loop], bound: int,
                               basis: Optional[list] = None,
                               cover: Optional[_WindingCover] = None,
                               max_functionals: int = DEFAULT_FUNCTIONAL_BUDGET,
                               max_survivors: int = 10):
    """Certify non-existence of a contraction onto alpha, or fail honestly.

    Enumerates integer functionals lambda with lambda([alpha]) = 1 and
    |lambda_i| <= min(bound, floor(len_i / len_alpha)); beyond that floor
    a functional is violated by basis loop i itself, so when the floors
    all fit under `bound` the enumeration is complete and an all-violated
    outcome is a sound certificate.  Candidate violators per functional:
    the basis, the supplied candidate loops, and per-winding shortest
    closed walks from the winding cover.  Every recorded violation is
    re-verified independently before the certificate is returned.
    """
    if bound < 1:
        raise InvalidInputError("enumeration bound must be >= 1")
    if basis is None:
        basis = minimum_cycle_basis(g)
    if not basis:
        raise InvalidInputError("graph has no cycles")
    if cover is None:
        cover = _WindingCover(g, basis)
    c_alpha = CycleVector(cover.coords_of_walk(alpha),
                          tuple(b.length for b in basis))
    if c_alpha.is_zero:
        raise InvalidInputError(
            "alpha is nullhomologous: lambda(alpha) = 1 is unsatisfiable"
        )
    from math import gcd
    if gcd(*[abs(c) for c in c_alpha.coords]) not in (0, 1):
        raise InvalidInputError(
            "alpha's class is divisible: lambda(alpha) = 1 is unsatisfiable"
        )
    m = len(basis)
    L_alpha = alpha.length
    full_caps = [int(b.length // L_alpha) for b in basis]
    caps = [min(bound, fc) for fc in full_caps]
    complete_box = all(fc <= bound for fc in full_caps)

    pool = []
    for i, beta in enumerate(basis):
        unit = tuple(1 if t == i else 0 for t in range(m))
        pool.append((beta, unit))
    for beta in candidates:
        pool.append((beta, cover.coords_of_walk(beta)))

    def find_violation(lam):
        for beta, coords in pool:
            w = sum(l * c for l, c in zip(lam, coords))
            if abs(w) * L_alpha > beta.length:
                return FunctionalViolation(tuple(lam), beta, w)
        for k in WINDING_TARGETS:
            hit = cover.shortest_walk_with_winding(lam, k)
            if hit is not None and k * L_alpha > hit[0]:
                return FunctionalViolation(tuple(lam), hit[1], k)
        return None

    box_size = 1
    for c in caps:
        box_size *= 2 * c + 1
        if box_size > 10 * max_functionals:
            break

    def candidates_iter():
        if box_size <= max_functionals:
            all_lams = [
                lam
                for lam in itertools.product(*[
                    range(-c, c + 1) for c in caps
                ])
                if sum(l * c for l, c in zip(lam, c_alpha.coords)) == 1
            ]
            all_lams.sort(key=lambda lam: (sum(abs(x) for x in lam), lam))
            yield from all_lams
        else:
            for lam in itertools.product(*[_signed_range(c) for c in caps]):
                if sum(l * c for l, c in zip(lam, c_alpha.coords)) == 1:
                    yield lam

    survivors = []
    violations = []
    checked = 0
    exhausted = True
    for lam in candidates_iter():
        if checked >= max_functionals:
            exhausted = False
            break
        checked += 1
        vio = find_violation(lam)
        if vio is None:
            survivors.append(tuple(lam))
            if len(survivors) >= max_survivors:
                exhausted = False
                break
        else:
            violations.append(vio)
    if survivors:
        return NoObstructionFound(survivors, exhaustive=exhausted)
    if not exhausted:
        return InconclusiveBoundHit(
            f"functional budget {max_functionals} exhausted without a "
            "survivor or a complete enumeration",
            checked,
        )
    if not complete_box:
        return InconclusiveBoundHit(
            f"bound {bound} below the per-coordinate floors "
            f"{full_caps}; unchecked functionals remain",
            checked,
        )
    _reverify_certificate(g, basis, c_alpha, L_alpha, violations)
    return ObstructionCertificate(
        alpha=alpha,
        alpha_length=L_alpha,
        basis=list(basis),
        functionals=violations,
        bound=bound,
        caps=tuple(caps),
    )


def _reverify_certificate(g, basis, c_alpha, L_alpha, violations) -> None:
    for vio in violations:
        if sum(l * c for l, c in zip(vio.lam, c_alpha.coords)) != 1:
            raise InternalConsistencyError(
                f"certificate functional {vio.lam} does not send alpha to 1"
            )
        coords = homology_coordinates(g, basis, vio.beta).coords
        w = sum(l * c for l, c in zip(vio.lam, coords))
        if w != vio.winding:
            raise InternalConsistencyError(
                f"recorded winding {vio.winding} disagrees with recomputed {w}"
            )
        if not abs(w) * L_alpha > vio.beta.length:
            raise InternalConsistencyError(
                "certificate inequality fails on re-verification"
            )


# ---------------------------------------------------------------------------
# basis membership
# ---------------------------------------------------------------------------

def shortest_basis_membership(g: MetricGraph, alpha: Loop) -> bool:
    """True iff alpha can appear in a minimum cycle basis.

    Matroid exchange: run the greedy over the minimum basis plus alpha,
    preferring alpha among equal lengths; membership holds exactly when
    alpha is chosen and the weight profile is unchanged.
    """
    if not alpha.is_simple:
        raise InvalidInputError("basis membership expects a simple loop")
    mcb = minimum_cycle_basis(g)
    profile = sorted(l.length for l in mcb)

    def mask(loop):
        out = 0
        for eid in loop.edge_multiset_parity():
            out |= 1 << eid
        return out

    items = [(alpha.length, 0, alpha.canonical_key(), alpha)]
    items += [(l.length, 1, l.canonical_key(), l) for l in mcb]
    items.sort(key=lambda t: (t[0], t[1], t[2]))
    reduced = []
    chosen = []
    for length, _, _, loop in items:
        v = mask(loop)
        for piv, rm in reduced:
            if (v >> piv) & 1:
                v ^= rm
        if v:
            reduced.append((v.bit_length() - 1, v))
            reduced.sort(key=lambda t: -t[0])
            chosen.append(loop)
            if len(chosen) == len(mcb):
                break
    if sorted(l.length for l in chosen) != profile:
        return False
    return any(l is alpha for l in chosen)


# ---------------------------------------------------------------------------
# the concentric-circles construction
# ---------------------------------------------------------------------------

def build_concentric_counterexample():
    """Two concentric circles of lengths 1000 and 999 joined by rungs and a
    crossing pair at the bottom.

    Inner circle: bottom arc 3 plus three arcs of 332 (total 999); outer
    circle: bottom arc 5 plus three arcs of 995/3 (total 1000); crossing
    connectors of length 1 between the bottom arcs' opposite endpoints,
    and two rungs of length 4 further around.  The rung length keeps every
    "spiral" cycle (skip inner arcs, ride the outer circle through one
    crossing) at length > 999, so the inner circle stays in the minimum
    cycle basis while every other basis loop is shorter than 999.  The
    mixed loop that follows the long way around both circles and switches
    at the crossing has length exactly 996 + 1 + 995 + 1 = 1993, and its
    class is twice the inner circle modulo the short basis loops, so a
    contraction onto the inner circle would have to stretch it to at
    least 2 * 999 = 1998.

    Returns (graph, alpha, witness) with alpha the inner circle and
    witness the 1993 loop.
    """
    third = Fraction(995, 3)
    edges = [
        (0, 1, 3),        # 0: inner bottom arc i1-i2
        (1, 2, 332),      # 1: inner arc i2-i3
        (2, 3, 332),      # 2: inner arc i3-i4
        (3, 0, 332),      # 3: inner arc i4-i1
        (4, 5, 5),        # 4: outer bottom arc u1-u2
        (5, 6, third),    # 5: outer arc u2-u3
        (6, 7, third),    # 6: outer arc u3-u4
        (7, 4, third),    # 7: outer arc u4-u1
        (0, 5, 1),        # 8: crossing connector i1-u2
        (1, 4, 1),        # 9: crossing connector i2-u1
        (2, 6, 4),        # 10: rung i3-u3
        (3, 7, 4),        # 11: rung i4-u4
    ]
    g = MetricGraph(8, edges)
    alpha = Loop.from_steps(g, [(0, True), (1, True), (2, True), (3, True)])
    witness = Loop.from_steps(
        g,
        [(1, True), (2, True), (3, True), (8, True),
         (5, True), (6, True), (7, True), (9, False)],
    )
    if alpha.length != 999 or witness.length != 1993:
        raise InternalConsistencyError("counterexample arc lengths drifted")
    return g, alpha, witness


# ---------------------------------------------------------------------------
# the empirical planarity harness
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PlanarTrial:
    """A graph produced by one of this module's planar-by-construction
    builders; the harness refuses anything else."""

    graph: MetricGraph
    description: str


def planar_grid_trial(seed: int, n: int = 4) -> PlanarTrial:
    """Random connected subgraph of an n x n triangulated grid with random
    rational edge lengths.  Planar by construction: the candidate edges
    are grid edges plus one diagonal per cell."""
    import random

    rng = random.Random(seed)

    def vid(r, c):
        return r * n + c

    pool = []
    for r in range(n):
        for c in range(n):
            if c + 1 < n:
                pool.append((vid(r, c), vid(r, c + 1)))
            if r + 1 < n:
                pool.append((vid(r, c), vid(r + 1, c)))
            if c + 1 < n and r + 1 < n:
                pool.append((vid(r, c), vid(r + 1, c + 1)))
    shuffled = pool[:]
    rng.shuffle(shuffled)
    parent = list(range(n * n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = []
    extra = []
    for u, v in shuffled:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree.append((u, v))
        elif rng.random() < 0.4:
            extra.append((u, v))
    if not extra:
        leftovers = [e for e in shuffled if e not in tree]
        extra = leftovers[:1]
    chosen = tree + extra
    chosen.sort()
    edges = [
        (u, v, Fraction(rng.randint(1, 24), rng.choice([1, 2, 3])))
        for u, v in chosen
    ]
    return PlanarTrial(MetricGraph(n * n, edges),
                       f"grid {n}x{n} seed {seed}")


def planar_cycle_trial(length=1) -> PlanarTrial:
    """A standalone circle, planar by construction."""
    g = MetricGraph(1, [(0, 0, parse_rational(length))])
    return PlanarTrial(g, "single circle")


@dataclass
class HarnessRow:
    trial: int
    loops_tested: int
    no_obstruction: int
    certificate: int
    inconclusive: int


@dataclass
class HarnessReport:
    rows: list
    counterexamples: list = field(default_factory=list)

    @property
    def totals(self) -> dict:
        return {
            "trials": len(self.rows),
            "loops_tested": sum(r.loops_tested for r in self.rows),
            "no_obstruction": sum(r.no_obstruction for r in self.rows),
            "certificate": sum(r.certificate for r in self.rows),
            "inconclusive": sum(r.inconclusive for r in self.rows),
        }

    def to_csv(self) -> str:
        lines = ["trial,loops_tested,no_obstruction,certificate,inconclusive"]
        for r in self.rows:
            lines.append(
                f"{r.trial},{r.loops_tested},{r.no_obstruction},"
                f"{r.certificate},{r.inconclusive}"
            )
        return "\n".join(lines) + "\n"


def conjecture_harness(seed: int, trials: int, bound: int,
                       graphs: Optional[Sequence] = None,
                       max_functionals: int = 2000) -> HarnessReport:
    """Run the obstruction search over every minimum-basis loop of planar
    test graphs; a certificate on a planar instance would be a
    counterexample candidate and is collected loudly.

    graphs, when given, must be PlanarTrial instances from this module's
    builders; anything else is refused, because the harness has no
    planarity tester and trusts provenance only.
    """
    if trials < 1 and not graphs:
        raise InvalidInputError("need at least one trial")
    if graphs is not None:
        for item in graphs:
            if not isinstance(item, PlanarTrial):
                raise InvalidInputError(
                    "input not from the planar generator: pass PlanarTrial "
                    "objects produced by the harness builders"
                )
        pool = list(graphs)
    else:
        pool = [planar_grid_trial(seed * 100003 + t) for t in range(trials)]
    rows = []
    counterexamples = []
    for t, trial in enumerate(pool):
        g = trial.graph
        if g.cycle_rank == 0:
            rows.append(HarnessRow(t, 0, 0, 0, 0))
            continue
        basis = minimum_cycle_basis(g)
        cover = _WindingCover(g, basis)
        row = HarnessRow(t, 0, 0, 0, 0)
        for alpha in basis:
            row.loops_tested += 1
            result = winding_obstruction_search(
                g, alpha, [], bound, basis=basis, cover=cover,
                max_functionals=max_functionals,
            )
            if isinstance(result, ObstructionCertificate):
                row.certificate += 1
                counterexamples.append(
                    {"trial": t, "description": trial.description,
                     "certificate": result.to_json()}
                )
            elif isinstance(result, NoObstructionFound):
                row.no_obstruction += 1
            else:
                row.inconclusive += 1
        rows.append(row)
    return HarnessReport(rows, counterexamples)
