"""Vietoris-Rips filtrations and persistent homology over a prime field.

The Rips convention is open: a simplex with diameter D belongs to the
complex at scale r exactly when D < r.  On finite data this forces every
bar to be half-open, (birth, death] with birth < death, or (birth, inf);
pairs with equal endpoints are empty intervals and are dropped.

Simplices are ordered by (diameter, dimension, vertex tuple); the order is
total, so the reduction and all downstream reports are deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import reduction
from ._gfp import check_prime
from .errors import InternalConsistencyError, InvalidInputError, ResourceBudgetError
from .metric_graph import SampledSpace, format_rational, parse_rational

DEFAULT_SIMPLEX_BUDGET = 5_000_000


@dataclass(frozen=True)
class Simplex:
    vertices: tuple
    diameter: Fraction

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1


class Filtration:
    """Flag filtration on a finite metric space, grouped by dimension.

    by_dim[d] holds (vertex tuple, diameter) pairs in filtration order;
    every face precedes its cofaces because faces never have larger
    diameter and ties sort lower-dimensional simplices first.
    """

    def __init__(self, sample: SampledSpace, by_dim, top_dim: int, max_dim: int):
        self.sample = sample
        self.by_dim = by_dim  # list over d of (list[tuple verts], list[Fraction])
        self.top_dim = top_dim
        self.max_dim = max_dim
        self.index = []
        for verts, _ in by_dim:
            self.index.append({v: i for i, v in enumerate(verts)})

    def counts(self) -> list[int]:
        return [len(verts) for verts, _ in self.by_dim]

    def simplices(self, d: int):
        verts, diams = self.by_dim[d]
        return [Simplex(v, diam) for v, diam in zip(verts, diams)]

    def diameters(self) -> list[Fraction]:
        vals = set()
        for _, diams in self.by_dim:
            vals.update(diams)
        return sorted(vals)

    def count_below(self, d: int, scale: Fraction) -> int:
        """Number of d-simplices with diameter < scale (a prefix)."""
        diams = self.by_dim[d][1]
        lo, hi = 0, len(diams)
        while lo < hi:
            mid = (lo + hi) // 2
            if diams[mid] < scale:
                lo = mid + 1
            else:
                hi = mid
        return lo

    def boundary_csc(self, d: int, p: int):
        """Boundary matrix of d-simplices as CSC triplets over GF(p)."""
        verts_d, _ = self.by_dim[d]
        face_index = self.index[d - 1]
        indptr = np.zeros(len(verts_d) + 1, dtype=np.int64)
        rows_all = []
        data_all = []
        for j, verts in enumerate(verts_d):
            entries = []
            for i in range(len(verts)):
                face = verts[:i] + verts[i + 1:]
                sign = 1 if i % 2 == 0 else p - 1
                entries.append((face_index[face], sign))
            entries.sort()
            rows_all.extend(r for r, _ in entries)
            data_all.extend(c for _, c in entries)
            indptr[j + 1] = len(rows_all)
        return (
            indptr,
            np.array(rows_all, dtype=np.int64),
            np.array(data_all, dtype=np.int64),
        )


def simplex_budget_count(n: int, top_dim: int) -> int:
    return sum(math.comb(n, k + 1) for k in range(min(top_dim, n - 1) + 1))


def build_rips_filtration(sample: SampledSpace, max_dim: int,
                          budget: int = DEFAULT_SIMPLEX_BUDGET) -> Filtration:
    """Full flag filtration with all simplices of dimension <= max_dim + 1.

    One dimension above max_dim is kept so that max_dim classes can die.
    Raises ResourceBudgetError naming the simplex count when the total
    would exceed `budget`.
    """
    if max_dim < 0:
        raise InvalidInputError("max_dim must be >= 0")
    n = len(sample)
    if n == 0:
        raise InvalidInputError("empty sample")
    top_dim = min(max_dim + 1, n - 1)
    total = simplex_budget_count(n, top_dim)
    if total > budget:
        raise ResourceBudgetError(
            f"filtration would contain {total} simplices, over budget {budget}"
        )

    # rank-encode distances so that enumeration compares small ints
    values = sorted({sample.matrix[i][j] for i in range(n) for j in range(i + 1, n)})
    value_rank = {v: r + 1 for r, v in enumerate(values)}
    rank = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            r = value_rank[sample.matrix[i][j]]
            rank[i][j] = r
            rank[j][i] = r
    rank_value = [Fraction(0)] + values

    by_dim = []
    current = [((v,), 0) for v in range(n)]
    by_dim.append(current)
    for d in range(1, top_dim + 1):
        nxt = []
        for verts, r in current:
            last = verts[-1]
            for w in range(last + 1, n):
                rw = r
                for u in verts:
                    ru = rank[u][w]
                    if ru > rw:
                        rw = ru
                nxt.append((verts + (w,), rw))
        nxt.sort(key=lambda t: (t[1], t[0]))
        by_dim.append(nxt)
        current = nxt

    packed = []
    for d, items in enumerate(by_dim):
        verts = [v for v, _ in items]
        diams = [rank_value[r] for _, r in items]
        packed.append((verts, diams))
    return Filtration(sample, packed, top_dim, max_dim)


# ---------------------------------------------------------------------------
# bars and barcodes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Bar:
    dim: int
    birth: Fraction
    death: Optional[Fraction]  # None encodes an infinite bar

    @property
    def is_infinite(self) -> bool:
        return self.death is None

    def sort_key(self):
        death_key = (1, Fraction(0)) if self.death is None else (0, self.death)
        return (self.dim, self.birth, death_key)

    def __repr__(self) -> str:  # pragma: no cover
        hi = "inf" if self.death is None else format_rational(self.death)
        return f"Bar(dim={self.dim}, ({format_rational(self.birth)}, {hi}])"


class Barcode:
    """Multiset of bars grouped by dimension, over GF(p)."""

    def __init__(self, bars, p: int):
        self.bars = sorted(bars, key=lambda b: b.sort_key())
        self.field = p

    def in_dim(self, d: int) -> list[Bar]:
        return [b for b in self.bars if b.dim == d]

    def dims(self) -> list[int]:
        return sorted({b.dim for b in self.bars})

    def betti_at(self, d: int, r: Fraction) -> int:
        return sum(
            1
            for b in self.in_dim(d)
            if b.birth < r and (b.death is None or r <= b.death)
        )

    def __len__(self) -> int:
        return len(self.bars)

    def __eq__(self, other) -> bool:
        return isinstance(other, Barcode) and self.bars == other.bars

    def to_json(self) -> list[dict]:
        return [
            {
                "dim": b.dim,
                "birth": format_rational(b.birth),
                "death": "inf" if b.death is None else format_rational(b.death),
            }
            for b in self.bars
        ]

    def to_csv(self) -> str:
        lines = ["dim,birth,death"]
        for b in self.bars:
            death = "inf" if b.death is None else format_rational(b.death)
            lines.append(f"{b.dim},{format_rational(b.birth)},{death}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_json(data, p: int = 2) -> "Barcode":
        bars = []
        for item in data:
            death = item["death"]
            bars.append(
                Bar(
                    int(item["dim"]),
                    parse_rational(item["birth"]),
                    None if death in ("inf", None) else parse_rational(death),
                )
            )
        return Barcode(bars, p)

    def __repr__(self) -> str:  # pragma: no cover
        return f"Barcode({self.bars})"


def reduce_persistence(filtration: Filtration, p: int) -> Barcode:
    """Persistent homology barcode by column reduction with clearing.

    Dimensions are reduced top-down; the pivots found in dimension d+1
    identify the d-columns that would reduce to zero, which are skipped
    (cleared).  Emits one (birth, death] bar per persistence pair with
    distinct endpoints, and (birth, inf) for unpaired creators.  Asserts
    the Euler characteristic identity on every run.
    """
    p = check_prime(p)
    bars = []
    K = filtration.top_dim
    cleared = {d: np.zeros(len(filtration.by_dim[d][0]), dtype=np.uint8)
               for d in range(K + 1)}
    killed = {d: set() for d in range(K + 1)}
    creators = {0: set(range(len(filtration.by_dim[0][0])))}
    for d in range(K, 0, -1):
        n_rows = len(filtration.by_dim[d - 1][0])
        indptr, indices, data = filtration.boundary_csc(d, p)
        pivots, _, _ = reduction.reduce_matrix(
            n_rows, indptr, indices, data, p, skip=cleared[d], track=False
        )
        diams_d = filtration.by_dim[d][1]
        diams_f = filtration.by_dim[d - 1][1]
        creators[d] = {j for j in range(len(pivots)) if pivots[j] < 0}
        for j, i in enumerate(pivots):
            if i < 0:
                continue
            i = int(i)
            killed[d - 1].add(i)
            cleared[d - 1][i] = 1
            if diams_f[i] != diams_d[j]:
                bars.append(Bar(d - 1, diams_f[i], diams_d[j]))
    infinite_per_dim = {}
    for d in range(0, K + 1):
        diams = filtration.by_dim[d][1]
        inf_ids = creators.get(d, set()) - killed[d]
        infinite_per_dim[d] = len(inf_ids)
        if d <= filtration.max_dim:
            for j in sorted(inf_ids):
                bars.append(Bar(d, diams[j], None))

    counts = filtration.counts()
    chi_cells = sum((-1) ** d * c for d, c in enumerate(counts))
    chi_betti = sum((-1) ** d * infinite_per_dim[d] for d in range(K + 1))
    if chi_cells != chi_betti:
        raise InternalConsistencyError(
            f"Euler check failed: cells {chi_cells} != betti {chi_betti}"
        )
    return Barcode(bars, p)


# ---------------------------------------------------------------------------
# the analytic circle oracle
# ---------------------------------------------------------------------------

def circle_barcode_oracle(total_length, max_dim: int, p: int = 2) -> Barcode:
    """Barcode of a geodesic circle of the given circumference.

    Dimension 0 carries (0, inf); each odd dimension 2k+1 <= max_dim
    carries exactly one bar (k*L/(2k+1), (k+1)*L/(2k+3)]; even dimensions
    >= 2 are empty.
    """
    L = parse_rational(total_length)
    if L <= 0:
        raise InvalidInputError("circle length must be positive")
    bars = [Bar(0, Fraction(0), None)]
    k = 0
    while 2 * k + 1 <= max_dim:
        birth = Fraction(k, 2 * k + 1) * L
        death = Fraction(k + 1, 2 * k + 3) * L
        bars.append(Bar(2 * k + 1, birth, death))
        k += 1
    return Barcode(bars, p)


# ---------------------------------------------------------------------------
# sampling-tolerant comparison
# ---------------------------------------------------------------------------

@dataclass
class MatchReport:
    matched: list
    unmatched_computed: list
    unmatched_reference: list

    @property
    def full_match(self) -> bool:
        return not self.unmatched_computed and not self.unmatched_reference

    def to_json(self) -> dict:
        def bar_json(b: Bar):
            return {
                "dim": b.dim,
                "birth": format_rational(b.birth),
                "death": "inf" if b.death is None else format_rational(b.death),
            }

        return {
            "full_match": self.full_match,
            "matched": [
                {"computed": bar_json(c), "reference": bar_json(r)}
                for c, r in self.matched
            ],
            "unmatched_computed": [bar_json(b) for b in self.unmatched_computed],
            "unmatched_reference": [bar_json(b) for b in self.unmatched_reference],
        }


def match_barcodes(computed: Barcode, reference: Barcode, tol) -> MatchReport:
    """Greedy per-dimension matching of bars up to endpoint tolerance.

    A computed bar matches a reference bar when both births differ by at
    most tol and deaths do too; an infinite death only ever matches an
    infinite death.
    """
    tol = parse_rational(tol)
    if tol < 0:
        raise InvalidInputError("tolerance must be >= 0")
    matched = []
    un_comp = []
    un_ref = []
    dims = sorted(set(computed.dims()) | set(reference.dims()))
    for d in dims:
        comp = computed.in_dim(d)
        refs = reference.in_dim(d)
        used = [False] * len(refs)
        for c in comp:
            hit = None
            for k, r in enumerate(refs):
                if used[k]:
                    continue
                if (c.death is None) != (r.death is None):
                    continue
                if abs(c.birth - r.birth) > tol:
                    continue
                if c.death is not None and abs(c.death - r.death) > tol:
                    continue
                hit = k
                break
            if hit is None:
                un_comp.append(c)
            else:
                used[hit] = True
                matched.append((c, refs[hit]))
        un_ref.extend(r for k, r in enumerate(refs) if not used[k])
    return MatchReport(matched, un_comp, un_ref)
