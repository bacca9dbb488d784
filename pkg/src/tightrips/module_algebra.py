"""Persistence modules on finite scale grids over a prime field.

A module is a strictly increasing grid of rational scales s_0 < ... < s_{k-1}
with a vector space dimension at each scale and bonding matrices between
consecutive scales.  Homology-derived modules use the persistence basis of
the reduction (creator cycles indexed by filtration position), so grid
evaluation never recomputes echelon forms per scale.

Grid bars are index ranges [u, v]; they rationalize to (s_{u-1}, s_v] with
bars whose support reaches the last grid index reported as unbounded.  With
the default grid (all diameters, their midpoints, and one scale past the
end) this reproduces reduction bars exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import _gfp
from ._gfp import check_prime
from .errors import InternalConsistencyError, InvalidInputError
from .metric_graph import format_rational, parse_rational
from .rips_persistence import Bar, Barcode, Filtration, build_rips_filtration
from . import reduction


class ScaleGrid:
    """Strictly increasing, nonempty list of rational scales."""

    def __init__(self, scales: Sequence):
        vals = [parse_rational(s) for s in scales]
        if not vals:
            raise InvalidInputError("scale grid must be nonempty")
        for a, b in zip(vals, vals[1:]):
            if not a < b:
                raise InvalidInputError("scale grid must be strictly increasing")
        self.scales = tuple(vals)

    def __len__(self) -> int:
        return len(self.scales)

    def __getitem__(self, i: int) -> Fraction:
        return self.scales[i]

    def __iter__(self):
        return iter(self.scales)

    def __eq__(self, other) -> bool:
        return isinstance(other, ScaleGrid) and self.scales == other.scales

    def __repr__(self) -> str:  # pragma: no cover
        return f"ScaleGrid([{', '.join(format_rational(s) for s in self.scales)}])"


def default_scale_grid(filtration: Filtration) -> ScaleGrid:
    """All distinct positive diameters, midpoints between consecutive ones,
    and one scale past the largest diameter.

    Midpoints give every bar an interior grid scale; the trailing scale
    separates death-at-the-last-diameter from never dying.  Diameter zero
    is left out (grid scales must be positive); bars born at zero
    rationalize through the module's left end, which is zero, so grid
    barcodes still reproduce reduction barcodes exactly.
    """
    diams = [d for d in filtration.diameters() if d > 0]
    if not diams:
        return ScaleGrid([Fraction(1)])
    pts = []
    for i, d in enumerate(diams):
        pts.append(d)
        if i + 1 < len(diams):
            pts.append((d + diams[i + 1]) / 2)
    pts.append(diams[-1] + 1)
    return ScaleGrid(pts)


class PersistenceModule:
    """Vector spaces over GF(p) on a grid with composable bonding matrices."""

    def __init__(self, grid: ScaleGrid, dims: Sequence[int], bonding, p: int,
                 dim_label: int = 0, left_end=Fraction(0)):
        self.grid = grid
        self.dims = [int(d) for d in dims]
        self.p = check_prime(p)
        self.dim_label = int(dim_label)
        self.left_end = parse_rational(left_end)
        k = len(grid)
        if len(self.dims) != k:
            raise InvalidInputError("dims length must match grid length")
        if len(bonding) != k - 1:
            raise InvalidInputError("need one bonding matrix per grid step")
        self.bonding = []
        for i, m in enumerate(bonding):
            arr = np.asarray(m, dtype=np.int64) % p
            want = (self.dims[i + 1], self.dims[i])
            if arr.size == 0 and 0 in want:
                arr = np.zeros(want, dtype=np.int64)
            if arr.shape != want:
                raise InvalidInputError(
                    f"bonding {i} has shape {arr.shape}, expected {want}"
                )
            self.bonding.append(arr)
        self._rho_cache: dict[tuple, np.ndarray] = {}

    def rho(self, i: int, j: int) -> np.ndarray:
        """Composite bonding matrix from scale index i to j (i <= j)."""
        if not (0 <= i <= j < len(self.grid)):
            raise InvalidInputError(f"bonding indices ({i},{j}) out of range")
        if i == j:
            return np.eye(self.dims[i], dtype=np.int64)
        key = (i, j)
        if key not in self._rho_cache:
            m = self.bonding[i]
            for t in range(i + 1, j):
                m = (self.bonding[t] @ m) % self.p
            self._rho_cache[key] = m
        return self._rho_cache[key]

    def rank(self, i: int, j: int) -> int:
        return _gfp.rank(self.rho(i, j), self.p)

    def direct_sum(self, other: "PersistenceModule") -> "PersistenceModule":
        if self.grid != other.grid or self.p != other.p:
            raise InvalidInputError("direct sum needs matching grid and field")
        dims = [a + b for a, b in zip(self.dims, other.dims)]
        bonding = []
        for i in range(len(self.grid) - 1):
            blk = np.zeros((dims[i + 1], dims[i]), dtype=np.int64)
            blk[: self.dims[i + 1], : self.dims[i]] = self.bonding[i]
            blk[self.dims[i + 1]:, self.dims[i]:] = other.bonding[i]
            bonding.append(blk)
        return PersistenceModule(self.grid, dims, bonding, self.p,
                                 dim_label=self.dim_label,
                                 left_end=self.left_end)

    def to_json(self) -> dict:
        return {
            "grid": [format_rational(s) for s in self.grid],
            "dims": list(self.dims),
            "field": self.p,
            "dim": self.dim_label,
            "bonding": [m.flatten().tolist() for m in self.bonding],
        }

    @staticmethod
    def from_json(data) -> "PersistenceModule":
        grid = ScaleGrid(data["grid"])
        dims = [int(d) for d in data["dims"]]
        bonding = []
        for i, flat in enumerate(data["bonding"]):
            arr = np.array(flat, dtype=np.int64).reshape(dims[i + 1], dims[i])
            bonding.append(arr)
        return PersistenceModule(grid, dims, bonding, int(data["field"]),
                                 dim_label=int(data.get("dim", 0)))

    def __repr__(self) -> str:  # pragma: no cover
        return f"PersistenceModule(dims={self.dims}, p={self.p})"


def interval_module(grid: ScaleGrid, lo, hi, p: int,
                    dim_label: int = 0) -> PersistenceModule:
    """The interval module supported on grid scales s with lo < s <= hi.

    hi may be None for an unbounded interval.
    """
    lo = parse_rational(lo)
    hi_v = None if hi is None else parse_rational(hi)
    dims = []
    for s in grid:
        inside = lo < s and (hi_v is None or s <= hi_v)
        dims.append(1 if inside else 0)
    bonding = []
    for i in range(len(grid) - 1):
        if dims[i] == 1 and dims[i + 1] == 1:
            bonding.append(np.array([[1]], dtype=np.int64))
        else:
            bonding.append(np.zeros((dims[i + 1], dims[i]), dtype=np.int64))
    return PersistenceModule(grid, dims, bonding, p, dim_label=dim_label)


class ModuleMorphism:
    """Per-scale matrices commuting with the bonding maps."""

    def __init__(self, source: PersistenceModule, target: PersistenceModule,
                 maps):
        if source.grid != target.grid or source.p != target.p:
            raise InvalidInputError("morphism needs matching grid and field")
        self.source = source
        self.target = target
        self.p = source.p
        k = len(source.grid)
        if len(maps) != k:
            raise InvalidInputError("need one matrix per grid scale")
        self.maps = []
        for i, m in enumerate(maps):
            arr = np.asarray(m, dtype=np.int64) % self.p
            if arr.shape != (target.dims[i], source.dims[i]):
                raise InvalidInputError(
                    f"morphism matrix {i} has shape {arr.shape}, expected "
                    f"({target.dims[i]}, {source.dims[i]})"
                )
            self.maps.append(arr)
        for i in range(k - 1):
            lhs = (self.maps[i + 1] @ source.bonding[i]) % self.p
            rhs = (target.bonding[i] @ self.maps[i]) % self.p
            if not np.array_equal(lhs, rhs):
                raise InvalidInputError(f"morphism does not commute at step {i}")

    @property
    def injective(self) -> bool:
        return all(
            _gfp.rank(self.maps[i], self.p) == self.source.dims[i]
            for i in range(len(self.maps))
        )


# ---------------------------------------------------------------------------
# persistence basis: creators, cycle representatives, killer columns
# ---------------------------------------------------------------------------

class _PersistenceBasis:
    """Creator cycles of one homology dimension of a filtration.

    For each creator (zero column of the dimension-n boundary reduction)
    we keep its birth, death, cycle representative V, and for dead
    creators the reduced killer column R from the (n+1)-reduction.  Any
    cycle supported on a scale prefix can then be expressed in the alive
    creator basis by peeling leading entries: subtract V of an alive
    creator (emitting a coordinate) or the killer column of a dead one
    (changing nothing in homology).
    """

    def __init__(self, filtration: Filtration, n: int, p: int):
        self.filtration = filtration
        self.n = n
        self.p = check_prime(p)
        if n < 0:
            raise InvalidInputError("homology dimension must be >= 0")
        self.births = {}
        self.deaths = {}
        self.v_vecs = {}
        self.killers = {}
        if n > filtration.top_dim:
            self.creators = []
            return
        verts_n, diams_n = filtration.by_dim[n]
        if n == 0:
            creators = list(range(len(verts_n)))
            for j in creators:
                self.v_vecs[j] = {j: 1}
        else:
            n_rows = len(filtration.by_dim[n - 1][0])
            indptr, indices, data = filtration.boundary_csc(n, p)
            _, _, v_cols = reduction.reduce_matrix(
                n_rows, indptr, indices, data, p, skip=None, track=True
            )
            creators = sorted(v_cols.keys())
            for j in creators:
                rows, coefs = v_cols[j]
                self.v_vecs[j] = {int(r): int(c) for r, c in zip(rows, coefs)}
        self.creators = creators
        for j in creators:
            self.births[j] = diams_n[j]
        if n + 1 <= filtration.top_dim:
            n_rows = len(verts_n)
            indptr, indices, data = filtration.boundary_csc(n + 1, p)
            pivots, r_cols, _ = reduction.reduce_matrix(
                n_rows, indptr, indices, data, p, skip=None, track=True
            )
            diams_up = filtration.by_dim[n + 1][1]
            for tau, i in enumerate(pivots):
                if i < 0:
                    continue
                i = int(i)
                rows, coefs = r_cols[tau]
                self.killers[i] = {int(r): int(c) for r, c in zip(rows, coefs)}
                self.deaths[i] = diams_up[tau]

    def alive_at(self, scale: Fraction) -> list[int]:
        return [
            j
            for j in self.creators
            if self.births[j] < scale
            and (j not in self.deaths or scale <= self.deaths[j])
        ]

    def express(self, chain: dict, scale: Fraction) -> dict:
        """Coordinates of a cycle's class in the alive-creator basis."""
        p = self.p
        z = {r: c % p for r, c in chain.items() if c % p}
        coords = {}
        while z:
            low = max(z)
            c = z[low]
            if low in self.v_vecs:
                birth = self.births[low]
                if birth >= scale:
                    raise InternalConsistencyError(
                        "cycle involves a creator outside the scale prefix"
                    )
                death = self.deaths.get(low)
                if death is not None and death < scale:
                    r = self.killers[low]
                    factor = (c * pow(r[low], -1, p)) % p
                    _subtract(z, r, factor, p)
                else:
                    coords[low] = c
                    _subtract(z, self.v_vecs[low], c, p)
            else:
                raise InternalConsistencyError(
                    "cycle has a leading term at a non-creator simplex"
                )
        return coords


def _subtract(z: dict, vec: dict, factor: int, p: int) -> None:
    for r, c in vec.items():
        nv = (z.get(r, 0) - factor * c) % p
        if nv:
            z[r] = nv
        else:
            z.pop(r, None)


def _module_from_basis(basis: _PersistenceBasis, grid: ScaleGrid) -> PersistenceModule:
    alive = [basis.alive_at(s) for s in grid]
    dims = [len(a) for a in alive]
    bonding = []
    for i in range(len(grid) - 1):
        mat = np.zeros((dims[i + 1], dims[i]), dtype=np.int64)
        idx_next = {j: t for t, j in enumerate(alive[i + 1])}
        for col, j in enumerate(alive[i]):
            coords = basis.express(dict(basis.v_vecs[j]), grid[i + 1])
            for cj, coef in coords.items():
                mat[idx_next[cj], col] = coef
        bonding.append(mat)
    mod = PersistenceModule(grid, dims, bonding, basis.p, dim_label=basis.n)
    mod._basis = basis
    mod._alive = alive
    return mod


def homology_module(filtration: Filtration, grid: ScaleGrid, n: int,
                    p: int) -> PersistenceModule:
    """Homology of the open subcomplexes at each grid scale, with bonding
    matrices induced by inclusion, in the persistence-creator basis.
    """
    if any(s <= 0 for s in grid):
        raise InvalidInputError("grid scales must be positive")
    return _module_from_basis(_PersistenceBasis(filtration, n, p), grid)


def inclusion_morphism(a_idx: Sequence[int], fX: Filtration, grid: ScaleGrid,
                       n: int, p: int):
    """Modules of a sub-sample and the full sample plus the induced map.

    a_idx selects sample points; the sub-filtration is built on the induced
    distances, so it is a subfiltration of fX simplex by simplex.  Returns
    (M, N, phi) with phi injective and commuting; a commutation failure
    would mean broken basis bookkeeping and raises InternalConsistencyError.
    """
    idx = list(a_idx)
    if len(set(idx)) != len(idx) or not idx:
        raise InvalidInputError("a_idx must be a nonempty set of sample indices")
    if any(not (0 <= i < len(fX.sample)) for i in idx):
        raise InvalidInputError("a_idx out of range for the sample")
    sub = fX.sample.restrict(idx)
    fA = build_rips_filtration(sub, fX.max_dim)
    basis_a = _PersistenceBasis(fA, n, p)
    basis_x = _PersistenceBasis(fX, n, p)
    M = _module_from_basis(basis_a, grid)
    N = _module_from_basis(basis_x, grid)

    maps = []
    x_index = fX.index[n]
    a_verts = fA.by_dim[n][0]
    for i, s in enumerate(grid):
        mat = np.zeros((N.dims[i], M.dims[i]), dtype=np.int64)
        idx_n = {j: t for t, j in enumerate(N._alive[i])}
        for col, j in enumerate(M._alive[i]):
            chain = {}
            for pos, coef in basis_a.v_vecs[j].items():
                verts = tuple(idx[v] for v in a_verts[pos])
                chain[x_index[verts]] = coef
            coords = basis_x.express(chain, s)
            for cj, coef in coords.items():
                mat[idx_n[cj], col] = coef
        maps.append(mat)
    try:
        phi = ModuleMorphism(M, N, maps)
    except InvalidInputError as exc:
        raise InternalConsistencyError(
            f"induced morphism does not commute: {exc}"
        ) from exc
    return M, N, phi


# ---------------------------------------------------------------------------
# tightness
# ---------------------------------------------------------------------------

@dataclass
class TightnessReport:
    tight: bool
    pair: Optional[tuple] = None
    witness: Optional[list] = None

    def to_json(self) -> dict:
        return {
            "tight": self.tight,
            "pair": list(self.pair) if self.pair else None,
            "witness": list(self.witness) if self.witness is not None else None,
        }


def check_tight(phi: ModuleMorphism) -> TightnessReport:
    """Decide Im rho^M_{i,j} = M_j `intersect` Im rho^N_{i,j} for all i < j.

    Subspaces of N_j throughout: the left side is phi_j applied to the
    source bonding image, the right side intersects phi_j(M_j) with the
    target bonding image.  On failure returns the lexicographically first
    failing pair and a vector of the intersection missing from the image.
    """
    if not phi.injective:
        raise InvalidInputError("tightness requires an injective morphism")
    M, N, p = phi.source, phi.target, phi.p
    k = len(M.grid)
    for i in range(k):
        for j in range(i + 1, k):
            lhs = _gfp.column_space((phi.maps[j] @ M.rho(i, j)) % p, p)
            rhs = _gfp.intersect_spaces(phi.maps[j],
                                        _gfp.column_space(N.rho(i, j), p), p)
            if _gfp.rank(lhs, p) == _gfp.rank(rhs, p):
                continue
            for t in range(rhs.shape[1]):
                vec = rhs[:, t]
                if not _gfp.in_column_span(lhs, vec, p):
                    return TightnessReport(False, (i, j), [int(x) for x in vec])
            raise InternalConsistencyError("rank mismatch without witness")
    return TightnessReport(True)


# ---------------------------------------------------------------------------
# barcodes of modules
# ---------------------------------------------------------------------------

def _grid_bar(module: PersistenceModule, u: int, v: int) -> Bar:
    birth = module.left_end if u == 0 else module.grid[u - 1]
    death = None if v == len(module.grid) - 1 else module.grid[v]
    return Bar(module.dim_label, birth, death)


def barcode_of_module(module: PersistenceModule) -> Barcode:
    """Interval decomposition via the rank function.

    The multiplicity of the support [u, v] is
    r(u,v) - r(u-1,v) - r(u,v+1) + r(u-1,v+1), with out-of-range ranks
    zero; supports reaching the last grid index rationalize to unbounded
    bars.  Negative multiplicities indicate corrupted bonding data.
    """
    k = len(module.grid)

    def r(i: int, j: int) -> int:
        if i < 0 or j > k - 1:
            return 0
        return module.rank(i, j)

    bars = []
    for u in range(k):
        for v in range(u, k):
            mult = r(u, v) - r(u - 1, v) - r(u, v + 1) + r(u - 1, v + 1)
            if mult < 0:
                raise InternalConsistencyError(
                    f"negative multiplicity {mult} at support [{u},{v}]"
                )
            bar = _grid_bar(module, u, v)
            if bar.death is not None and bar.death <= bar.birth:
                if mult:
                    raise InternalConsistencyError(
                        "nonempty bar with empty rational support"
                    )
                continue
            bars.extend([bar] * mult)
    return Barcode(bars, module.p)


@dataclass
class MultiplicityWorkspace:
    scale_index: int
    support: tuple
    v_basis: np.ndarray
    w_basis: np.ndarray
    multiplicity: int

    def bar(self, module: PersistenceModule) -> Bar:
        return _grid_bar(module, *self.support)


def multiplicity_via_VW(module: PersistenceModule, t: int,
                        interval: tuple) -> MultiplicityWorkspace:
    """Multiplicity of the grid bar supported on [u, v] via the V/W
    subspaces at scale index t.

    V_t intersects bonding images from inside the bar with bonding kernels
    past its death; W_t adds the strictly-earlier-birth and strictly-
    earlier-death variants.  The multiplicity dim V - dim W is independent
    of the chosen t in [u, v]; kernels past the last grid index are read
    as the whole space, images from before the grid as zero, which is the
    finite-grid reading of the unbounded-interval variant.
    """
    u, v = interval
    k = len(module.grid)
    v = k - 1 if v is None else v
    if not (0 <= u <= v <= k - 1):
        raise InvalidInputError(f"support [{u},{v}] out of grid range")
    if not (u <= t <= v):
        raise InvalidInputError(f"scale index {t} outside the support [{u},{v}]")
    p = module.p
    dim_t = module.dims[t]

    images_inside = [_gfp.column_space(module.rho(w, t), p) for w in range(u, t)]
    kers_past = [_gfp.nullspace(module.rho(t, w), p) for w in range(v + 1, k)]

    v_space = _gfp.intersect_many(images_inside + kers_past, dim_t, p)

    if u == 0:
        earlier_image = np.zeros((dim_t, 0), dtype=np.int64)
    else:
        earlier_image = _gfp.column_space(module.rho(u - 1, t), p)
    w1 = _gfp.intersect_many([earlier_image] + kers_past, dim_t, p)
    ker_at_death = _gfp.nullspace(module.rho(t, v), p)
    w2 = _gfp.intersect_many(images_inside + [ker_at_death], dim_t, p)
    w_space = _gfp.sum_spaces(w1, w2, p)

    if not _gfp.is_subspace(w_space, v_space, p):
        raise InternalConsistencyError("W_t is not contained in V_t")
    mult = _gfp.rank(v_space, p) - _gfp.rank(w_space, p)
    if mult < 0:
        raise InternalConsistencyError("negative V/W multiplicity")
    return MultiplicityWorkspace(t, (u, v), v_space, w_space, mult)


# ---------------------------------------------------------------------------
# barcode inclusion
# ---------------------------------------------------------------------------

@dataclass
class InclusionReport:
    included: bool
    matching: list
    deficit: Optional[tuple] = None

    def to_json(self) -> dict:
        def key_json(key):
            dim, birth, death = key
            return {
                "dim": dim,
                "birth": format_rational(birth),
                "death": "inf" if death is None else format_rational(death),
            }

        return {
            "included": self.included,
            "matched_pairs": len(self.matching),
            "deficit": key_json(self.deficit) if self.deficit else None,
        }


def verify_barcode_inclusion(b_a: Barcode, b_x: Barcode) -> InclusionReport:
    """Multiset inclusion of barcodes with exact endpoint equality.

    True iff every bar of b_a has at least its b_a-multiplicity in b_x;
    the returned matching injects b_a's bars into b_x's.
    """
    if b_a.field != b_x.field:
        raise InvalidInputError("barcodes over different fields")
    pool: dict[tuple, list] = {}
    for bar in b_x.bars:
        pool.setdefault((bar.dim, bar.birth, bar.death), []).append(bar)
    matching = []
    for bar in b_a.bars:
        key = (bar.dim, bar.birth, bar.death)
        avail = pool.get(key)
        if not avail:
            return InclusionReport(False, matching, deficit=key)
        matching.append((bar, avail.pop()))
    return InclusionReport(True, matching)
