"""Dense linear algebra over the prime field GF(p).

Vectors and matrices are numpy int64 arrays with entries reduced mod p.
Subspaces are represented by matrices whose *columns* form a basis; the
empty subspace of an n-dimensional ambient space is an (n, 0) array.
Everything here is exact: no floating point anywhere.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidInputError


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def check_prime(p: int) -> int:
    if not is_prime(p):
        raise InvalidInputError(f"field characteristic {p} is not prime")
    return int(p)


def _as_matrix(a, p: int) -> np.ndarray:
    m = np.asarray(a, dtype=np.int64) % p
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    return m


def rref(a, p: int):
    """Reduced row echelon form. Returns (R, pivot_column_indices)."""
    m = _as_matrix(a, p).copy()
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        pr = nz[0] + r
        if pr != r:
            m[[r, pr]] = m[[pr, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = (m[r] * inv) % p
        other = np.nonzero(m[:, c])[0]
        other = other[other != r]
        if other.size:
            m[other] = (m[other] - np.outer(m[other, c], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a, p: int) -> int:
    m = _as_matrix(a, p)
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def column_space(a, p: int) -> np.ndarray:
    """A basis (as columns, in reduced column echelon form) of the span."""
    m = _as_matrix(a, p)
    r, pivots = rref(m.T, p)
    return r[: len(pivots)].T.copy()


def nullspace(a, p: int) -> np.ndarray:
    """Columns form a basis of {x : a @ x = 0 (mod p)}."""
    m = _as_matrix(a, p)
    rows, cols = m.shape
    r, pivots = rref(m, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[fc, k] = 1
        for i, pc in enumerate(pivots):
            basis[pc, k] = (-r[i, fc]) % p
    return basis


def solve(a, b, p: int):
    """One solution x of a @ x = b (mod p), or None if inconsistent.

    b may be a vector or a matrix of stacked right-hand sides; the result
    has matching shape.
    """
    m = _as_matrix(a, p)
    rhs = np.asarray(b, dtype=np.int64) % p
    vector_rhs = rhs.ndim == 1
    if vector_rhs:
        rhs = rhs.reshape(-1, 1)
    rows, cols = m.shape
    aug = np.hstack([m, rhs])
    r, pivots = rref(aug, p)
    n_rhs = rhs.shape[1]
    for i in range(len(pivots)):
        if pivots[i] >= cols:
            return None
    # inconsistent if a zero row of the coefficient part has nonzero rhs
    rank_a = sum(1 for c in pivots if c < cols)
    if np.any(r[rank_a:, cols:] % p):
        return None
    x = np.zeros((cols, n_rhs), dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = r[i, cols:]
    return x[:, 0] if vector_rhs else x


def in_column_span(a, v, p: int) -> bool:
    return solve(_as_matrix(a, p), v, p) is not None


def sum_spaces(a, b, p: int) -> np.ndarray:
    m = np.hstack([_as_matrix(a, p), _as_matrix(b, p)])
    return column_space(m, p)


def intersect_spaces(a, b, p: int) -> np.ndarray:
    """Basis of col(a) `intersect` col(b), via the kernel of [a | -b]."""
    ma, mb = _as_matrix(a, p), _as_matrix(b, p)
    if ma.shape[1] == 0 or mb.shape[1] == 0:
        return np.zeros((ma.shape[0], 0), dtype=np.int64)
    stacked = np.hstack([ma, (-mb) % p])
    ker = nullspace(stacked, p)
    vecs = (ma @ ker[: ma.shape[1]]) % p
    return column_space(vecs, p)


def intersect_many(spaces, ambient_dim: int, p: int) -> np.ndarray:
    """Intersection of a list of column-span subspaces.

    An empty list means the full ambient space.
    """
    spaces = list(spaces)
    if not spaces:
        return np.eye(ambient_dim, dtype=np.int64)
    acc = column_space(spaces[0], p)
    for s in spaces[1:]:
        acc = intersect_spaces(acc, s, p)
    return acc


def spaces_equal(a, b, p: int) -> bool:
    ma, mb = _as_matrix(a, p), _as_matrix(b, p)
    ra, rb = rank(ma, p), rank(mb, p)
    if ra != rb:
        return False
    return rank(np.hstack([ma, mb]), p) == ra


def is_subspace(a, b, p: int) -> bool:
    """True iff col(a) is contained in col(b)."""
    mb = _as_matrix(b, p)
    return rank(np.hstack([mb, _as_matrix(a, p)]), p) == rank(mb, p)
