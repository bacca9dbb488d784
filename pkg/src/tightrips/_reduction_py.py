"""Pure-Python persistence reduction kernel.

Same contract as the compiled extension `tightrips._reduction`; selected at
import time by `tightrips.reduction` when the extension is unavailable.
The GF(2) no-tracking path packs columns into Python integers (one bit per
row), which keeps column addition at machine speed even here; the general
path works on sorted (row, coefficient) lists.
"""

from __future__ import annotations

import numpy as np


def _merge_subtract(col, other, factor, p):
    """col - factor * other over GF(p), both sorted (row, coef) lists."""
    out = []
    i = j = 0
    n1, n2 = len(col), len(other)
    while i < n1 or j < n2:
        if j >= n2 or (i < n1 and col[i][0] < other[j][0]):
            out.append(col[i])
            i += 1
        elif i >= n1 or other[j][0] < col[i][0]:
            r, c = other[j]
            out.append((r, (-factor * c) % p))
            j += 1
        else:
            r, c = col[i]
            nc = (c - factor * other[j][1]) % p
            if nc:
                out.append((r, nc))
            i += 1
            j += 1
    return out


def _reduce_gf2_bitset(n_cols, indptr, indices, skip):
    pivots = np.full(n_cols, -1, dtype=np.int64)
    owner_of_row: dict[int, int] = {}
    stored: dict[int, int] = {}
    for j in range(n_cols):
        if skip is not None and skip[j]:
            continue
        col = 0
        for k in range(indptr[j], indptr[j + 1]):
            col |= 1 << int(indices[k])
        while col:
            low = col.bit_length() - 1
            owner = owner_of_row.get(low)
            if owner is None:
                owner_of_row[low] = j
                stored[j] = col
                pivots[j] = low
                break
            col ^= stored[owner]
    return pivots


def reduce_matrix(n_rows, indptr, indices, data, p, skip=None, track=False):
    """Left-to-right column reduction of a boundary matrix over GF(p).

    Columns are given CSC-style: column j has strictly increasing row ids
    indices[indptr[j]:indptr[j+1]] with coefficients data[...] in [1, p).
    Columns flagged in `skip` are treated as zero (cleared).

    Returns (pivots, r_cols, v_cols): pivots[j] is the pivot row of the
    reduced column j or -1; when `track` is set, r_cols maps pivot columns
    to their reduced column and v_cols maps zero columns to the chain
    combination (over column indices) that reduced them to zero, both as
    (rows, coeffs) int64 array pairs.
    """
    indptr = np.asarray(indptr, dtype=np.int64)
    indices = np.asarray(indices, dtype=np.int64)
    data = np.asarray(data, dtype=np.int64)
    n_cols = len(indptr) - 1
    if p == 2 and not track:
        return _reduce_gf2_bitset(n_cols, indptr, indices, skip), None, None

    pivots = np.full(n_cols, -1, dtype=np.int64)
    owner_of_row: dict[int, int] = {}
    stored_r: dict[int, list] = {}
    stored_v: dict[int, list] = {}
    r_cols = {} if track else None
    v_cols = {} if track else None
    for j in range(n_cols):
        if skip is not None and skip[j]:
            continue
        col = [
            (int(indices[k]), int(data[k]) % p)
            for k in range(indptr[j], indptr[j + 1])
            if data[k] % p
        ]
        v = [(j, 1)] if track else None
        while col:
            low, low_coef = col[-1]
            owner = owner_of_row.get(low)
            if owner is None:
                owner_of_row[low] = j
                stored_r[j] = col
                pivots[j] = low
                if track:
                    stored_v[j] = v
                    rows = np.array([r for r, _ in col], dtype=np.int64)
                    coefs = np.array([c for _, c in col], dtype=np.int64)
                    r_cols[j] = (rows, coefs)
                break
            factor = (low_coef * pow(stored_r[owner][-1][1], -1, p)) % p
            col = _merge_subtract(col, stored_r[owner], factor, p)
            if track:
                v = _merge_subtract(v, stored_v[owner], factor, p)
        else:
            if track:
                stored_v[j] = v
                rows = np.array([r for r, _ in v], dtype=np.int64)
                coefs = np.array([c for _, c in v], dtype=np.int64)
                v_cols[j] = (rows, coefs)
    return pivots, r_cols, v_cols
