# distutils: language = c++
# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled persistence reduction kernel.

Contract mirrors tightrips._reduction_py.reduce_matrix exactly; the
dispatcher in tightrips.reduction prefers this module when importable.
Columns live in C++ vectors as sorted (row, coefficient) pairs and column
additions are two-pointer merges, so the inner loop never touches Python
objects.
"""

import numpy as np

from libcpp.vector cimport vector


cdef long inv_mod(long a, long p):
    cdef long t = 0, newt = 1, r = p, newr = a % p, q, tmp
    if newr < 0:
        newr += p
    while newr != 0:
        q = r / newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef void merge_subtract(vector[long]& ar, vector[long]& ac,
                         vector[long]& br, vector[long]& bc,
                         long factor, long p,
                         vector[long]& outr, vector[long]& outc):
    """out = a - factor * b over GF(p); all columns sorted by row."""
    cdef size_t i = 0, j = 0, n1 = ar.size(), n2 = br.size()
    cdef long nc
    outr.clear()
    outc.clear()
    while i < n1 or j < n2:
        if j >= n2 or (i < n1 and ar[i] < br[j]):
            outr.push_back(ar[i])
            outc.push_back(ac[i])
            i += 1
        elif i >= n1 or br[j] < ar[i]:
            nc = (-factor * bc[j]) % p
            if nc < 0:
                nc += p
            if nc:
                outr.push_back(br[j])
                outc.push_back(nc)
            j += 1
        else:
            nc = (ac[i] - factor * bc[j]) % p
            if nc < 0:
                nc += p
            if nc:
                outr.push_back(ar[i])
                outc.push_back(nc)
            i += 1
            j += 1


def reduce_matrix(long n_rows, indptr_obj, indices_obj, data_obj, long p,
                  skip=None, track=False):
    """See tightrips._reduction_py.reduce_matrix for the full contract."""
    cdef long[::1] indptr = np.ascontiguousarray(indptr_obj, dtype=np.int64)
    cdef long[::1] indices = np.ascontiguousarray(indices_obj, dtype=np.int64)
    cdef long[::1] data = np.ascontiguousarray(data_obj, dtype=np.int64)
    cdef long n_cols = indptr.shape[0] - 1
    cdef unsigned char[::1] skip_view
    cdef bint have_skip = skip is not None
    if have_skip:
        skip_view = np.ascontiguousarray(skip, dtype=np.uint8)

    pivots_arr = np.full(n_cols, -1, dtype=np.int64)
    cdef long[::1] pivots = pivots_arr
    cdef bint do_track = bool(track)

    cdef vector[vector[long]] st_rows, st_coefs, sv_rows, sv_coefs
    st_rows.resize(n_cols)
    st_coefs.resize(n_cols)
    if do_track:
        sv_rows.resize(n_cols)
        sv_coefs.resize(n_cols)
    cdef vector[long] owner
    owner.assign(n_rows, -1)

    cdef vector[long] cur_r, cur_c, tmp_r, tmp_c, v_r, v_c, vt_r, vt_c
    cdef long j, k, low, own, factor, coef
    cdef bint is_zero
    zero_cols = [] if do_track else None

    for j in range(n_cols):
        if have_skip and skip_view[j]:
            continue
        cur_r.clear()
        cur_c.clear()
        for k in range(indptr[j], indptr[j + 1]):
            coef = data[k] % p
            if coef < 0:
                coef += p
            if coef:
                cur_r.push_back(indices[k])
                cur_c.push_back(coef)
        if do_track:
            v_r.clear()
            v_c.clear()
            v_r.push_back(j)
            v_c.push_back(1)
        is_zero = True
        while cur_r.size() > 0:
            low = cur_r.back()
            own = owner[low]
            if own < 0:
                owner[low] = j
                st_rows[j] = cur_r
                st_coefs[j] = cur_c
                pivots[j] = low
                if do_track:
                    sv_rows[j] = v_r
                    sv_coefs[j] = v_c
                is_zero = False
                break
            factor = (cur_c.back() * inv_mod(st_coefs[own].back(), p)) % p
            merge_subtract(cur_r, cur_c, st_rows[own], st_coefs[own],
                           factor, p, tmp_r, tmp_c)
            cur_r.swap(tmp_r)
            cur_c.swap(tmp_c)
            if do_track:
                merge_subtract(v_r, v_c, sv_rows[own], sv_coefs[own],
                               factor, p, vt_r, vt_c)
                v_r.swap(vt_r)
                v_c.swap(vt_c)
        if is_zero and do_track:
            sv_rows[j] = v_r
            sv_coefs[j] = v_c
            zero_cols.append(j)

    if not do_track:
        return pivots_arr, None, None

    r_cols = {}
    v_cols = {}
    cdef size_t m, t
    for j in range(n_cols):
        if pivots[j] >= 0:
            m = st_rows[j].size()
            rows = np.empty(m, dtype=np.int64)
            coefs = np.empty(m, dtype=np.int64)
            for t in range(m):
                rows[t] = st_rows[j][t]
                coefs[t] = st_coefs[j][t]
            r_cols[j] = (rows, coefs)
    for j in zero_cols:
        m = sv_rows[j].size()
        rows = np.empty(m, dtype=np.int64)
        coefs = np.empty(m, dtype=np.int64)
        for t in range(m):
            rows[t] = sv_rows[j][t]
            coefs[t] = sv_coefs[j][t]
        v_cols[j] = (rows, coefs)
    return pivots_arr, r_cols, v_cols
