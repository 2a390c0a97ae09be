# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the loops in ``_pykernels``; same inputs, same outputs."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def cycle_type_counts(colors, perms, cayley, elem_class, Py_ssize_t ncls):
    cdef const long long[:, :] g = np.ascontiguousarray(colors, dtype=np.int64)
    cdef const long long[:, :] s = np.ascontiguousarray(perms, dtype=np.int64)
    cdef const long long[:, :] tab = np.ascontiguousarray(cayley, dtype=np.int64)
    cdef const long long[:] cls = np.ascontiguousarray(elem_class, dtype=np.int64)
    cdef Py_ssize_t N = s.shape[0]
    cdef Py_ssize_t n = s.shape[1]
    out_arr = np.zeros((N, ncls, n + 1), dtype=np.int64)
    cdef long long[:, :, :] out = out_arr
    seen_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[:] seen = seen_arr
    cdef Py_ssize_t k, i, j, length
    cdef long long prod
    for k in range(N):
        for i in range(n):
            seen[i] = 0
        for i in range(n):
            if seen[i]:
                continue
            prod = g[k, i]
            seen[i] = 1
            length = 1
            j = s[k, i]
            while j != i:
                prod = tab[g[k, j], prod]
                seen[j] = 1
                length += 1
                j = s[k, j]
            out[k, cls[prod], length] += 1
    return out_arr


def ewens_batch(uniforms, color_cdf, double weight_I, cayley, inverses):
    cdef const double[:, :, :] u = np.ascontiguousarray(uniforms, dtype=np.float64)
    cdef const double[:] cdf = np.ascontiguousarray(color_cdf, dtype=np.float64)
    cdef const long long[:, :] tab = np.ascontiguousarray(cayley, dtype=np.int64)
    cdef const long long[:] inv = np.ascontiguousarray(inverses, dtype=np.int64)
    cdef Py_ssize_t K = u.shape[0]
    cdef Py_ssize_t n = u.shape[1]
    cdef Py_ssize_t G = tab.shape[0]
    colors_arr = np.zeros((K, n), dtype=np.int64)
    perms_arr = np.zeros((K, n), dtype=np.int64)
    cdef long long[:, :] g = colors_arr
    cdef long long[:, :] s = perms_arr
    cdef Py_ssize_t k, m, q, j, h, c
    cdef long long sj
    cdef double u0, u1, u2
    for k in range(K):
        for m in range(n):
            u0 = u[k, m, 0]
            u1 = u[k, m, 1]
            u2 = u[k, m, 2]
            if u0 < weight_I / (weight_I + m):
                c = G - 1
                for q in range(G):
                    if u1 < cdf[q]:
                        c = q
                        break
                s[k, m] = m
                g[k, m] = c
            else:
                j = <Py_ssize_t>(u1 * m)
                if j >= m:
                    j = m - 1
                h = <Py_ssize_t>(u2 * G)
                if h >= G:
                    h = G - 1
                sj = s[k, j]
                s[k, j] = m
                s[k, m] = sj
                g[k, m] = h
                g[k, sj] = tab[g[k, sj], inv[h]]
    return colors_arr, perms_arr
