"""Pure-Python versions of the integer hot loops.

These are the reference implementations; the compiled module ``_ckernels``
mirrors them statement by statement and must return identical arrays.
"""

import numpy as np


def cycle_type_counts(colors, perms, cayley, elem_class, ncls):
    """Per element, count cycles by (class of cycle product, cycle length).

    ``colors`` and ``perms`` are ``(N, n)`` integer arrays (0-based one-line
    permutations). Returns an ``(N, ncls, n + 1)`` array ``m`` with
    ``m[k, c, r]`` the number of length-``r`` cycles of colour ``c``.
    """
    colors = np.asarray(colors, dtype=np.int64)
    perms = np.asarray(perms, dtype=np.int64)
    cayley = np.asarray(cayley, dtype=np.int64)
    elem_class = np.asarray(elem_class, dtype=np.int64)
    N, n = perms.shape
    out = np.zeros((N, ncls, n + 1), dtype=np.int64)
    seen = [False] * n
    for k in range(N):
        s = perms[k].tolist()
        g = colors[k].tolist()
        for i in range(n):
            seen[i] = False
        for i in range(n):
            if seen[i]:
                continue
            prod = g[i]
            seen[i] = True
            length = 1
            j = s[i]
            while j != i:
                prod = cayley[g[j], prod]
                seen[j] = True
                length += 1
                j = s[j]
            out[k, elem_class[prod], length] += 1
    return out


def ewens_batch(uniforms, color_cdf, weight_I, cayley, inverses):
    """Run the sequential Ewens sampler from degree 0 for each row of ``uniforms``.

    ``uniforms`` has shape ``(K, n, 3)``; step ``m`` (degree m -> m+1) reads
    ``u0, u1, u2 = uniforms[k, m]``. ``u0 < I/(I+m)`` appends a fixed point
    coloured by the first ``g`` with ``u1 < color_cdf[g]``. Otherwise
    ``j = floor(u1 m)`` and ``h = floor(u2 |G|)`` and ``m`` is inserted
    after ``j`` with colour ``h``, while ``g_{s(j)}`` becomes ``g_{s(j)} h^{-1}``.
    """
    uniforms = np.asarray(uniforms, dtype=np.float64)
    color_cdf = np.asarray(color_cdf, dtype=np.float64)
    cayley = np.asarray(cayley, dtype=np.int64)
    inverses = np.asarray(inverses, dtype=np.int64)
    K, n, _ = uniforms.shape
    G = cayley.shape[0]
    colors = np.zeros((K, n), dtype=np.int64)
    perms = np.zeros((K, n), dtype=np.int64)
    cdf = color_cdf.tolist()
    for k in range(K):
        g = [0] * n
        s = [0] * n
        for m in range(n):
            u0, u1, u2 = uniforms[k, m].tolist()
            if u0 < weight_I / (weight_I + m):
                c = G - 1
                for q in range(G):
                    if u1 < cdf[q]:
                        c = q
                        break
                s[m] = m
                g[m] = c
            else:
                j = int(u1 * m)
                if j >= m:
                    j = m - 1
                h = int(u2 * G)
                if h >= G:
                    h = G - 1
                sj = s[j]
                s[j] = m
                s[m] = sj
                g[m] = h
                g[sj] = cayley[g[sj], inverses[h]]
        colors[k] = g
        perms[k] = s
    return colors, perms
