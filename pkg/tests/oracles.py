"""Independent brute-force reference computations used by the tests.

Nothing here calls into the library's formulas; each helper recomputes a
quantity from its definition.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from fractions import Fraction


def partitions_by_brute_force(n):
    """All partitions of n as sorted tuples, by filtering weakly decreasing tuples."""
    out = set()
    for length in range(n + 1):
        for parts in itertools.product(range(1, n + 1), repeat=length):
            if sum(parts) == n:
                out.add(tuple(sorted(parts, reverse=True)))
    return out


def count_standard_tableaux(lam):
    """Count fillings of lam by 1..n increasing along rows and columns."""
    n = sum(lam)
    cells = [(i, j) for i, r in enumerate(lam) for j in range(r)]
    count = 0
    for values in itertools.permutations(range(1, n + 1)):
        t = dict(zip(cells, values))
        if all(
            (j == 0 or t[(i, j - 1)] < t[(i, j)]) and (i == 0 or t[(i - 1, j)] < t[(i, j)])
            for i, j in cells
        ):
            count += 1
    return count


def _poly_mul(a, b):
    out = defaultdict(int)
    for ea, ca in a.items():
        for eb, cb in b.items():
            out[tuple(x + y for x, y in zip(ea, eb))] += ca * cb
    return {e: c for e, c in out.items() if c}


def frobenius_character(lam, rho):
    """chi^lam(rho) as the coefficient of x^(lam + delta) in a_delta * p_rho."""
    n = sum(lam)
    ell = max(len(lam), 1)
    lam = tuple(lam) + (0,) * (ell - len(lam))
    # Vandermonde a_delta
    poly = {}
    for perm in itertools.permutations(range(ell)):
        sign = 1
        for i in range(ell):
            for j in range(i + 1, ell):
                if perm[i] > perm[j]:
                    sign = -sign
        exps = tuple(ell - 1 - perm[i] for i in range(ell))
        poly[exps] = poly.get(exps, 0) + sign
    for r in rho:
        p = {tuple(r if k == i else 0 for k in range(ell)): 1 for i in range(ell)}
        poly = _poly_mul(poly, p)
    target = tuple(lam[i] + ell - 1 - i for i in range(ell))
    assert sum(target) == n + ell * (ell - 1) // 2
    return poly.get(target, 0)


def schur_by_tableaux(lam, xs):
    """s_lam(x_1..x_m) as a sum over semistandard tableaux with entries 1..m."""
    m = len(xs)
    cells = [(i, j) for i, r in enumerate(lam) for j in range(r)]
    total = Fraction(0)
    for values in itertools.product(range(m), repeat=len(cells)):
        t = dict(zip(cells, values))
        if all(
            (j == 0 or t[(i, j - 1)] <= t[(i, j)]) and (i == 0 or t[(i - 1, j)] < t[(i, j)])
            for i, j in cells
        ):
            term = Fraction(1)
            for v in values:
                term *= xs[v]
            total += term
    return total


def conjugacy_orbits(elements, multiply, inverse):
    """Partition a finite group into conjugacy classes by direct orbit computation."""
    remaining = set(elements)
    orbits = []
    while remaining:
        x = next(iter(remaining))
        orbit = {multiply(multiply(g, x), inverse(g)) for g in elements}
        orbits.append(orbit)
        remaining -= orbit
    return orbits


def matrix_mul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def kron(a, b):
    return [
        [a[i][j] * b[k][l] for j in range(len(a[0])) for l in range(len(b[0]))]
        for i in range(len(a))
        for k in range(len(b))
    ]


def trace(a):
    return sum(a[i][i] for i in range(len(a)))
