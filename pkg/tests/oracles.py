"""Independent oracles used by the tests.

These deliberately avoid the production code paths: determinants by
Laplace expansion, elementary divisors by gcds of minors, constant terms
by unpruned expansion, hulls by scipy's qhull. Small and slow is fine.
"""

from fractions import Fraction
from itertools import combinations
from math import gcd


def laplace_det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        total += (-1) ** j * m[0][j] * laplace_det(minor)
    return total


def minors_gcd(m, k):
    rows = range(len(m))
    cols = range(len(m[0]))
    g = 0
    for rs in combinations(rows, k):
        for cs in combinations(cols, k):
            sub = [[m[r][c] for c in cs] for r in rs]
            g = gcd(g, laplace_det(sub))
    return abs(g)


def elementary_divisors_by_minors(m):
    """d_k = gcd(k-minors) / gcd((k-1)-minors), the classical formula."""
    out = []
    prev = 1
    k = 1
    while k <= min(len(m), len(m[0])):
        g = minors_gcd(m, k)
        if g == 0:
            break
        out.append(g // prev)
        prev = g
        k += 1
    return out


def brute_force_periods(terms, dim, order):
    """Constant terms of powers by full unpruned convolution."""
    zero = (0,) * dim
    acc = {zero: Fraction(1)}
    out = [Fraction(1)]
    for _ in range(order):
        nxt = {}
        for e1, c1 in acc.items():
            for e2, c2 in terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                nxt[e] = nxt.get(e, Fraction(0)) + c1 * c2
        acc = {e: c for e, c in nxt.items() if c != 0}
        out.append(acc.get(zero, Fraction(0)))
    return out


def qhull_vertices(points):
    """Vertex set via scipy's qhull; only valid for full-dimensional input."""
    import numpy as np
    from scipy.spatial import ConvexHull

    arr = np.array(points, dtype=float)
    hull = ConvexHull(arr)
    return sorted(tuple(int(round(x)) for x in arr[i]) for i in hull.vertices)


def brute_gorenstein(generators, box=4):
    """Exhaustive search for an integer functional equal to 1 on every generator."""
    from itertools import product

    dim = len(generators[0])
    for m in product(range(-box, box + 1), repeat=dim):
        if all(sum(a * b for a, b in zip(m, g)) == 1 for g in generators):
            return True
    return False
