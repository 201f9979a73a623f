"""Exact magnitude of a graph, as a rational function and a power series.

The similarity matrix has (x, y) entry q^d(x,y).  Its inverse's entry sum
is computed two independent ways: as a ratio of two fraction-free
determinants (exact rational function), and by truncated Neumann
inversion of I + N with N the strictly positive-distance part (exact
power series).  Agreement of the two is a standing cross-check, and the
series ties into magnitude homology through the alternating rank sum.
"""

from __future__ import annotations

from .errors import InternalCheckError, ValidationError
from .graph import Graph
from .homology import mh_rank
from .polyq import IntPoly, RatFunc


def zeta_matrix(g: Graph) -> list[list[IntPoly]]:
    """Matrix with (x, y) entry the monomial q^d(x,y)."""
    return [
        [IntPoly.monomial(1, g.dist[x][y]) for y in g.vertices] for x in g.vertices
    ]


def _det_bareiss(m: list[list[IntPoly]]) -> IntPoly:
    """Fraction-free determinant; every division is exact in Z[q]."""
    n = len(m)
    if n == 0:
        return IntPoly.one()
    m = [row[:] for row in m]
    sign = 1
    prev = IntPoly.one()
    for r in range(n - 1):
        if not m[r][r]:
            for rr in range(r + 1, n):
                if m[rr][r]:
                    m[r], m[rr] = m[rr], m[r]
                    sign = -sign
                    break
            else:
                return IntPoly.zero()
        piv = m[r][r]
        for i in range(r + 1, n):
            for j in range(r + 1, n):
                m[i][j] = (piv * m[i][j] - m[i][r] * m[r][j]).exact_div(prev)
            m[i][r] = IntPoly.zero()
        prev = piv
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def magnitude_rational(g: Graph) -> RatFunc:
    """Sum of the inverse similarity matrix's entries, in lowest terms.

    Uses the bordered-determinant identity: appending an all-ones row and
    column (with 0 corner) gives det B = -det(Z) * sum(Z^{-1}), so the
    magnitude is -det(B)/det(Z).
    """
    z = zeta_matrix(g)
    n = g.n
    one = IntPoly.one()
    bordered = [row[:] + [one] for row in z]
    bordered.append([one] * n + [IntPoly.zero()])
    det_z = _det_bareiss(z)
    if not det_z:
        raise InternalCheckError("similarity matrix determinant reduced to zero")
    det_b = _det_bareiss(bordered)
    return RatFunc(-det_b, det_z)


def _matmul_trunc(
    a: list[list[IntPoly]], b: list[list[IntPoly]], order: int
) -> list[list[IntPoly]]:
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = IntPoly.zero()
            for t in range(n):
                if a[i][t] and b[t][j]:
                    acc = acc + a[i][t] * b[t][j]
            row.append(acc.truncate(order))
        out.append(row)
    return out


def magnitude_series(g: Graph, order: int) -> list[int]:
    """Magnitude coefficients through q^order by Neumann inversion.

    Z = I + N with every entry of N of positive degree, so the inverse is
    sum_j (-N)^j and the truncation stabilizes after ``order`` terms.
    """
    if order < 0:
        raise ValidationError("series order must be >= 0")
    n = g.n
    neg_n = [
        [
            IntPoly.zero() if x == y else -IntPoly.monomial(1, g.dist[x][y])
            for y in g.vertices
        ]
        for x in g.vertices
    ]
    neg_n = [[p.truncate(order) for p in row] for row in neg_n]
    total = IntPoly([n])  # the identity contributes n to the entry sum
    power = [
        [IntPoly.one() if i == j else IntPoly.zero() for j in range(n)]
        for i in range(n)
    ]
    for _ in range(order):
        power = _matmul_trunc(power, neg_n, order)
        if all(not p for row in power for p in row):
            break
        for row in power:
            for p in row:
                total = total + p
    return [total.coefficient(k) for k in range(order + 1)]


def euler_check(g: Graph, lmax: int) -> bool:
    """Does sum_k (-1)^k rank MH_k^l match the series coefficient of q^l?

    Checked for every l <= lmax; torsion does not enter the rank count.
    """
    series = magnitude_series(g, lmax)
    for length in range(lmax + 1):
        alt = 0
        for k in range(length + 1):
            rank, _ = mh_rank(g, k, length)
            alt += rank if k % 2 == 0 else -rank
        if alt != series[length]:
            return False
    return True
