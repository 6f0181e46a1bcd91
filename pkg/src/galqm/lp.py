"""Exact feasibility of {x : A x = b, x >= 0} by phase-one simplex over Fractions.

Bland's rule guarantees termination.  A feasible answer comes with the
basic solution x; an infeasible one with a Farkas vector y satisfying
y^T A <= 0 componentwise and y^T b > 0, which no nonnegative x can survive.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass
class FeasibilityResult:
    feasible: bool
    x: list | None = None
    farkas: list | None = None
    pivots: int = 0


def check_solution(A, b, x) -> bool:
    if any(v < 0 for v in x):
        return False
    return all(sum((a * v for a, v in zip(row, x)), Fraction(0)) == bi for row, bi in zip(A, b))


def check_farkas(A, b, y) -> bool:
    ncols = len(A[0]) if A else 0
    for j in range(ncols):
        if sum((A[i][j] * y[i] for i in range(len(A))), Fraction(0)) > 0:
            return False
    return sum((yi * bi for yi, bi in zip(y, b)), Fraction(0)) > 0


def feasible_point(A, b) -> FeasibilityResult:
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return FeasibilityResult(True, [Fraction(0)] * n)
    sign = [1 if bi >= 0 else -1 for bi in b]
    # tableau columns: n structural, m artificial, rhs
    T = []
    for i in range(m):
        row = [sign[i] * v for v in A[i]] + [Fraction(0)] * m + [sign[i] * b[i]]
        row[n + i] = Fraction(1)
        T.append(row)
    basis = [n + i for i in range(m)]
    width = n + m + 1
    d = [Fraction(0)] * width
    for j in list(range(n)) + [width - 1]:
        d[j] = -sum((T[i][j] for i in range(m)), Fraction(0))

    pivots = 0
    while True:
        enter = next((j for j in range(n + m) if d[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        # phase one is bounded below by zero
        assert leave is not None
        piv = T[leave][enter]
        prow = [v / piv for v in T[leave]]
        T[leave] = prow
        for i in range(m):
            f = T[i][enter]
            if i != leave and f:
                T[i] = [u - f * v for u, v in zip(T[i], prow)]
        f = d[enter]
        d = [u - f * v for u, v in zip(d, prow)]
        basis[leave] = enter
        pivots += 1

    if -d[-1] > 0:
        y = [sign[i] * (1 - d[n + i]) for i in range(m)]
        return FeasibilityResult(False, farkas=y, pivots=pivots)
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = T[i][-1]
    return FeasibilityResult(True, x=x, pivots=pivots)
