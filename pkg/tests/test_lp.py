from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from galqm.lp import check_farkas, check_solution, feasible_point


def F(rows):
    return [[Fraction(x) for x in r] for r in rows]


def test_simple_feasible():
    A = F([[1, 1, 0], [0, 1, 1]])
    b = [Fraction(1), Fraction(1, 2)]
    res = feasible_point(A, b)
    assert res.feasible
    assert check_solution(A, b, res.x)


def test_simple_infeasible():
    # x + y = 1 and x + y = 2
    A = F([[1, 1], [1, 1]])
    b = [Fraction(1), Fraction(2)]
    res = feasible_point(A, b)
    assert not res.feasible
    assert check_farkas(A, b, res.farkas)


def test_negative_rhs_needs_negative_x():
    A = F([[1, 0], [0, 1]])
    b = [Fraction(-1), Fraction(1)]
    res = feasible_point(A, b)
    assert not res.feasible
    assert check_farkas(A, b, res.farkas)


def test_negative_rhs_feasible_after_row_flip():
    A = F([[-1, 0], [0, 1]])
    b = [Fraction(-3), Fraction(0)]
    res = feasible_point(A, b)
    assert res.feasible and res.x == [3, 0]


def test_redundant_rows():
    A = F([[1, 1, 1], [2, 2, 2], [1, 0, 0]])
    b = [Fraction(1), Fraction(2), Fraction(1, 3)]
    res = feasible_point(A, b)
    assert res.feasible and check_solution(A, b, res.x)


def test_degenerate_cycling_example_terminates():
    # Beale-style degenerate data; Bland's rule must not cycle
    A = F([[Fraction(1, 4), -8, -1, 9, 1, 0], [Fraction(1, 2), -12, Fraction(-1, 2), 3, 0, 1],
           [0, 0, 1, 0, 0, 0]])
    b = [Fraction(0), Fraction(0), Fraction(1)]
    res = feasible_point(A, b)
    assert res.feasible and check_solution(A, b, res.x)


small = st.integers(-3, 3)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_agrees_with_float_lp(m, n, data):
    A = [[data.draw(small) for _ in range(n)] for _ in range(m)]
    b = [data.draw(small) for _ in range(m)]
    res = feasible_point(A, b)
    ref = linprog(np.zeros(n), A_eq=np.array(A, float), b_eq=np.array(b, float),
                  bounds=[(0, None)] * n, method="highs")
    assert res.feasible == (ref.status == 0)
    Af = F(A)
    bf = [Fraction(x) for x in b]
    if res.feasible:
        assert check_solution(Af, bf, res.x)
    else:
        assert check_farkas(Af, bf, res.farkas)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5), st.integers(1, 6), st.data())
def test_constructed_feasible_systems(m, n, data):
    A = [[data.draw(small) for _ in range(n)] for _ in range(m)]
    x0 = [Fraction(data.draw(st.integers(0, 4)), data.draw(st.integers(1, 3))) for _ in range(n)]
    b = [sum((a * x for a, x in zip(row, x0)), Fraction(0)) for row in A]
    res = feasible_point(A, b)
    assert res.feasible and check_solution(F(A), b, res.x)
