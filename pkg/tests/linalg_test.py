import fractions

import numpy as np
import pytest
import sympy

from symquiv.errors import MalformedInputError, NonSquareError, SkewSymmetryError
from symquiv.linalg import (
    det,
    format_rational,
    interpolation_coefficients,
    pfaffian,
    rank,
    solve,
    standard_symplectic,
    to_rational,
)


@pytest.mark.parametrize("value,expected", [
    (3, sympy.Integer(3)),
    ("-1/2", sympy.Rational(-1, 2)),
    (" 4 / 6 ", sympy.Rational(2, 3)),
    (fractions.Fraction(5, 10), sympy.Rational(1, 2)),
])
def test_to_rational(value, expected):
    assert to_rational(value) == expected


@pytest.mark.parametrize("value", ["1/0", "x", True, 0.5])
def test_to_rational_rejects(value):
    with pytest.raises(MalformedInputError):
        to_rational(value)


def test_format_rational():
    assert format_rational(sympy.Rational(-3, 2)) == "-3/2"
    assert format_rational(4) == "4"
    assert format_rational(4, always_fraction=True) == "4/1"


def test_pfaffian_small_cases():
    a, b, c, d, e, f = sympy.symbols("a b c d e f")
    assert pfaffian(sympy.Matrix([[0, a], [-a, 0]])) == a
    m = sympy.Matrix([
        [0, a, b, c],
        [-a, 0, d, e],
        [-b, -d, 0, f],
        [-c, -e, -f, 0],
    ])
    assert sympy.expand(pfaffian(m) - (a * f - b * e + c * d)) == 0
    assert pfaffian(standard_symplectic(4)) == 1
    assert pfaffian(sympy.zeros(0, 0)) == 1


def test_pfaffian_squares_to_determinant():
    rng = np.random.default_rng(17)
    for _ in range(5):
        upper = sympy.Matrix(8, 8, [int(v) for v in rng.integers(-5, 6, size=64)])
        skew = upper - upper.T
        assert pfaffian(skew) ** 2 == det(skew)


def test_pfaffian_needs_a_pivot_swap():
    m = sympy.Matrix([
        [0, 0, 1, 0],
        [0, 0, 0, 1],
        [-1, 0, 0, 0],
        [0, -1, 0, 0],
    ])
    assert pfaffian(m) == -1


def test_pfaffian_rejects():
    with pytest.raises(SkewSymmetryError):
        pfaffian(sympy.zeros(3, 3))
    with pytest.raises(SkewSymmetryError):
        pfaffian(sympy.Matrix([[0, 1], [1, 0]]))
    with pytest.raises(NonSquareError):
        pfaffian(sympy.zeros(2, 4))
    with pytest.raises(NonSquareError):
        det(sympy.zeros(2, 3))


def test_solve_and_rank():
    m = sympy.Matrix([[1, 2], [2, 4]])
    assert rank(m) == 1
    solution, free = solve(m, sympy.Matrix([3, 6]))
    assert m * sympy.Matrix(solution) == sympy.Matrix([3, 6])
    assert free == (1,)
    assert solve(m, sympy.Matrix([1, 0])) is None


def test_interpolation_coefficients():
    t = sympy.Symbol("t")
    values = [(2 + 3 * p - p ** 2) * t for p in range(3)]
    assert interpolation_coefficients([0, 1, 2], values) == [2 * t, 3 * t, -t]
