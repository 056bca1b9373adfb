"""Exact rational linear algebra shared by the other modules.

Matrices are ``sympy.Matrix`` values with ``Rational`` entries (or polynomial entries when
a representation is evaluated on symbolic coordinates).  Rank, echelon forms and nullspaces
go through ``DomainMatrix`` over ``QQ``; the sparse systems built by ``hom_space`` and the
oracle are handed over as dict-of-dicts and never densified.
"""
import fractions
import logging
import re

import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from .errors import MalformedInputError, NonSquareError, SkewSymmetryError

logger = logging.getLogger(__name__)

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def to_rational(value):
    if isinstance(value, bool):
        raise MalformedInputError(f"not a rational number: {value!r}")
    if isinstance(value, sympy.Rational):
        return value
    if isinstance(value, int):
        return sympy.Integer(value)
    if isinstance(value, fractions.Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    if isinstance(value, str):
        match = _RATIONAL_RE.match(value)
        if match is None:
            raise MalformedInputError(f"not a rational number: {value!r}")
        den = int(match.group(2)) if match.group(2) else 1
        if den == 0:
            raise MalformedInputError(f"zero denominator in {value!r}")
        return sympy.Rational(int(match.group(1)), den)
    if isinstance(value, sympy.Basic) and value.is_Rational:
        return sympy.Rational(value)
    raise MalformedInputError(f"not a rational number: {value!r}")


def format_rational(value, always_fraction=False):
    value = sympy.Rational(value)
    if value.q == 1 and not always_fraction:
        return str(value.p)
    return f"{value.p}/{value.q}"


def is_symbolic(matrix):
    return bool(getattr(matrix, "free_symbols", None))


def zeros(rows, cols):
    return sympy.zeros(rows, cols)


def identity(n):
    return sympy.eye(n)


def to_domain(matrix):
    rows, cols = matrix.shape
    elements = {}
    for i in range(rows):
        row = {}
        for j in range(cols):
            entry = matrix[i, j]
            if entry != 0:
                row[j] = QQ.from_sympy(sympy.Rational(entry))
        if row:
            elements[i] = row
    return DomainMatrix(elements, (rows, cols), QQ)


def sparse_matrix(elements, shape):
    clean = {}
    for i, row in elements.items():
        kept = {j: QQ.from_sympy(sympy.Rational(v)) for j, v in row.items() if v != 0}
        if kept:
            clean[i] = kept
    return DomainMatrix(clean, shape, QQ)


def sparse_rank(elements, shape):
    rows, cols = shape
    if rows == 0 or cols == 0 or not elements:
        return 0
    return sparse_matrix(elements, shape).rank()


def _rref(dm):
    reduced, pivots = dm.rref()
    return reduced.to_Matrix(), tuple(pivots)


def sparse_nullspace(elements, shape):
    rows, cols = shape
    if cols == 0:
        return []
    if rows == 0 or not elements:
        return [[sympy.Integer(1) if k == j else sympy.Integer(0) for k in range(cols)]
                for j in range(cols)]
    reduced, pivots = _rref(sparse_matrix(elements, shape))
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        vector = [sympy.Integer(0)] * cols
        vector[free] = sympy.Integer(1)
        for r, p in enumerate(pivots):
            vector[p] = -reduced[r, free]
        basis.append(vector)
    return basis


def solve(matrix, rhs):
    """A solution of ``matrix * x = rhs`` with free variables set to zero, or ``None``."""
    rows, cols = matrix.shape
    reduced, pivots = _rref(to_domain(matrix.row_join(rhs)))
    if cols in pivots:
        return None
    solution = [sympy.Integer(0)] * cols
    for r, p in enumerate(pivots):
        solution[p] = reduced[r, cols]
    return solution, tuple(p for p in range(cols) if p not in pivots)


def rank(matrix):
    rows, cols = matrix.shape
    if rows == 0 or cols == 0:
        return 0
    if is_symbolic(matrix):
        return matrix.rank()
    return to_domain(matrix).rank()


def nullspace(matrix):
    rows, cols = matrix.shape
    elements = {}
    for i in range(rows):
        row = {j: matrix[i, j] for j in range(cols) if matrix[i, j] != 0}
        if row:
            elements[i] = row
    return [sympy.Matrix(cols, 1, v) for v in sparse_nullspace(elements, (rows, cols))]


def left_nullspace(matrix):
    return [v.T for v in nullspace(matrix.T)]


def det(matrix):
    rows, cols = matrix.shape
    if rows != cols:
        raise NonSquareError(f"determinant of a {rows}x{cols} matrix")
    if rows == 0:
        return sympy.Integer(1)
    if is_symbolic(matrix):
        return sympy.expand(matrix.det(method="berkowitz"))
    return QQ.to_sympy(to_domain(matrix).det())


def inverse(matrix):
    if is_symbolic(matrix):
        return matrix.inv()
    n = matrix.rows
    if n == 0:
        return sympy.zeros(0, 0)
    return to_domain(matrix).inv().to_Matrix()


def is_invertible(matrix):
    rows, cols = matrix.shape
    return rows == cols and (rows == 0 or det(matrix) != 0)


def is_zero(matrix):
    if is_symbolic(matrix):
        return all(sympy.expand(e) == 0 for e in matrix)
    return all(e == 0 for e in matrix)


def is_skew(matrix):
    return matrix.rows == matrix.cols and is_zero(matrix + matrix.T)


def is_symmetric(matrix):
    return matrix.rows == matrix.cols and is_zero(matrix - matrix.T)


def block_diag(blocks):
    blocks = [b for b in blocks]
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = sympy.zeros(rows, cols)
    r = c = 0
    for b in blocks:
        if b.rows and b.cols:
            out[r:r + b.rows, c:c + b.cols] = b
        r += b.rows
        c += b.cols
    return out


def standard_symplectic(n):
    assert n % 2 == 0, f"symplectic form needs even size, got {n}"
    half = n // 2
    out = sympy.zeros(n, n)
    for i in range(half):
        out[i, half + i] = 1
        out[half + i, i] = -1
    return out


def pfaffian(matrix):
    """Exact Pfaffian of a skew-symmetric matrix of even size."""
    rows, cols = matrix.shape
    if rows != cols:
        raise NonSquareError(f"Pfaffian of a {rows}x{cols} matrix")
    if rows % 2:
        raise SkewSymmetryError(f"Pfaffian of odd size {rows}")
    if not is_skew(matrix):
        raise SkewSymmetryError("matrix is not skew-symmetric")
    if rows == 0:
        return sympy.Integer(1)
    if is_symbolic(matrix):
        return sympy.expand(_pfaffian_expansion(matrix))
    return QQ.to_sympy(_pfaffian_elimination(matrix))


def _pfaffian_expansion(matrix):
    n = matrix.rows
    if n == 0:
        return sympy.Integer(1)
    total = sympy.Integer(0)
    for j in range(1, n):
        entry = matrix[0, j]
        if entry == 0:
            continue
        keep = [k for k in range(n) if k not in (0, j)]
        minor = matrix.extract(keep, keep)
        sign = 1 if j % 2 == 1 else -1
        total += sign * entry * _pfaffian_expansion(minor)
    return total


def _pfaffian_elimination(matrix):
    n = matrix.rows
    m = [[QQ.from_sympy(sympy.Rational(matrix[i, j])) for j in range(n)] for i in range(n)]
    result = QQ(1)
    for k in range(0, n, 2):
        pivot = next((j for j in range(k + 1, n) if m[k][j] != 0), None)
        if pivot is None:
            return QQ(0)
        if pivot != k + 1:
            # simultaneous row/column swap flips the sign
            m[k + 1], m[pivot] = m[pivot], m[k + 1]
            for row in m:
                row[k + 1], row[pivot] = row[pivot], row[k + 1]
            result = -result
        piv = m[k][k + 1]
        result *= piv
        for i in range(k + 2, n):
            f = m[k][i] / piv
            if f:
                _congruence_step(m, i, k + 1, f)
            g = m[k + 1][i] / m[k + 1][k]
            if g:
                _congruence_step(m, i, k, g)
    return result


def _congruence_step(m, target, source, factor):
    n = len(m)
    for r in range(n):
        m[r][target] -= factor * m[r][source]
    for c in range(n):
        m[target][c] -= factor * m[source][c]


def interpolation_coefficients(points, values):
    """Coefficients ``c_0..c_n`` of the polynomial through ``(points[k], values[k])``.

    ``values`` may be symbolic; the Vandermonde matrix itself is always rational.
    """
    n = len(points)
    vandermonde = sympy.Matrix(n, n, lambda i, j: sympy.Rational(points[i]) ** j)
    coeffs = inverse(vandermonde) * sympy.Matrix(n, 1, list(values))
    return [sympy.expand(c) for c in coeffs]
