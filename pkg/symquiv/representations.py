"""Representations over exact rationals, Hom/Ext, duality, BGP reflections and form structures."""
import collections
import dataclasses
import functools
import logging
from typing import List, NamedTuple, Tuple

import numpy as np
import sympy

from .config import Direction, Flavor, SymQuivConfig, TameKind
from .errors import (
    DomainMismatchError,
    InadmissibleVertexError,
    InternalInconsistencyError,
    InvalidParametersError,
    NotSinkOrSourceError,
    ParityError,
    UnsupportedTypeError,
)
from .linalg import (
    block_diag,
    identity,
    inverse,
    is_invertible,
    is_zero,
    left_nullspace,
    nullspace,
    sparse_nullspace,
    standard_symplectic,
    zeros,
)
from .quiver_core import DimensionVector, _quiver, check_domain, classify, euler_form, null_root
from .reflections import anchor_vertex, is_admissible_sink, is_admissible_source, tube_data

logger = logging.getLogger(__name__)


class Representation:
    def __init__(self, quiver, dim, mats=None):
        self.quiver = _quiver(quiver)
        check_domain(self.quiver, dim)
        if not dim.is_nonnegative():
            raise InvalidParametersError(f"negative dimension vector {dim!r}")
        self.dim = dim
        mats = dict(mats or {})
        unknown = set(mats) - {a.id for a in self.quiver.arrows}
        if unknown:
            raise DomainMismatchError(f"matrices for unknown arrows {sorted(unknown)}")
        self.mats = {}
        for a in self.quiver.arrows:
            shape = (dim[a.head], dim[a.tail])
            matrix = mats.get(a.id)
            if matrix is None:
                matrix = zeros(*shape)
            matrix = sympy.Matrix(matrix) if not isinstance(matrix, sympy.MatrixBase) else matrix
            if matrix.shape != shape:
                # sympy collapses empty matrices to 0x0
                if 0 in shape and matrix.rows * matrix.cols == 0:
                    matrix = zeros(*shape)
                else:
                    raise DomainMismatchError(
                        f"arrow {a.id!r} needs a {shape[0]}x{shape[1]} matrix, got {matrix.shape}"
                    )
            self.mats[a.id] = matrix

    @classmethod
    def zero(cls, quiver, dim):
        return cls(quiver, dim)

    def map(self, arrow_id):
        try:
            return self.mats[arrow_id]
        except KeyError:
            raise DomainMismatchError(f"unknown arrow {arrow_id!r}") from None

    def total_dim(self):
        return self.dim.total()

    def is_zero(self):
        return self.dim.is_zero()

    def with_quiver(self, quiver, mats=None):
        return Representation(quiver, self.dim, mats if mats is not None else self.mats)

    def evaluate_path(self, path, start):
        result = identity(self.dim[start])
        for arrow_id in path:
            result = self.mats[arrow_id] * result
        return result

    def __eq__(self, other):
        return (
            isinstance(other, Representation)
            and self.quiver == other.quiver
            and self.dim == other.dim
            and all(is_zero(self.mats[k] - other.mats[k]) for k in self.mats)
        )

    def __repr__(self):
        return f"Representation(dim={self.dim!r}, arrows={sorted(self.mats)})"


class HomSpace(NamedTuple):
    dim: int
    basis: List[dict]


def hom_space(V, W):
    """Solve ``f(ha) V(a) = W(a) f(ta)`` for all arrows; basis elements map vertex -> matrix."""
    q = V.quiver
    if W.quiver.vertices != q.vertices or set(W.quiver.arrows) != set(q.arrows):
        raise DomainMismatchError("representations live on different quivers")
    offsets = {}
    size = 0
    for x in q.vertices:
        offsets[x] = size
        size += W.dim[x] * V.dim[x]

    def var(x, r, c):
        return offsets[x] + r * V.dim[x] + c

    rows = {}
    row = 0
    for a in q.arrows:
        ta, ha = a.tail, a.head
        va, wa = V.mats[a.id], W.mats[a.id]
        for r in range(W.dim[ha]):
            for c in range(V.dim[ta]):
                entries = collections.defaultdict(int)
                for k in range(W.dim[ta]):
                    if wa[r, k] != 0:
                        entries[var(ta, k, c)] += wa[r, k]
                for k in range(V.dim[ha]):
                    if va[k, c] != 0:
                        entries[var(ha, r, k)] -= va[k, c]
                if entries:
                    rows[row] = dict(entries)
                row += 1
    basis = []
    for vector in sparse_nullspace(rows, (row, size)):
        morphism = {}
        for x in q.vertices:
            m, n = W.dim[x], V.dim[x]
            start = offsets[x]
            morphism[x] = sympy.Matrix(m, n, vector[start:start + m * n]) if m and n else zeros(m, n)
        basis.append(morphism)
    return HomSpace(len(basis), basis)


def ext_dim(V, W):
    value = hom_space(V, W).dim - euler_form(V.quiver, V.dim, W.dim)
    if value < 0:
        raise InternalInconsistencyError(f"negative Ext dimension {value}")
    return int(value)


def nabla(qs, V):
    """The duality ``∇V(x) = V(σx)*`` with ``∇V(a) = -V(σa)ᵀ``."""
    dim = qs.delta(V.dim)
    mats = {a.id: -V.mats[qs.sigma_arrow(a.id)].T for a in qs.arrows}
    return Representation(qs.quiver, dim, mats)


def bgp_reflect(q, V, x, direction=Direction.PLUS):
    """Reflection functor ``C⁺_x`` at a sink or ``C⁻_x`` at a source; lives on ``q`` reflected at x."""
    q = _quiver(q)
    if direction is Direction.PLUS:
        if not q.is_sink(x):
            raise NotSinkOrSourceError(f"C⁺ needs a sink, {x!r} is not one")
        arrows = q.incoming(x)
        blocks = [V.mats[a.id] for a in arrows]
        joined = sympy.Matrix.hstack(*blocks) if blocks else zeros(V.dim[x], 0)
        kernel = nullspace(joined)
        new_dim = len(kernel)
        basis = sympy.Matrix.hstack(*kernel) if kernel else zeros(joined.cols, 0)
        mats = dict(V.mats)
        offset = 0
        for a in arrows:
            width = V.dim[a.tail]
            mats[a.id] = basis[offset:offset + width, :] if width else zeros(0, new_dim)
            offset += width
    else:
        if not q.is_source(x):
            raise NotSinkOrSourceError(f"C⁻ needs a source, {x!r} is not one")
        arrows = q.outgoing(x)
        blocks = [V.mats[a.id] for a in arrows]
        stacked = sympy.Matrix.vstack(*blocks) if blocks else zeros(0, V.dim[x])
        cokernel = left_nullspace(stacked)
        new_dim = len(cokernel)
        basis = sympy.Matrix.vstack(*cokernel) if cokernel else zeros(0, stacked.rows)
        mats = dict(V.mats)
        offset = 0
        for a in arrows:
            height = V.dim[a.head]
            mats[a.id] = basis[:, offset:offset + height] if height else zeros(new_dim, 0)
            offset += height
    entries = V.dim.to_dict()
    entries[x] = new_dim
    return Representation(q.reflected_at(x), DimensionVector(entries), mats)


def reflect_pair_rep(qs, V, x):
    """``C⁺_{(x,σx)} = C⁻_{σx} C⁺_x`` at an admissible sink, ``C⁻_{(x,σx)}`` at an admissible source."""
    y = qs.sigma(x)
    if is_admissible_sink(qs, x):
        once = bgp_reflect(qs.quiver, V, x, Direction.PLUS)
        return bgp_reflect(once.quiver, once, y, Direction.MINUS)
    if is_admissible_source(qs, x):
        once = bgp_reflect(qs.quiver, V, y, Direction.PLUS)
        return bgp_reflect(once.quiver, once, x, Direction.MINUS)
    raise InadmissibleVertexError(f"{x!r} is not an admissible sink or source")


def is_isomorphic(V, W, seed=SymQuivConfig.DEFAULT_SEED, attempts=3):
    if V.dim != W.dim:
        return False
    hom = hom_space(V, W)
    if hom.dim == 0:
        return V.is_zero()
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        coeffs = [int(c) for c in rng.integers(-7, 8, size=hom.dim)]
        if all(c == 0 for c in coeffs):
            continue
        ok = True
        for x in V.quiver.vertices:
            f = zeros(W.dim[x], V.dim[x])
            for c, morphism in zip(coeffs, hom.basis):
                f += c * morphism[x]
            if not is_invertible(f):
                ok = False
                break
        if ok:
            return True
    return False


def direct_sum(V, W):
    if V.quiver != W.quiver:
        raise DomainMismatchError("representations live on different quivers")
    mats = {a: block_diag([V.mats[a], W.mats[a]]) for a in V.mats}
    return Representation(V.quiver, V.dim + W.dim, mats)


def random_representation(q, dim, rng, entry_range=SymQuivConfig.SAMPLE_ENTRY_RANGE):
    q = _quiver(q)
    low, high = entry_range
    mats = {}
    for a in q.arrows:
        rows, cols = dim[a.head], dim[a.tail]
        values = rng.integers(low, high + 1, size=rows * cols)
        mats[a.id] = sympy.Matrix(rows, cols, [int(v) for v in values]) if rows and cols else zeros(rows, cols)
    return Representation(q, dim, mats)


def simple_representation(q, x):
    q = _quiver(q)
    return Representation(q, DimensionVector.unit(q.vertices, x))


def thin_representation(q, dim, zero_arrows=()):
    q = _quiver(q)
    mats = {}
    for a in q.arrows:
        if dim[a.tail] and dim[a.head]:
            if dim[a.tail] != 1 or dim[a.head] != 1:
                raise InvalidParametersError("thin representations need a 0/1 dimension vector")
            mats[a.id] = sympy.Matrix([[0 if a.id in zero_arrows else 1]])
    return Representation(q, dim, mats)


def paths_from(q, x):
    q = _quiver(q)
    out = [((), x)]
    stack = [((), x)]
    while stack:
        path, end = stack.pop()
        for a in q.outgoing(end):
            extended = (path + (a.id,), a.head)
            out.append(extended)
            stack.append(extended)
    return sorted(out, key=lambda p: (len(p[0]), p[0]))


def projective_representation(q, x):
    """``P_x``: basis of ``P_x(y)`` is the set of paths from ``x`` to ``y``."""
    q = _quiver(q)
    paths = paths_from(q, x)
    by_end = collections.defaultdict(list)
    for path, end in paths:
        by_end[end].append(path)
    dim = DimensionVector((y, len(by_end[y])) for y in q.vertices)
    mats = {}
    for a in q.arrows:
        matrix = zeros(dim[a.head], dim[a.tail])
        for c, path in enumerate(by_end[a.tail]):
            r = by_end[a.head].index(path + (a.id,))
            matrix[r, c] = 1
        mats[a.id] = matrix
    return Representation(q, dim, mats)


class FormStructure:
    """Normalized pairing: identity between ``V(x)`` and ``V(σx)`` on plus vertices,
    ``ε·I`` on minus vertices and the standard form at fixed vertices."""

    def __init__(self, qs, flavor):
        self.qs = qs
        self.flavor = Flavor.parse(flavor)
        if self.flavor is Flavor.PLAIN:
            raise InvalidParametersError("form structures are orthogonal or symplectic")

    @property
    def epsilon(self):
        return 1 if self.flavor is Flavor.ORTHOGONAL else -1

    def gram(self, x, n):
        if x in self.qs.fixed_vertices:
            if self.flavor is Flavor.SYMPLECTIC:
                if n % 2:
                    raise ParityError(f"odd dimension {n} at fixed vertex {x!r}")
                return standard_symplectic(n)
            return identity(n)
        if x in self.qs.minus_vertices:
            return self.epsilon * identity(n)
        return identity(n)

    def gram_inverse(self, x, n):
        return inverse(self.gram(x, n))

    def partner(self, arrow, matrix, dim):
        return -self.gram_inverse(arrow.tail, dim[arrow.tail]) * matrix.T * self.gram(arrow.head, dim[arrow.head])

    def residual(self, V, arrow_id):
        a = self.qs.arrow(arrow_id)
        image = self.qs.sigma_arrow(arrow_id)
        return (
            V.mats[arrow_id].T * self.gram(a.head, V.dim[a.head])
            + self.gram(a.tail, V.dim[a.tail]) * V.mats[image]
        )


@dataclasses.dataclass
class FormReport:
    ok: bool
    violations: List[str]

    def __bool__(self):
        return self.ok


def check_form(qs, V, form):
    if not isinstance(form, FormStructure):
        form = FormStructure(qs, form)
    violations = []
    if not qs.is_symmetric(V.dim):
        violations.append("dimension vector is not symmetric")
        return FormReport(False, violations)
    if form.flavor is Flavor.SYMPLECTIC:
        for x in qs.fixed_vertices:
            if V.dim[x] % 2:
                violations.append(f"odd dimension {V.dim[x]} at fixed vertex {x}")
        if violations:
            return FormReport(False, violations)
    for a in qs.arrows:
        if not is_zero(form.residual(V, a.id)):
            violations.append(f"arrow {a.id} is not compatible with the form")
    return FormReport(not violations, violations)


class FormSpace:
    """Coordinates of the space of orthogonal or symplectic representations of dimension ``d``.

    Arrows in the plus part are free; fixed arrows are skew (orthogonal) or symmetric
    (symplectic); minus arrows are determined by the form.
    """

    def __init__(self, qs, dim, flavor):
        self.qs = qs
        self.dim = qs.vector(dim)
        self.form = FormStructure(qs, flavor)
        self.flavor = self.form.flavor
        if not qs.is_symmetric(self.dim):
            raise InvalidParametersError("form spaces need a symmetric dimension vector")
        if self.flavor is Flavor.SYMPLECTIC:
            odd = [x for x in qs.fixed_vertices if self.dim[x] % 2]
            if odd:
                raise ParityError(f"odd dimension at fixed vertices {odd}")
        self.coordinates = []
        for arrow_id in qs.plus_arrows:
            a = qs.arrow(arrow_id)
            for r in range(self.dim[a.head]):
                for c in range(self.dim[a.tail]):
                    self.coordinates.append((arrow_id, r, c))
        for arrow_id in qs.fixed_arrows:
            a = qs.arrow(arrow_id)
            n = self.dim[a.head]
            for r in range(n):
                for c in range(r if self.flavor is Flavor.SYMPLECTIC else r + 1, n):
                    self.coordinates.append((arrow_id, r, c))

    def __len__(self):
        return len(self.coordinates)

    def build(self, values):
        values = list(values)
        if len(values) != len(self.coordinates):
            raise DomainMismatchError(f"expected {len(self.coordinates)} coordinates")
        mats = {}
        for arrow_id in list(self.qs.plus_arrows) + list(self.qs.fixed_arrows):
            a = self.qs.arrow(arrow_id)
            mats[arrow_id] = zeros(self.dim[a.head], self.dim[a.tail])
        sign = 1 if self.flavor is Flavor.SYMPLECTIC else -1
        for (arrow_id, r, c), value in zip(self.coordinates, values):
            mats[arrow_id][r, c] = value
            if self.qs.is_fixed_arrow(arrow_id) and r != c:
                mats[arrow_id][c, r] = sign * value
        for arrow_id in self.qs.plus_arrows:
            a = self.qs.arrow(arrow_id)
            mats[self.qs.sigma_arrow(arrow_id)] = self.form.partner(a, mats[arrow_id], self.dim)
        return Representation(self.qs.quiver, self.dim, mats)

    def coordinates_of(self, V):
        return [V.mats[arrow_id][r, c] for arrow_id, r, c in self.coordinates]

    def random_point(self, rng, entry_range=SymQuivConfig.SAMPLE_ENTRY_RANGE):
        low, high = entry_range
        values = rng.integers(low, high + 1, size=len(self.coordinates))
        return self.build([sympy.Integer(int(v)) for v in values])

    def symbols(self, prefix="w"):
        return [sympy.Symbol(f"{prefix}{i}") for i in range(len(self.coordinates))]

    def symbolic_point(self, prefix="w"):
        symbols = self.symbols(prefix)
        return self.build(symbols), symbols


class TubeCoord(NamedTuple):
    """``E_{i,j}`` in tube ``tube``: socle ``e_i``, top ``e_j``, factors ``e_j .. e_i`` ascending.

    ``i`` and ``j`` are 1-based tube indices (0-based position plus one).
    """

    tube: str
    i: int
    j: int


def ambient_paths(qs):
    q = qs.quiver
    start = anchor_vertex(qs)
    end = qs.sigma(start)
    if q.sinks() != [end] or len(q.sources()) != 1:
        raise UnsupportedTypeError("homogeneous models need a single source a0 and sink σ(a0)")
    paths = []
    for first in q.outgoing(start):
        path = [first.id]
        current = first.head
        while current != end:
            step = q.outgoing(current)[0]
            path.append(step.id)
            current = step.head
        paths.append(path)
    order = {a.id: i for i, a in enumerate(q.arrows)}
    paths.sort(key=lambda p: order[p[0]])
    if classify(qs).kind is TameKind.A11:
        paths.sort(key=lambda p: not any(q.arrow(a).head in qs.fixed_vertices for a in p))
    return paths[0], paths[1]


def _require_a(qs):
    kind = classify(qs).kind
    if not kind.is_a:
        raise UnsupportedTypeError(f"matrix models of regular modules are not available for {kind.label}")
    return kind


def build_regular_A(qs, coordinate, tubes=None):
    """Matrix model of ``E_{i,j}`` (a ``TubeCoord``) or of ``V_{(φ,ψ)}`` (a pair) on canonical Ã."""
    _require_a(qs)
    q = qs.quiver
    if not isinstance(coordinate, TubeCoord):
        phi, psi = (sympy.Rational(v) for v in coordinate)
        if phi == 0 and psi == 0:
            raise InvalidParametersError("(φ, ψ) must not both vanish")
        upper, lower = ambient_paths(qs)
        mats = {a.id: sympy.Matrix([[1]]) for a in q.arrows}
        mats[upper[0]] = sympy.Matrix([[phi]])
        mats[lower[0]] = sympy.Matrix([[-psi]])
        return Representation(q, null_root(q), mats)
    tubes = tubes or tube_data(qs)
    try:
        tube = tubes.tube(coordinate.tube)
    except KeyError:
        raise InvalidParametersError(f"unknown tube {coordinate.tube!r}") from None
    r = tube.period
    if not (1 <= coordinate.i <= r and 1 <= coordinate.j <= r):
        raise InvalidParametersError(f"tube coordinates must lie in 1..{r}, got {coordinate}")
    dim = tube.span(coordinate.j, coordinate.i)
    if dim != tubes.h:
        return thin_representation(q, dim)
    return _full_length_model(qs, tube, coordinate, tubes.h)


def _full_length_model(qs, tube, coordinate, h):
    q = qs.quiver
    socle = thin_representation(q, tube.e(coordinate.i))
    top = thin_representation(q, tube.e(coordinate.j))
    for a in q.arrows:
        candidate = thin_representation(q, h, zero_arrows=(a.id,))
        if hom_space(candidate, candidate).dim != 1:
            continue
        if hom_space(socle, candidate).dim and hom_space(candidate, top).dim:
            return candidate
    raise InternalInconsistencyError(f"no model with socle e_{coordinate.i} and top e_{coordinate.j}")


@functools.lru_cache(maxsize=None)
def regular_models(qs):
    tubes = tube_data(qs)
    models = {}
    for tube in tubes.tubes:
        for i in range(1, tube.period + 1):
            for j in range(1, tube.period + 1):
                coord = TubeCoord(tube.name, i, j)
                models[coord] = build_regular_A(qs, coord, tubes)
    return models
