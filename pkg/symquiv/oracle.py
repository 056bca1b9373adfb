"""Brute-force checks: exact random group elements, the group action and invariant dimensions.

Invariants of the connected groups SL, SO and Sp are the polynomials killed by their Lie
algebras, so ``invariant_dims`` works with derivations on monomials instead of group averages.
"""
import collections
import dataclasses
import itertools
import logging
import math
from typing import Dict, List, Optional

import numpy as np
import sympy

from .catalog import evaluate_generator
from .config import Flavor, SymQuivConfig
from .errors import BudgetExceededError, DomainMismatchError, InvalidParametersError
from .linalg import det, identity, inverse, is_skew, pfaffian, sparse_rank, standard_symplectic, zeros
from .representations import FormSpace, FormStructure, Representation

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class GroupElement:
    qs: object
    dim: object
    flavor: Flavor
    blocks: Dict[str, sympy.Matrix]

    def __getitem__(self, x):
        return self.blocks[x]

    def inverse(self):
        return GroupElement(self.qs, self.dim, self.flavor, {x: inverse(g) for x, g in self.blocks.items()})

    def __mul__(self, other):
        return GroupElement(self.qs, self.dim, self.flavor, {x: g * other.blocks[x] for x, g in self.blocks.items()})

    def preserves_form(self):
        if any(det(g) != 1 for g in self.blocks.values()):
            return False
        if self.flavor is Flavor.PLAIN:
            return True
        form = FormStructure(self.qs, self.flavor)
        for x in self.qs.vertices:
            gram = form.gram(x, self.dim[x])
            if self.blocks[x].T * gram * self.blocks[self.qs.sigma(x)] != gram:
                return False
        return True


class PlainSpace:
    def __init__(self, qs, dim):
        self.qs = qs
        self.dim = qs.vector(dim)
        self.flavor = Flavor.PLAIN
        self.coordinates = [
            (a.id, r, c) for a in qs.arrows for r in range(self.dim[a.head]) for c in range(self.dim[a.tail])
        ]

    def __len__(self):
        return len(self.coordinates)

    def build(self, values):
        values = list(values)
        if len(values) != len(self.coordinates):
            raise DomainMismatchError(f"expected {len(self.coordinates)} coordinates")
        mats = {a.id: zeros(self.dim[a.head], self.dim[a.tail]) for a in self.qs.arrows}
        for (arrow_id, r, c), value in zip(self.coordinates, values):
            mats[arrow_id][r, c] = value
        return Representation(self.qs.quiver, self.dim, mats)

    def coordinates_of(self, V):
        return [V.mats[arrow_id][r, c] for arrow_id, r, c in self.coordinates]

    def random_point(self, rng, entry_range=SymQuivConfig.SAMPLE_ENTRY_RANGE):
        low, high = entry_range
        return self.build([sympy.Integer(int(v)) for v in rng.integers(low, high + 1, size=len(self))])

    def symbolic_point(self, prefix="w"):
        symbols = [sympy.Symbol(f"{prefix}{i}") for i in range(len(self.coordinates))]
        return self.build(symbols), symbols


def representation_space(qs, dim, flavor):
    flavor = Flavor.parse(flavor)
    if flavor is Flavor.PLAIN:
        return PlainSpace(qs, dim)
    return FormSpace(qs, dim, flavor)


def _elementary_product(n, rng, steps=SymQuivConfig.ELEMENTARY_STEPS):
    g = identity(n)
    if n < 2:
        return g
    low, high = SymQuivConfig.CAYLEY_ENTRY_RANGE
    for _ in range(steps):
        i, j = rng.choice(n, size=2, replace=False)
        factor = identity(n)
        factor[int(i), int(j)] = int(rng.integers(low, high + 1))
        g = factor * g
    return g


def _random_skew(n, rng):
    low, high = SymQuivConfig.CAYLEY_ENTRY_RANGE
    s = zeros(n, n)
    for i in range(n):
        for j in range(i + 1, n):
            v = int(rng.integers(low, high + 1))
            s[i, j], s[j, i] = v, -v
    return s


def _random_hamiltonian(n, rng):
    low, high = SymQuivConfig.CAYLEY_ENTRY_RANGE
    m = zeros(n, n)
    for i in range(n):
        for j in range(i, n):
            v = int(rng.integers(low, high + 1))
            m[i, j] = m[j, i] = v
    return standard_symplectic(n) * m


def cayley(s):
    """``(I - S)⁻¹(I + S)``, or ``None`` when ``I - S`` is singular."""
    n = s.rows
    left = identity(n) - s
    if det(left) == 0:
        return None
    return inverse(left) * (identity(n) + s)


def _form_block(n, flavor, rng):
    if n == 0:
        return identity(0)
    make = _random_hamiltonian if flavor is Flavor.SYMPLECTIC else _random_skew
    while True:
        g = cayley(make(n, rng))
        if g is not None:
            return g
        logger.debug("singular I - S, resampling")


def random_group_element(qs, d, flavor=Flavor.PLAIN, seed=SymQuivConfig.DEFAULT_SEED):
    """A seeded element of ``SL(Q, d)``, ``SO(Q, d)`` or ``SSp(Q, d)`` with exact entries."""
    flavor = Flavor.parse(flavor)
    d = qs.vector(d)
    rng = np.random.default_rng(seed)
    blocks = {}
    if flavor is Flavor.PLAIN:
        for x in qs.vertices:
            blocks[x] = _elementary_product(d[x], rng)
        return GroupElement(qs, d, flavor, blocks)
    FormSpace(qs, d, flavor)
    for x in qs.plus_vertices:
        g = _elementary_product(d[x], rng)
        blocks[x] = g
        blocks[qs.sigma(x)] = inverse(g).T
    for x in qs.fixed_vertices:
        blocks[x] = _form_block(d[x], flavor, rng)
    return GroupElement(qs, d, flavor, blocks)


def act(g, W):
    """``(g·W)(a) = g_{ha} W(a) g_{ta}⁻¹``."""
    if g.dim != W.dim:
        raise DomainMismatchError(f"group element of dimension {g.dim.format()} acting on {W.dim.format()}")
    inverses = {x: inverse(b) for x, b in g.blocks.items()}
    mats = {a.id: g[a.head] * W.mats[a.id] * inverses[a.tail] for a in W.quiver.arrows}
    return Representation(W.quiver, W.dim, mats)


@dataclasses.dataclass
class InvarianceReport:
    label: str
    trials: int
    passed: int
    value: object
    # (trial seed, value after acting) of the first failure
    counterexample: Optional[tuple] = None

    @property
    def ok(self):
        return self.counterexample is None


def invariance_test(f, W, trials=SymQuivConfig.DEFAULT_TRIALS, seed=SymQuivConfig.DEFAULT_SEED):
    """Compare ``f(g·W)`` with ``f(W)`` for ``trials`` seeded group elements; stops at the first failure."""
    base = evaluate_generator(f, W)
    passed = 0
    for t in range(trials):
        g = random_group_element(f.qs, W.dim, f.flavor, seed + t)
        value = evaluate_generator(f, act(g, W))
        logger.debug("%s trial %d: %s", f.label, t, value)
        if value != base:
            return InvarianceReport(f.label, trials, passed, base, (seed + t, value))
        passed += 1
    return InvarianceReport(f.label, trials, passed, base)


def _lie_algebra_basis(qs, d, flavor):
    basis = []

    def sl(n):
        out = []
        for i in range(n):
            for j in range(n):
                if i != j:
                    m = zeros(n, n)
                    m[i, j] = 1
                    out.append(m)
        for i in range(n - 1):
            m = zeros(n, n)
            m[i, i], m[i + 1, i + 1] = 1, -1
            out.append(m)
        return out

    if flavor is Flavor.PLAIN:
        for x in qs.vertices:
            basis += [{x: m} for m in sl(d[x])]
        return basis
    for x in qs.plus_vertices:
        basis += [{x: m, qs.sigma(x): -m.T} for m in sl(d[x])]
    for x in qs.fixed_vertices:
        n = d[x]
        for i in range(n):
            for j in range(i, n):
                if flavor is Flavor.ORTHOGONAL:
                    if i == j:
                        continue
                    m = zeros(n, n)
                    m[i, j], m[j, i] = 1, -1
                else:
                    s = zeros(n, n)
                    s[i, j] = s[j, i] = 1
                    m = standard_symplectic(n) * s
                basis.append({x: m})
    return basis


def _linear_forms(space, element, point, symbols):
    qs = space.qs
    forms = []
    for arrow_id, r, c in space.coordinates:
        a = qs.arrow(arrow_id)
        matrix = point.mats[arrow_id]
        value = sympy.Integer(0)
        if a.head in element:
            value += (element[a.head] * matrix)[r, c]
        if a.tail in element:
            value -= (matrix * element[a.tail])[r, c]
        value = sympy.expand(value)
        terms = []
        if value != 0:
            poly = sympy.Poly(value, *symbols)
            for exponents, coeff in poly.terms():
                k = exponents.index(1)
                terms.append((k, sympy.Rational(coeff)))
        forms.append(terms)
    return forms


def _monomials(n, degree):
    out = []
    for combo in itertools.combinations_with_replacement(range(n), degree):
        e = [0] * n
        for k in combo:
            e[k] += 1
        out.append(tuple(e))
    return out


def _check_budget(n, max_degree, budget):
    total = sum(math.comb(n + k - 1, k) for k in range(max_degree + 1))
    if total > budget:
        raise BudgetExceededError(f"{total} monomials in {n} variables up to degree {max_degree} exceed {budget}")
    return total


def _derive(forms, exponents):
    out = collections.defaultdict(lambda: sympy.Integer(0))
    for k, e_k in enumerate(exponents):
        if not e_k:
            continue
        for j, coeff in forms[k]:
            new = list(exponents)
            new[k] -= 1
            new[j] += 1
            out[tuple(new)] += e_k * coeff
    return out


def invariant_dims(
    qs, d, flavor=Flavor.PLAIN, max_degree=SymQuivConfig.DEFAULT_MAX_DEGREE,
    budget=SymQuivConfig.MONOMIAL_BUDGET, shuffle_seed=None,
):
    """Dimension of the degree-``D`` invariants for ``D = 0..max_degree``."""
    flavor = Flavor.parse(flavor)
    d = qs.vector(d)
    if flavor is Flavor.SYMPLECTIC and any(d[x] % 2 for x in qs.fixed_vertices):
        logger.warning("no symplectic representations of dimension %s; only constants", d.format())
        return [1] + [0] * max_degree
    space = representation_space(qs, d, flavor)
    point, symbols = space.symbolic_point()
    n = len(symbols)
    _check_budget(n, max_degree, budget)
    order = list(range(n))
    if shuffle_seed is not None:
        order = [int(k) for k in np.random.default_rng(shuffle_seed).permutation(n)]
    algebra = _lie_algebra_basis(qs, d, flavor)
    forms = []
    for element in algebra:
        raw = _linear_forms(space, element, point, symbols)
        # relabel coordinate k as order[k]
        permuted = [None] * n
        for k, terms in enumerate(raw):
            permuted[order[k]] = [(order[j], c) for j, c in terms]
        forms.append(permuted)
    dims = []
    for degree in range(max_degree + 1):
        monomials = _monomials(n, degree)
        columns = {m: i for i, m in enumerate(monomials)}
        rows = {}
        elements = collections.defaultdict(dict)
        for x, element_forms in enumerate(forms):
            for m in monomials:
                for image, coeff in _derive(element_forms, m).items():
                    if coeff == 0:
                        continue
                    r = rows.setdefault((x, image), len(rows))
                    elements[r][columns[m]] = coeff
        value = len(monomials) - sparse_rank(dict(elements), (len(rows), len(monomials)))
        logger.info("degree %d: %d invariants among %d monomials", degree, value, len(monomials))
        dims.append(value)
    return dims


def subalgebra_dims(
    generators, space, max_degree=SymQuivConfig.DEFAULT_MAX_DEGREE, budget=SymQuivConfig.MONOMIAL_BUDGET,
):
    """Dimension of the degree-``D`` part of the algebra the generators span, ``D = 0..max_degree``."""
    point, symbols = space.symbolic_point()
    _check_budget(len(symbols), max_degree, budget)
    polys = []
    for g in generators:
        value = sympy.expand(evaluate_generator(g, point))
        if value == 0:
            logger.debug("%s vanishes identically", g.label)
            continue
        poly = sympy.Poly(value, *symbols)
        if not poly.is_homogeneous:
            raise InvalidParametersError(f"{g.label} is not homogeneous")
        if poly.total_degree() == 0:
            continue
        polys.append(poly)
    dims = [1]
    for degree in range(1, max_degree + 1):
        combos = _degree_combinations([p.total_degree() for p in polys], degree)
        if len(combos) > budget:
            raise BudgetExceededError(f"{len(combos)} generator products in degree {degree}")
        products = []
        for combo in combos:
            product = sympy.Poly(1, *symbols)
            for k in combo:
                product = product * polys[k]
            products.append(dict(product.terms()))
        columns = {}
        elements = {}
        for r, terms in enumerate(products):
            elements[r] = {columns.setdefault(m, len(columns)): c for m, c in terms.items()}
        dims.append(sparse_rank(elements, (len(products), len(columns))) if products else 0)
        logger.info("degree %d: generators span %d dimensions", degree, dims[-1])
    return dims


def _degree_combinations(degrees, target):
    out = []

    def extend(start, remaining, chosen):
        if remaining == 0:
            out.append(tuple(chosen))
            return
        for k in range(start, len(degrees)):
            if degrees[k] <= remaining:
                extend(k, remaining - degrees[k], chosen + [k])

    extend(0, target, [])
    return out


@dataclasses.dataclass
class PfaffianTrial:
    size: int
    square_ok: bool
    congruence_ok: bool

    @property
    def ok(self):
        return self.square_ok and self.congruence_ok


def pfaffian_trials(size, trials=SymQuivConfig.DEFAULT_TRIALS, seed=SymQuivConfig.DEFAULT_SEED) -> List[PfaffianTrial]:
    """``pf(A)² = det(A)`` and ``pf(BABᵀ) = det(B)pf(A)`` on random rational skew matrices."""
    if size % 2:
        raise InvalidParametersError(f"Pfaffians need an even size, got {size}")
    rng = np.random.default_rng(seed)
    low, high = SymQuivConfig.SAMPLE_ENTRY_RANGE
    out = []
    for _ in range(trials):
        a = zeros(size, size)
        for i in range(size):
            for j in range(i + 1, size):
                v = sympy.Rational(int(rng.integers(low, high + 1)), int(rng.integers(1, 4)))
                a[i, j], a[j, i] = v, -v
        b = sympy.Matrix(size, size, [int(v) for v in rng.integers(low, high + 1, size=size * size)])
        value = pfaffian(a)
        congruent = b * a * b.T
        out.append(PfaffianTrial(
            size,
            value ** 2 == det(a),
            is_skew(congruent) and pfaffian(congruent) == det(b) * value,
        ))
    logger.info("%d Pfaffian trials of size %d", trials, size)
    return out
