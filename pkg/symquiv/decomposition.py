"""Regular symmetric dimension vectors: labelled polygons, admissible arcs and generic decompositions.

Polygon indices run ``1..r`` along a tube, ``e_{i+1} = C⁺ e_i``; clockwise means decreasing
index.  An arc ``[i, j]`` walks clockwise from ``i`` to ``j``; its interior is everything strictly
between, so ``e_{[i,j]}`` of a decomposition summand is the sum over the interior.
"""
import collections
import dataclasses
import functools
import logging
import math
from typing import Tuple

import sympy

from .config import Flavor
from .errors import (
    InternalInconsistencyError,
    InvalidParametersError,
    NestingError,
    NotRegularError,
    ParityError,
)
from .linalg import solve
from .quiver_core import DimensionVector, null_root
from .reflections import tube_data
from .representations import TubeCoord, build_regular_A, direct_sum, ext_dim

logger = logging.getLogger(__name__)

_SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
_PRIMES = {"Δ": "", "Δ′": "′", "Δ″": "″"}


@dataclasses.dataclass(frozen=True)
class LabelledPolygon:
    tube: object
    labels: Tuple[int, ...]

    @property
    def name(self):
        return self.tube.name

    @property
    def period(self):
        return self.tube.period

    def label(self, i):
        return self.labels[self.tube.wrap(i) - 1]

    def cw(self, i, steps=1):
        return self.tube.wrap(i - steps)

    def sigma_I(self, i):
        return self.tube.sigma_I(i)

    @property
    def self_mapped(self):
        return self.tube.self_mapped

    def walk(self, start, end):
        start, end = self.tube.wrap(start), self.tube.wrap(end)
        out = [start]
        current = self.cw(start)
        while current != end:
            out.append(current)
            current = self.cw(current)
        out.append(end)
        return out

    def interior(self, start, end):
        return tuple(self.walk(start, end)[1:-1])

    def arc(self, start, end):
        inner = self.interior(start, end)
        bound = max(self.label(start), self.label(end))
        ind = min((self.label(k) for k in inner), default=bound)
        return Arc(self.name, self.tube.wrap(start), self.tube.wrap(end), ind, inner, bound)

    def is_symmetric(self, indices):
        return self.self_mapped and {self.sigma_I(i) for i in indices} == set(indices)

    def symbol(self, i):
        mark = _PRIMES.get(self.name, self.name)
        return f"e{mark}{str(i).translate(_SUBSCRIPTS)}"

    def pair_symbol(self, i):
        e = self.symbol(i)
        return f"({e}+δ{e})"


@dataclasses.dataclass(frozen=True)
class Arc:
    tube: str
    start: int
    end: int
    # smallest interior label; an edge carries its endpoint label
    ind: int
    interior: Tuple[int, ...]
    # endpoint label; equal endpoint labels make the arc admissible
    bound: int

    @property
    def span(self):
        return frozenset(self.interior)

    @property
    def q(self):
        return self.ind - self.bound

    def __str__(self):
        return f"{self.tube}[{self.start},{self.end}]"


@dataclasses.dataclass(frozen=True)
class RegularDecomposition:
    qs: object
    d: DimensionVector
    p: int
    polygons: Tuple[LabelledPolygon, ...]

    def polygon(self, name):
        for poly in self.polygons:
            if poly.name == name:
                return poly
        raise KeyError(name)

    def primary(self):
        names = {t.name for t in tube_data(self.qs).primary_tubes()}
        return [poly for poly in self.polygons if poly.name in names]

    @property
    def labels(self):
        return {poly.name: poly.labels for poly in self.polygons}


def regular_decompose(qs, d, flavor=Flavor.PLAIN):
    """``d = p·h + Σ p_i e_i`` over every tube, with a zero label in each tube."""
    flavor = Flavor.parse(flavor)
    d = qs.vector(d)
    if not qs.is_symmetric(d):
        raise InvalidParametersError(f"dimension vector {d.format()} is not symmetric")
    if flavor is Flavor.SYMPLECTIC:
        odd = [x for x in qs.fixed_vertices if d[x] % 2]
        if odd:
            raise ParityError(f"symplectic dimension vectors are even at fixed vertices, odd at {odd}")
    tubes = tube_data(qs)
    q = qs.quiver
    h = null_root(q)
    columns = [h]
    for tube in tubes.tubes:
        columns.extend(tube.roots[:-1])
    matrix = sympy.Matrix([[col[x] for col in columns] for x in q.vertices])
    rhs = sympy.Matrix([d[x] for x in q.vertices])
    result = solve(matrix, rhs)
    if result is None:
        raise NotRegularError(f"{d.format()} is not a combination of regular simple roots")
    solution, free = result
    if free:
        raise InternalInconsistencyError("regular simple roots and h are linearly dependent")
    if any(not v.is_integer for v in solution):
        raise NotRegularError(f"{d.format()} has non-integral tube coordinates")
    p = int(solution[0])
    offset = 1
    polygons = []
    for tube in tubes.tubes:
        coeffs = [int(v) for v in solution[offset:offset + tube.period - 1]] + [0]
        offset += tube.period - 1
        shift = min(coeffs)
        p += shift
        polygons.append(LabelledPolygon(tube, tuple(c - shift for c in coeffs)))
    if p < 0:
        raise NotRegularError(f"{d.format()} has no nonnegative regular decomposition")
    logger.info("regular decomposition: p=%d, labels %s", p, {poly.name: poly.labels for poly in polygons})
    return RegularDecomposition(qs, d, p, tuple(polygons))


def admissible_arcs(poly):
    """Arcs ``[i, j]`` with ``p_i = p_j`` below every interior label, in start-index order."""
    arcs = []
    for start in range(1, poly.period + 1):
        for length in range(1, poly.period + 1):
            end = poly.cw(start, length)
            arc = poly.arc(start, end)
            if poly.label(start) != poly.label(end):
                continue
            if all(poly.label(k) > arc.bound for k in arc.interior):
                arcs.append(arc)
    return arcs


def arc_multiplicity(arcs):
    """Successive index differences along a chain of nested arcs, outermost first."""
    out = []
    previous = None
    for arc in arcs:
        if previous is not None and not arc.span <= previous.span:
            raise NestingError(f"{arc} is not contained in {previous}")
        out.append(arc.ind if previous is None else arc.ind - previous.ind)
        previous = arc
    return out


def level_components(poly):
    """Maximal runs of the superlevel sets ``{i : p_i >= k}``, each with its multiplicity."""
    components = {}
    top = max(poly.labels, default=0)
    for k in range(1, top + 1):
        inside = [i for i in range(1, poly.period + 1) if poly.label(i) >= k]
        seen = set()
        for i in inside:
            if i in seen:
                continue
            # the clockwise-first element of the run containing i
            first = i
            while poly.label(first + 1) >= k and poly.tube.wrap(first + 1) != i:
                first = poly.tube.wrap(first + 1)
            run = [first]
            current = poly.cw(first)
            while poly.label(current) >= k and current != first:
                run.append(current)
                current = poly.cw(current)
            seen.update(run)
            key = frozenset(run)
            if key not in components:
                components[key] = poly.arc(poly.tube.wrap(first + 1), poly.cw(run[-1]))
    arcs = sorted(components.values(), key=lambda a: (min(a.interior), a.ind))
    return arcs


def up_down_split(poly):
    """The two σ_I-stable halves left after removing a zero label (and its image)."""
    n = poly.period
    everything = (1,) + tuple(range(n, 1, -1))
    if not poly.self_mapped or not poly.tube.fixed and not _fixed_edges(poly):
        return everything, ()
    zeros = [i for i in range(1, n + 1) if poly.label(i) == 0]
    plus_zero = [i for i in zeros if i in poly.tube.plus]
    if plus_zero:
        z = plus_zero[0]
        mirror = poly.sigma_I(z)
        up = _open_walk(poly, z, mirror)
        down = _open_walk(poly, mirror, z)
        return up, down
    if zeros:
        z = zeros[0]
        return _open_walk(poly, z, z), ()
    return everything, ()


def _open_walk(poly, after, before):
    out = []
    current = poly.cw(after)
    while current != before:
        out.append(current)
        current = poly.cw(current)
    return tuple(out)


def _fixed_edges(poly):
    return [i for i in range(1, poly.period + 1) if poly.sigma_I(i) == poly.cw(i) and poly.cw(i) != i]


@dataclasses.dataclass(frozen=True)
class Summand:
    vector: DimensionVector
    multiplicity: int
    # (basis symbol, coefficient) in display order
    terms: Tuple[Tuple[str, int], ...]
    modules: Tuple[TubeCoord, ...] = ()
    arcs: Tuple[Arc, ...] = ()
    convention_dependent: bool = False

    def _body(self):
        coeffs = [c for _, c in self.terms]
        g = functools.reduce(math.gcd, coeffs, 0)

        def piece(symbol, c):
            return symbol if c == 1 else f"{c}{symbol}"

        if len(self.terms) == 1:
            symbol, c = self.terms[0]
            return piece(symbol, c), c == 1 and symbol.startswith("(")
        inner = "+".join(piece(s, c // g) for s, c in self.terms)
        if g > 1:
            return f"{g}({inner})", False
        return f"({inner})", True

    def format(self):
        body, grouped = self._body()
        if self.multiplicity == 1:
            return body
        return (body if grouped else f"({body})") + f"^{{⊕{self.multiplicity}}}"


@dataclasses.dataclass(frozen=True)
class SymmetricDecomposition:
    d: DimensionVector
    p: int
    summands: Tuple[Summand, ...]
    flavor: Flavor = Flavor.PLAIN
    convention_dependent: bool = False

    def resum(self, h):
        total = h * self.p
        for s in self.summands:
            total = total + s.vector * s.multiplicity
        return total

    def format_regular(self):
        return " ⊕ ".join(s.format() for s in self.summands)

    def format(self):
        parts = []
        if self.p:
            parts.append("h" if self.p == 1 else f"h^{{⊕{self.p}}}")
        if self.summands:
            parts.append(self.format_regular())
        return " ⊕ ".join(parts) or "0"


def _terms(poly, indices, h=0):
    counts = collections.Counter(indices)
    pairs, fixed = {}, {}
    for i in sorted(counts):
        if i in poly.tube.fixed:
            fixed[i] = counts[i]
        elif i in poly.tube.plus:
            pairs[i] = counts[i]
    terms = [("h", h)] if h else []
    terms += [(poly.pair_symbol(i), c) for i, c in pairs.items()]
    terms += [(poly.symbol(i), c) for i, c in fixed.items()]
    return tuple(terms)


def _coordinate(tube, indices):
    s = set(indices)
    socle = next(i for i in s if tube.wrap(i + 1) not in s)
    top = next(i for i in s if tube.wrap(i - 1) not in s)
    return TubeCoord(tube.name, socle, top)


def _component_summand(qs, poly, arc, q, tubes):
    tube = poly.tube
    if poly.is_symmetric(arc.interior):
        vector = _vector(tube, arc.interior)
        return Summand(vector, q, _terms(poly, arc.interior), (_coordinate(tube, arc.interior),), (arc,))
    image = tubes.tube(tube.image)
    mirror = [tube.sigma_I(i) for i in arc.interior]
    vector = _vector(tube, arc.interior) + _vector(image, mirror)
    modules = (_coordinate(tube, arc.interior), _coordinate(image, mirror))
    return Summand(vector, q, _terms(poly, arc.interior), modules, (arc,))


def _vector(tube, indices):
    total = None
    for i in indices:
        total = tube.e(i) if total is None else total + tube.e(i)
    return total


def _components(poly):
    out = []
    for arc in level_components(poly):
        if poly.self_mapped and not poly.is_symmetric(arc.interior):
            if not any(i in poly.tube.plus for i in arc.interior):
                continue
        out.append(arc)
    return out


def _merge_adjacent(summands):
    merged = []
    for s in summands:
        last = merged[-1] if merged else None
        if last and (last.terms, last.vector, last.convention_dependent) == (s.terms, s.vector, s.convention_dependent):
            merged[-1] = dataclasses.replace(last, multiplicity=last.multiplicity + s.multiplicity)
            continue
        merged.append(s)
    return merged


def generic_decompose(qs, d, flavor=Flavor.PLAIN):
    """Generic decomposition of a regular symmetric vector: ``p·h`` plus one summand per level component."""
    regular = regular_decompose(qs, d, flavor)
    tubes = tube_data(qs)
    summands = []
    for poly in regular.primary():
        for arc in _components(poly):
            summands.append(_component_summand(qs, poly, arc, arc.q, tubes))
    out = SymmetricDecomposition(regular.d, regular.p, tuple(summands), Flavor.PLAIN)
    _check_resum(qs, out)
    return out


def _check_resum(qs, decomposition):
    if decomposition.resum(null_root(qs)) != decomposition.d:
        raise InternalInconsistencyError("decomposition does not re-sum to the dimension vector")


def _half_type(qs, poly, half):
    tube = poly.tube
    centre = next((i for i in half if poly.sigma_I(i) == i), None)
    if centre is None:
        centre = next((i for i in half if poly.sigma_I(i) == poly.cw(i) and poly.cw(i) in half), None)
    if centre is None:
        return None
    root = tube.e(centre)
    if poly.sigma_I(centre) == centre:
        for x in qs.fixed_vertices:
            if root[x]:
                return "vertex", x
    for arrow_id in qs.fixed_arrows:
        if root[qs.arrow(arrow_id).tail]:
            return "arrow", qs.arrow(arrow_id)
    return None


def _form_decompose(qs, d, flavor):
    regular = regular_decompose(qs, d, flavor)
    tubes = tube_data(qs)
    h = null_root(qs)
    p = regular.p
    summands = []
    flagged = False
    for poly in regular.primary():
        components = _components(poly)
        replacements = {}
        if poly.self_mapped:
            for half in up_down_split(poly):
                if not half:
                    continue
                kind = _half_type(qs, poly, half)
                chain = [
                    arc for arc in components
                    if poly.is_symmetric(arc.interior) and set(arc.interior) <= set(half)
                ]
                if kind is None or not chain:
                    continue
                chain.sort(key=lambda a: (-len(a.interior), a.ind))
                if flavor is Flavor.SYMPLECTIC:
                    pair = kind[0] == "vertex"
                else:
                    part = DimensionVector.zero(qs.vertices)
                    for i in half:
                        part = part + poly.tube.e(i) * poly.label(i)
                    pair = kind[0] == "arrow" and part[kind[1].tail] % 2 == 0
                if not pair:
                    continue
                copies = [arc for arc in chain for _ in range(arc.q)]
                built = []
                for k in range(0, len(copies) - 1, 2):
                    outer, inner = copies[k], copies[k + 1]
                    indices = list(outer.interior) + list(inner.interior)
                    built.append(Summand(
                        _vector(poly.tube, indices), 1, _terms(poly, indices),
                        (_coordinate(poly.tube, outer.interior), _coordinate(poly.tube, inner.interior)),
                        (outer, inner),
                    ))
                if len(copies) % 2:
                    last = copies[-1]
                    if p % 2:
                        logger.warning("merging h with %s for odd p; this branch is convention dependent", last)
                        p -= 1
                        flagged = True
                        built.append(Summand(
                            h + _vector(poly.tube, last.interior), 1, _terms(poly, last.interior, h=1),
                            (_coordinate(poly.tube, last.interior),), (last,), convention_dependent=True,
                        ))
                    elif flavor is Flavor.SYMPLECTIC:
                        raise ParityError(f"an odd number of symmetric arcs passes through {kind[1]}")
                    else:
                        built.append(_component_summand(qs, poly, last, 1, tubes))
                replacements[chain[0]] = built
                for arc in chain[1:]:
                    replacements[arc] = []
        for arc in components:
            if arc in replacements:
                summands.extend(replacements[arc])
            else:
                summands.append(_component_summand(qs, poly, arc, arc.q, tubes))
    out = SymmetricDecomposition(regular.d, p, tuple(_merge_adjacent(summands)), flavor, flagged)
    _check_resum(qs, out)
    return out


def symplectic_generic(qs, d):
    return _form_decompose(qs, d, Flavor.SYMPLECTIC)


def orthogonal_generic(qs, d):
    return _form_decompose(qs, d, Flavor.ORTHOGONAL)


def decompose(qs, d, flavor=Flavor.PLAIN):
    flavor = Flavor.parse(flavor)
    if flavor is Flavor.SYMPLECTIC:
        return symplectic_generic(qs, d)
    if flavor is Flavor.ORTHOGONAL:
        return orthogonal_generic(qs, d)
    return generic_decompose(qs, d)


def summand_module(qs, summand):
    modules = [build_regular_A(qs, coord) for coord in summand.modules]
    total = modules[0]
    for m in modules[1:]:
        total = direct_sum(total, m)
    return total


def ext_conflicts(qs, summands):
    if isinstance(summands, SymmetricDecomposition):
        summands = summands.summands
    modules = [[build_regular_A(qs, coord) for coord in s.modules] for s in summands]
    conflicts = []
    for s in range(len(summands)):
        for t in range(s + 1, len(summands)):
            if summands[s].vector == summands[t].vector:
                continue
            value = sum(
                ext_dim(v, w) + ext_dim(w, v)
                for v in modules[s] for w in modules[t]
            )
            if value:
                conflicts.append((s, t, value))
    return conflicts
