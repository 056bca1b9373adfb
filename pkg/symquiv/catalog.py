"""Generators of the rings of symplectic and orthogonal semi-invariants of a regular vector.

A ``GeneratorDescriptor`` names a module (a tube coordinate, a homogeneous ``V_{(φ,ψ)}`` or a
coefficient of the pencil ``det(ψ·W(upper) + φ·W(lower))``) together with the presentation that
evaluates it.  Pencil coefficients are recovered by interpolation in ``t = ψ/φ``.
"""
import dataclasses
import logging
from typing import Optional, Tuple

import numpy as np
import sympy

from .config import Flavor, GeneratorKind, MiddleTerm, SymQuivConfig
from .errors import (
    InadmissibleVertexError,
    InternalInconsistencyError,
    InvalidParametersError,
    KacDegeneracyError,
    SkewSymmetryError,
    UnsupportedTypeError,
)
from .decomposition import LabelledPolygon, admissible_arcs, regular_decompose
from .linalg import interpolation_coefficients, is_skew
from .quiver_core import DimensionVector, Weight, classify, defect, euler_form
from .reflections import (
    coxeter_dim,
    is_admissible_sink,
    reflect_pair_dim,
    tube_data,
)
from .representations import (
    FormSpace,
    FormStructure,
    Representation,
    TubeCoord,
    ambient_paths,
    build_regular_A,
    random_representation,
    reflect_pair_rep,
)
from .semiinvariants import (
    ProjectivePresentation,
    det_from_presentation,
    hom_matrix,
    minimal_presentation,
    pf_from_presentation,
    weight_of,
)

logger = logging.getLogger(__name__)

_PF_PARTNER = {
    GeneratorKind.PF_ARC: GeneratorKind.DET_ARC,
    GeneratorKind.PF_PENCIL_COEFF: GeneratorKind.DET_PENCIL_COEFF,
}


@dataclasses.dataclass(frozen=True)
class Pencil:
    upper: Tuple[str, ...]
    lower: Tuple[str, ...]
    # degree in t of the evaluated determinant or Pfaffian
    degree: int
    index: int


@dataclasses.dataclass(frozen=True)
class GeneratorDescriptor:
    qs: object
    flavor: Flavor
    kind: GeneratorKind
    source: str
    weight: Weight
    alpha: DimensionVector
    domain: DimensionVector
    presentation: Optional[ProjectivePresentation] = None
    module: Optional[Representation] = None
    coordinate: object = None
    pencil: Optional[Pencil] = None
    # ((row, col), path) added to one presentation entry
    extra: Optional[Tuple[Tuple[int, int], Tuple[str, ...]]] = None
    vanishes: bool = False
    seed: int = SymQuivConfig.DEFAULT_SEED

    @property
    def label(self):
        prefix = "pf" if self.kind.is_pf else "det"
        if self.vanishes:
            return "0"
        if self.pencil is not None:
            return f"c_{self.pencil.index}"
        path = _single_path(self.presentation)
        if path is not None:
            return f"{prefix} V({'·'.join(reversed(path))})"
        if isinstance(self.coordinate, TubeCoord):
            mark = self.coordinate.tube[1:]
            return f"{prefix} E{mark}_{{{self.coordinate.i},{self.coordinate.j}}}"
        if self.coordinate is not None:
            phi, psi = self.coordinate
            return f"{prefix} V_({phi},{psi})"
        return f"{prefix} {self.source}"

    def recipe(self):
        if self.pencil is not None:
            upper = "·".join(reversed(self.pencil.upper))
            lower = "·".join(reversed(self.pencil.lower))
            lines = [f"{'pf' if self.kind.is_pf else 'det'}(ψ·{upper} + φ·{lower}), coefficient of ψ^{self.pencil.index}"]
            if self.extra is not None:
                lines.append("+ " + "·".join(reversed(self.extra[1])))
            return lines
        if self.presentation is None:
            return []
        return _with_extra(self.presentation, self.extra).describe()


def _single_path(presentation):
    if presentation is None or presentation.shape != (1, 1):
        return None
    entry = presentation.entry(0, 0)
    if len(entry) != 1:
        return None
    (path, coeff), = entry.items()
    return path if coeff == 1 and path else None


def _with_extra(presentation, extra, coeff=1):
    if extra is None or coeff == 0:
        return presentation
    (r, c), path = extra
    entries = {k: dict(v) for k, v in presentation.entries.items()}
    entry = entries.setdefault((r, c), {})
    entry[path] = entry.get(path, 0) + coeff
    return dataclasses.replace(presentation, entries=entries)


def _middle_kind(qs, tube, walk):
    """Op when the centre of a σ_I-stable walk is a fixed-vertex root, Spp for a fixed arrow."""
    n = len(walk)
    if n % 2:
        centre = tube.e(walk[n // 2])
        if any(centre[x] for x in qs.fixed_vertices):
            return MiddleTerm.OP
    else:
        centre = tube.e(walk[n // 2 - 1])
    if any(centre[qs.arrow(a).tail] for a in qs.fixed_arrows):
        return MiddleTerm.SPP
    return MiddleTerm.NEITHER


def _path_kind(qs, path):
    if any(qs.is_fixed_arrow(a) for a in path):
        return MiddleTerm.SPP
    if any(qs.arrow(a).head in qs.fixed_vertices for a in path[:-1]):
        return MiddleTerm.OP
    return MiddleTerm.NEITHER


def check_op_spp(qs, name):
    tubes = tube_data(qs)
    if isinstance(name, DimensionVector):
        if defect(qs.quiver, name) != 0:
            return MiddleTerm.NEITHER
        located = tubes.locate(name)
        if located is None:
            return MiddleTerm.NEITHER
        tube, i = located
        name = TubeCoord(tube.name, i, i)
    if isinstance(name, TubeCoord):
        try:
            tube = tubes.tube(name.tube)
        except KeyError:
            raise InvalidParametersError(f"unknown tube {name.tube!r}") from None
        alpha = tube.span(name.j, name.i)
        if coxeter_dim(qs.quiver, alpha) != qs.delta(alpha):
            return MiddleTerm.NEITHER
        poly = LabelledPolygon(tube, (0,) * tube.period)
        return _middle_kind(qs, tube, poly.walk(name.i + 1, name.j))
    phi, psi = (sympy.Rational(v) for v in name)
    if phi == 0 and psi == 0:
        raise InvalidParametersError("(φ, ψ) must not both vanish")
    upper, lower = ambient_paths(qs)
    if psi == 0:
        return _path_kind(qs, lower)
    if phi == 0:
        return _path_kind(qs, upper)
    return MiddleTerm.NEITHER


def _wants_pf(flavor, middle):
    return (flavor is Flavor.SYMPLECTIC and middle is MiddleTerm.OP) or (
        flavor is Flavor.ORTHOGONAL and middle is MiddleTerm.SPP
    )


def _sample(qs, d, flavor, rng):
    if flavor is Flavor.PLAIN:
        return random_representation(qs.quiver, d, rng)
    return FormSpace(qs, d, flavor).random_point(rng)


def _minus_count(qs, presentation):
    minus = set(qs.minus_arrows)
    return sum(1 for path in presentation.paths() for a in path if a in minus)


def _arc_descriptor(qs, d, flavor, tube, arc, sample, seed):
    coordinate = TubeCoord(tube.name, tube.wrap(arc.start - 1), arc.end)
    alpha = tube.span(coordinate.j, coordinate.i)
    if euler_form(qs, alpha, d) != 0:
        raise InternalInconsistencyError(f"arc {arc} names a module with <α, d> != 0")
    kind = GeneratorKind.DET_ARC
    if flavor is not Flavor.PLAIN and _wants_pf(flavor, check_op_spp(qs, coordinate)):
        kind = GeneratorKind.PF_ARC
    try:
        module = build_regular_A(qs, coordinate)
    except UnsupportedTypeError:
        logger.debug("no matrix model for %s, listing at dimension level", arc)
        return GeneratorDescriptor(
            qs, flavor, kind, str(arc), weight_of(qs, alpha, flavor, kind.is_pf), alpha, d,
            coordinate=coordinate, seed=seed,
        )
    presentation = minimal_presentation(module)
    if presentation.empty_columns():
        logger.debug("%s has a degenerate presentation", arc)
        return None
    if kind is GeneratorKind.PF_ARC:
        try:
            pf_from_presentation(qs, presentation, sample, flavor, seed)
        except SkewSymmetryError as exc:
            logger.warning("%s: %s; listing the determinant instead", arc, exc)
            kind = GeneratorKind.DET_ARC
    if kind is GeneratorKind.DET_ARC and _single_path(presentation) is not None:
        if len(_single_path(presentation)) == 1:
            kind = GeneratorKind.DET_ARROW
    return GeneratorDescriptor(
        qs, flavor, kind, str(arc), weight_of(qs, alpha, flavor, kind.is_pf), alpha, d,
        presentation, module, coordinate, seed=seed,
    )


def _arc_generators(qs, d, flavor, regular, sample, seed):
    chosen = {}
    for poly in regular.polygons:
        tube = poly.tube
        for arc in admissible_arcs(poly):
            partner = (tube.image, tube.sigma_I(arc.end), tube.sigma_I(arc.start))
            key = frozenset({(tube.name, arc.start, arc.end), partner})
            g = _arc_descriptor(qs, d, flavor, tube, arc, sample, seed)
            if g is None:
                continue
            if flavor is Flavor.PLAIN:
                chosen[(tube.name, arc.start, arc.end)] = g
                continue
            current = chosen.get(key)
            if current is None or (
                g.presentation is not None
                and current.presentation is not None
                and _minus_count(qs, g.presentation) < _minus_count(qs, current.presentation)
            ):
                chosen[key] = g
    return list(chosen.values())


def _pencil_presentation(qs, upper, lower, t):
    q = qs.quiver
    start = q.arrow(upper[0]).tail
    end = q.arrow(upper[-1]).head
    entry = {tuple(lower): sympy.Integer(1)}
    if t != 0:
        entry[tuple(upper)] = sympy.Rational(t)
    return ProjectivePresentation(q, (end,), (start,), {(0, 0): entry})


def _pencil_values(
    qs, flavor, upper, lower, pf, degree, W, extra=None, extra_scaled=False, seed=SymQuivConfig.DEFAULT_SEED,
):
    values = []
    for t in range(degree + 1):
        presentation = _with_extra(_pencil_presentation(qs, upper, lower, t), extra, t if extra_scaled else 1)
        if pf:
            values.append(pf_from_presentation(qs, presentation, W, flavor, seed).value)
        else:
            values.append(det_from_presentation(presentation, W).value)
    return interpolation_coefficients(list(range(degree + 1)), values)


def _pencil_is_skew(qs, flavor, upper, lower, sample):
    if flavor is Flavor.PLAIN:
        return False
    form = FormStructure(qs, flavor)
    start = qs.arrow(upper[0]).tail
    gram = form.gram(start, sample.dim[start])
    for t in (1, 2):
        matrix = gram * hom_matrix(_pencil_presentation(qs, upper, lower, t), sample)
        if not is_skew(matrix):
            return False
    return True


def _pencil_generators(qs, d, flavor, samples, seed):
    try:
        upper, lower = ambient_paths(qs)
    except UnsupportedTypeError as exc:
        logger.warning("no pencil generators: %s", exc)
        return []
    upper, lower = tuple(upper), tuple(lower)
    size = d[qs.arrow(upper[0]).tail]
    pf = _pencil_is_skew(qs, flavor, upper, lower, samples[0]) and size % 2 == 0
    degree = size // 2 if pf else size
    support = set()
    for sample in samples:
        coeffs = _pencil_values(qs, flavor, upper, lower, pf, degree, sample, seed=seed)
        support.update(i for i, c in enumerate(coeffs) if c != 0)
    kind = GeneratorKind.PF_PENCIL_COEFF if pf else GeneratorKind.DET_PENCIL_COEFF
    weight = weight_of(qs, _h(qs), flavor, pf)
    source = f"{'pf' if pf else 'det'}(ψ·{'·'.join(reversed(upper))} + φ·{'·'.join(reversed(lower))})"
    out = []
    for i in sorted(support):
        out.append(GeneratorDescriptor(
            qs, flavor, kind, source, weight, _h(qs), d,
            pencil=Pencil(upper, lower, degree, i), seed=seed,
        ))
    logger.info("pencil of degree %d contributes %d coefficients", degree, len(out))
    return out


def _h(qs):
    return tube_data(qs).h


def _pair_generators(qs, d, flavor, sample, seed):
    out = []
    for pair in ((1, 0), (0, 1), (1, 1)):
        if not _wants_pf(flavor, check_op_spp(qs, pair)):
            continue
        module = build_regular_A(qs, pair)
        presentation = minimal_presentation(module)
        try:
            pf_from_presentation(qs, presentation, sample, flavor, seed)
        except SkewSymmetryError as exc:
            logger.warning("V_%s: %s; it is covered by the pencil", pair, exc)
            continue
        out.append(GeneratorDescriptor(
            qs, flavor, GeneratorKind.PF_ARC, f"V{pair}", weight_of(qs, module.dim, flavor, True),
            module.dim, d, presentation, module, pair, seed=seed,
        ))
    return out


def list_generators(qs, d, flavor=Flavor.PLAIN, seed=SymQuivConfig.DEFAULT_SEED):
    """Arc generators, Pfaffians of self-dual homogeneous modules and pencil coefficients."""
    flavor = Flavor.parse(flavor)
    d = qs.vector(d)
    if flavor is Flavor.SYMPLECTIC and any(d[x] % 2 for x in qs.fixed_vertices):
        logger.info("no symplectic representations of dimension %s: trivial ring", d.format())
        return []
    regular = regular_decompose(qs, d, flavor)
    rng = np.random.default_rng(seed)
    samples = [_sample(qs, d, flavor, rng) for _ in range(2)]
    generators = _arc_generators(qs, d, flavor, regular, samples[0], seed)
    if regular.p >= 1 and classify(qs).kind.is_a:
        if flavor is not Flavor.PLAIN:
            generators += _pair_generators(qs, d, flavor, samples[0], seed)
        generators += _pencil_generators(qs, d, flavor, samples, seed)
    logger.info("%d generators for %s (%s)", len(generators), d.format(), flavor.value)
    return generators


def evaluate_generator(g, W):
    if g.vanishes:
        return sympy.Integer(0)
    if g.pencil is not None:
        coeffs = _pencil_values(
            g.qs, g.flavor, g.pencil.upper, g.pencil.lower, g.kind.is_pf, g.pencil.degree, W,
            g.extra, g.pencil.index > 0, g.seed,
        )
        return coeffs[g.pencil.index]
    if g.presentation is None:
        raise UnsupportedTypeError(f"{g.label} has no presentation to evaluate")
    presentation = _with_extra(g.presentation, g.extra)
    if g.kind.is_pf:
        return pf_from_presentation(g.qs, presentation, W, g.flavor, g.seed).value
    return det_from_presentation(presentation, W).value


def weights_table(qs, d, flavor=Flavor.PLAIN):
    """Weight of the semi-invariant of every admissible arc, halved for Pfaffian arcs."""
    flavor = Flavor.parse(flavor)
    regular = regular_decompose(qs, d, flavor)
    table = {}
    for poly in regular.polygons:
        tube = poly.tube
        for arc in admissible_arcs(poly):
            coordinate = TubeCoord(tube.name, tube.wrap(arc.start - 1), arc.end)
            alpha = tube.span(coordinate.j, coordinate.i)
            pf = flavor is not Flavor.PLAIN and _wants_pf(flavor, check_op_spp(qs, coordinate))
            table[arc] = weight_of(qs, alpha, flavor, pf)
    return table


def transport(g, sequence):
    """Carry ``g`` along admissible sink pairs with ``C⁺_{(x,σx)}``."""
    qs, d, module, alpha = g.qs, g.domain, g.module, g.alpha
    if g.pencil is not None:
        raise UnsupportedTypeError("pencil coefficients are transported through V_(φ,ψ), not supported")
    source, vanishes = g.source, g.vanishes
    for x in sequence:
        if not is_admissible_sink(qs, x):
            raise InadmissibleVertexError(f"step {x!r} is not an admissible sink")
        reflected, new_d = reflect_pair_dim(qs, x, d)
        if new_d[x] < 0:
            raise InadmissibleVertexError(f"c_(x,σx) d is negative at {x!r}")
        if new_d[x] == 0:
            raise KacDegeneracyError(
                f"d reflects to 0 at {x!r}: the ring on the reflected quiver gains a polynomial variable y",
                variable="y",
            )
        if not vanishes:
            if module is not None:
                module = reflect_pair_rep(qs, module, x)
                alpha = module.dim
                vanishes = module.is_zero()
            else:
                _, alpha = reflect_pair_dim(qs, x, alpha)
                vanishes = alpha.is_zero()
        if vanishes:
            logger.info("%s reflects to zero at %s", g.label, x)
        source = f"C⁺({x},{qs.sigma(x)}) {source}"
        qs, d = reflected, new_d
    if module is not None and not vanishes:
        presentation = minimal_presentation(module)
    else:
        presentation = None
    weight = weight_of(qs, alpha, g.flavor, g.kind.is_pf)
    return dataclasses.replace(
        g, qs=qs, source=source, weight=weight, alpha=alpha, domain=d, presentation=presentation,
        module=module, coordinate=None, vanishes=vanishes, extra=None,
    )


def corrupted_descriptor(g):
    if g.pencil is not None:
        return _corrupt_pencil(g)
    presentation = g.presentation
    if presentation is None or not presentation.entries:
        raise InvalidParametersError(f"{g.label} has no recipe to corrupt")
    d = g.domain
    arrows = g.qs.arrows
    for (r, c), combination in sorted(presentation.entries.items()):
        path = min(combination, key=lambda p: (len(p), p))
        row, col = presentation.rows[r], presentation.cols[c]
        preferred = [g.qs.arrow(path[-1])] if path else []
        for a in preferred + list(reversed(arrows)):
            if d[a.tail] == d[a.head] == d[row]:
                return _corrupt(g, (r, c), path + (a.id,))
        for a in arrows:
            if d[a.tail] == d[a.head] == d[col]:
                return _corrupt(g, (r, c), (a.id,) + path)
    raise InvalidParametersError(f"no arrow fits into the recipe of {g.label}")


def _corrupt(g, position, path):
    logger.debug("corrupting %s with the term %s", g.label, "·".join(reversed(path)))
    pencil = g.pencil
    if pencil is not None and g.kind.is_pf:
        pencil = dataclasses.replace(pencil, degree=2 * pencil.degree)
    return dataclasses.replace(g, kind=_PF_PARTNER.get(g.kind, g.kind), pencil=pencil, extra=(position, path))


def _corrupt_pencil(g):
    pencil = g.pencil
    path = pencil.upper if pencil.index > 0 else pencil.lower
    end = g.qs.arrow(path[-1]).head
    d = g.domain
    for a in [g.qs.arrow(path[-1])] + list(reversed(g.qs.arrows)):
        if d[a.tail] == d[a.head] == d[end]:
            return _corrupt(g, (0, 0), path + (a.id,))
    raise InvalidParametersError(f"no arrow fits into the recipe of {g.label}")
