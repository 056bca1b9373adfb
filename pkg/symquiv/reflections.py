"""Reflections, Coxeter transformations, tube data and reduction to canonical orientations."""
import collections
import dataclasses
import functools
import heapq
import itertools
import logging
from typing import Tuple

import numpy as np
from ordered_set import OrderedSet

from .config import Direction, Region, SymQuivConfig, TameKind
from .errors import (
    ClassificationError,
    InadmissibleVertexError,
    NonCanonicalError,
    NotSinkOrSourceError,
    NotTameError,
    SearchExhaustedError,
)
from .quiver_core import DimensionVector, _quiver, check_domain, classify, defect, null_root

logger = logging.getLogger(__name__)

TUBE_NAMES = ("Δ", "Δ′", "Δ″")


@dataclasses.dataclass(frozen=True)
class ReflectionSequence:
    steps: Tuple[str, ...] = ()

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)


def is_admissible_sink(qs, x):
    return qs.quiver.is_sink(x) and not qs.joined_to_image(x)


def is_admissible_source(qs, x):
    return qs.quiver.is_source(x) and not qs.joined_to_image(x)


def reflect_dim(q, x, alpha):
    """``c_x(α)``: the entry at ``x`` becomes the sum over neighbours minus itself."""
    q = _quiver(q)
    check_domain(q, alpha)
    if not (q.is_sink(x) or q.is_source(x)):
        raise NotSinkOrSourceError(f"vertex {x!r} is neither a sink nor a source")
    value = sum(alpha[y] for y in q.neighbours(x)) - alpha[x]
    entries = alpha.to_dict()
    entries[x] = value
    return DimensionVector(entries)


def reflect_pair(qs, x):
    """The symmetric quiver ``c_{(x,σx)}Q``; ``x`` must be an admissible sink or source."""
    if not (is_admissible_sink(qs, x) or is_admissible_source(qs, x)):
        raise InadmissibleVertexError(f"{x!r} is not an admissible sink or source")
    return qs.with_quiver(qs.quiver.reflected_at(x, qs.sigma(x)))


def reflect_pair_dim(qs, x, alpha):
    reflected = reflect_pair(qs, x)
    once = reflect_dim(qs.quiver, x, alpha)
    twice = reflect_dim(qs.quiver.reflected_at(x), qs.sigma(x), once)
    return reflected, twice


def apply_sequence(qs, sequence, alpha=None):
    for x in sequence:
        if not is_admissible_sink(qs, x):
            raise InadmissibleVertexError(f"step {x!r} is not an admissible sink")
        if alpha is None:
            qs = reflect_pair(qs, x)
        else:
            qs, alpha = reflect_pair_dim(qs, x, alpha)
    return qs, alpha


def admissible_numbering(q, key=None):
    """Vertices ordered sinks first so that ``ta > ha`` for every arrow.

    ``key`` breaks ties between simultaneous sinks; the default is the vertex order.
    """
    q = _quiver(q)
    key = key or q.index
    outdegree = {x: len(q.outgoing(x)) for x in q.vertices}
    heap = [(key(x), x) for x in q.vertices if outdegree[x] == 0]
    heapq.heapify(heap)
    numbering = []
    while heap:
        _, x = heapq.heappop(heap)
        numbering.append(x)
        for a in q.incoming(x):
            outdegree[a.tail] -= 1
            if outdegree[a.tail] == 0:
                heapq.heappush(heap, (key(a.tail), a.tail))
    return numbering


def coxeter_dim(q, alpha, direction=Direction.PLUS, numbering=None):
    q = _quiver(q)
    check_domain(q, alpha)
    order = list(numbering) if numbering is not None else admissible_numbering(q)
    if direction is Direction.MINUS:
        order.reverse()
    entries = alpha.to_dict()
    for x in order:
        entries[x] = sum(entries[y] for y in q.neighbours(x)) - entries[x]
    return DimensionVector(entries)


def coxeter_matrix(q, direction=Direction.PLUS):
    """Integer matrix ``C`` with ``C @ α`` the Coxeter transform in vertex order."""
    q = _quiver(q)
    n = len(q.vertices)
    result = np.eye(n, dtype=np.int64)
    order = admissible_numbering(q)
    if direction is Direction.MINUS:
        order.reverse()
    for x in order:
        reflection = np.eye(n, dtype=np.int64)
        i = q.index(x)
        reflection[i, i] = -1
        for y in q.neighbours(x):
            reflection[i, q.index(y)] += 1
        result = reflection @ result
    return result


def region_of(q, alpha):
    value = defect(q, alpha)
    if value < 0:
        return Region.PREPROJECTIVE
    if value > 0:
        return Region.PREINJECTIVE
    return Region.REGULAR


def anchor_vertex(qs):
    sources = qs.quiver.sources()
    plain = [x for x in sources if not qs.joined_to_image(x)]
    return (plain or sources)[0]


def is_canonical(qs, tame_type=None):
    tame_type = tame_type or classify(qs)
    q = qs.quiver
    sources, sinks = q.sources(), q.sinks()
    if tame_type.kind is TameKind.A202:
        if len(sources) != 2 or set(sinks) != {qs.sigma(x) for x in sources}:
            return False
        return any(
            qs.is_fixed_arrow(a.id) and {a.tail, a.head} & set(sources) for a in q.arrows
        ) and any(not qs.joined_to_image(x) for x in sources)
    if tame_type.kind.is_a:
        return len(sources) == 1 and sinks == [qs.sigma(sources[0])]
    leaves = {x for x in q.vertices if len(q.incident(x)) == 1}
    if len(sources) != 2 or len(sinks) != 2:
        return False
    if set(sources) | set(sinks) != leaves or set(sinks) != {qs.sigma(x) for x in sources}:
        return False
    return len({q.neighbours(x)[0] for x in sources}) == 1


def reduce_to_canonical(qs, max_states=None):
    """Breadth-first search over orientations for a shortest admissible sequence to canonical form."""
    max_states = max_states or SymQuivConfig.MAX_REDUCTION_STATES
    tame_type = classify(qs)
    if is_canonical(qs, tame_type):
        return ReflectionSequence(()), qs
    seen = {qs.quiver}
    queue = collections.deque([(qs, ())])
    explored = 0
    while queue:
        current, steps = queue.popleft()
        explored += 1
        if explored > max_states:
            break
        moves = sorted(
            (x for x in current.vertices if is_admissible_sink(current, x)),
            key=current.quiver.index,
        )
        for x in moves:
            nxt = reflect_pair(current, x)
            if nxt.quiver in seen:
                continue
            seen.add(nxt.quiver)
            path = steps + (x,)
            if is_canonical(nxt, tame_type):
                logger.info("reduced to canonical form in %d steps (%d states)", len(path), explored)
                return ReflectionSequence(path), nxt
            queue.append((nxt, path))
        logger.debug("frontier %d after %d states", len(queue), explored)
    raise SearchExhaustedError(
        f"no canonical orientation reached after exploring {explored} orientations", explored
    )


@dataclasses.dataclass(frozen=True)
class Tube:
    """One C⁺-orbit of simple regular dimension vectors, indexed 1..period.

    Index ``i`` is the 0-based cyclic position ``i - 1``; ``period + 1`` wraps to 1 and 0 to ``period``.
    """

    name: str
    roots: Tuple[DimensionVector, ...]
    image: str
    # sigma_index[i - 1] is σ_I(i), an index of the tube named ``image``
    sigma_index: Tuple[int, ...]
    plus: frozenset
    fixed: frozenset
    minus: frozenset

    @property
    def period(self):
        return len(self.roots)

    @property
    def self_mapped(self):
        return self.image == self.name

    def wrap(self, i):
        return (i - 1) % self.period + 1

    def e(self, i):
        return self.roots[self.wrap(i) - 1]

    def sigma_I(self, i):
        return self.sigma_index[self.wrap(i) - 1]

    def position(self, vector):
        for i, root in enumerate(self.roots, start=1):
            if root == vector:
                return i
        return None

    def span(self, start, stop):
        length = (stop - start) % self.period + 1
        total = self.e(start)
        for step in range(1, length):
            total = total + self.e(start + step)
        return total


@dataclasses.dataclass(frozen=True)
class TubeData:
    quiver: object
    h: DimensionVector
    tubes: Tuple[Tube, ...]

    def tube(self, name):
        for tube in self.tubes:
            if tube.name == name:
                return tube
        raise KeyError(name)

    def locate(self, vector):
        for tube in self.tubes:
            i = tube.position(vector)
            if i is not None:
                return tube, i
        return None

    def primary_tubes(self):
        seen = set()
        out = []
        for tube in self.tubes:
            if tube.name in seen:
                continue
            seen.update((tube.name, tube.image))
            out.append(tube)
        return out


def _regular_roots(q, h):
    vertices = q.vertices
    euler = np.array([[int(v) for v in row] for row in q.euler_matrix().tolist()], dtype=np.int64)
    h_arr = np.array([h[x] for x in vertices], dtype=np.int64)
    box = np.array(list(itertools.product(*(range(v + 1) for v in h_arr))), dtype=np.int64)
    quad = np.einsum("ij,jk,ik->i", box, euler, box)
    defects = box @ euler.T @ h_arr
    keep = (quad == 1) & (defects == 0)
    keep &= box.any(axis=1) & ~(box == h_arr).all(axis=1)
    return [DimensionVector(zip(vertices, (int(v) for v in row))) for row in box[keep]]


def _orbit(q, root):
    orbit = [root]
    current = coxeter_dim(q, root)
    while current != root:
        orbit.append(current)
        current = coxeter_dim(q, current)
    return orbit


def _support_key(q, vector):
    return tuple(-vector[x] for x in q.vertices)


@functools.lru_cache(maxsize=None)
def tube_data(qs):
    """The C⁺-orbits of simple regular dimension vectors of a canonical orientation."""
    try:
        tame_type = classify(qs)
    except ClassificationError as exc:
        raise NotTameError(str(exc)) from None
    if not is_canonical(qs, tame_type):
        raise NonCanonicalError("orientation is not canonical; reduce it first")
    q = qs.quiver
    h = null_root(q)
    candidates = OrderedSet(_regular_roots(q, h))
    orbits = []
    while candidates:
        orbit = _orbit(q, candidates[0])
        for root in orbit:
            candidates.discard(root)
        total = orbit[0]
        for root in orbit[1:]:
            total = total + root
        if total == h:
            orbits.append(orbit)

    def tube_key(orbit):
        units = [q.index(x) for x in q.vertices if qs.unit(x) in orbit]
        if units:
            return (0, min(units))
        return (1, min(_support_key(q, r) for r in orbit))

    orbits.sort(key=tube_key)
    anchor = anchor_vertex(qs)
    names = {}
    for name, orbit in zip(TUBE_NAMES, orbits):
        for root in orbit:
            names[root] = name
    first = {}
    for name, orbit in zip(TUBE_NAMES, orbits):
        if name in first:
            continue
        image_name = names[qs.delta(orbit[0])]
        if image_name != name:
            e1 = _pick_first(q, orbit, lambda r: r[anchor] > 0)
            first[name] = e1
            first[image_name] = qs.delta(e1)
            continue
        fixed = [r for r in orbit if qs.delta(r) == r]
        if fixed:
            first[name] = _pick_first(q, fixed, lambda r: r[anchor] > 0)
        else:
            turning = [r for r in orbit if coxeter_dim(q, r) == qs.delta(r)]
            first[name] = _pick_first(q, turning or orbit, lambda r: r[anchor] > 0)
    tubes = []
    for name, orbit in zip(TUBE_NAMES, orbits):
        roots = [first[name]]
        while len(roots) < len(orbit):
            roots.append(coxeter_dim(q, roots[-1]))
        tubes.append(roots)
    built = []
    by_name = dict(zip(TUBE_NAMES, tubes))
    for name, roots in by_name.items():
        image = names[qs.delta(roots[0])]
        image_roots = by_name[image]
        sigma_index = tuple(image_roots.index(qs.delta(r)) + 1 for r in roots)
        if image != name:
            primary = TUBE_NAMES.index(name) < TUBE_NAMES.index(image)
            everything = frozenset(range(1, len(roots) + 1))
            plus, fixed, minus = (everything, frozenset(), frozenset())
            if not primary:
                plus, minus = minus, everything
        else:
            fixed = frozenset(i for i, j in enumerate(sigma_index, 1) if i == j)
            plus = frozenset(i for i, j in enumerate(sigma_index, 1) if i < j)
            minus = frozenset(i for i, j in enumerate(sigma_index, 1) if i > j)
        built.append(Tube(name, tuple(roots), image, sigma_index, plus, fixed, minus))
        logger.info("tube %s has period %d", name, len(roots))
    if not tame_type.kind.is_a:
        logger.warning("tube data for %s is computed but not cross-checked against tables", tame_type)
    return TubeData(qs, h, tuple(built))


def _pick_first(q, roots, prefer):
    preferred = [r for r in roots if prefer(r)]
    pool = preferred or list(roots)
    return min(pool, key=lambda r: _support_key(q, r))
