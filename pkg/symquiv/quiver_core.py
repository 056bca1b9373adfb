"""Quivers, symmetric quivers, vertex vectors and the tame classification.

Vertex and arrow ids are strings.  Canonical builders name the image of a vertex ``x`` under
the involution ``"σ(x)"`` and the image of an arrow ``a`` ``"σ(a)"``; the vertex order of a
canonical quiver lists the unprimed vertices first, then their images in the same order.
"""
import collections
import functools
import logging
import math
from typing import NamedTuple, Optional, Tuple

import sympy

from .config import TameKind
from .errors import (
    ClassificationError,
    DomainMismatchError,
    InvalidParametersError,
    MalformedInputError,
    NotTameError,
)
from .linalg import nullspace, to_rational

logger = logging.getLogger(__name__)


def sigma_name(x):
    return f"σ({x})"


class Arrow(NamedTuple):
    id: str
    tail: str
    head: str

    def reversed(self):
        return Arrow(self.id, self.head, self.tail)


class Quiver:
    def __init__(self, vertices, arrows):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise MalformedInputError("duplicate vertex id")
        self.arrows = tuple(a if isinstance(a, Arrow) else Arrow(*a) for a in arrows)
        self._arrow_by_id = {}
        vertex_set = set(self.vertices)
        for a in self.arrows:
            if a.id in self._arrow_by_id:
                raise MalformedInputError(f"duplicate arrow id {a.id!r}")
            if a.tail not in vertex_set or a.head not in vertex_set:
                raise MalformedInputError(f"arrow {a.id!r} has an undeclared endpoint")
            if a.tail == a.head:
                raise MalformedInputError(f"arrow {a.id!r} is a loop")
            self._arrow_by_id[a.id] = a
        self._index = {x: i for i, x in enumerate(self.vertices)}
        self._order = self._topological_order()

    def _topological_order(self):
        indegree = {x: 0 for x in self.vertices}
        for a in self.arrows:
            indegree[a.head] += 1
        queue = collections.deque(x for x in self.vertices if indegree[x] == 0)
        order = []
        while queue:
            x = queue.popleft()
            order.append(x)
            for a in self.outgoing(x):
                indegree[a.head] -= 1
                if indegree[a.head] == 0:
                    queue.append(a.head)
        if len(order) != len(self.vertices):
            raise MalformedInputError("quiver has an oriented cycle")
        return tuple(order)

    def __eq__(self, other):
        return (
            isinstance(other, Quiver)
            and self.vertices == other.vertices
            and set(self.arrows) == set(other.arrows)
        )

    def __hash__(self):
        return hash((self.vertices, frozenset(self.arrows)))

    def __repr__(self):
        return f"Quiver(vertices={list(self.vertices)}, arrows={[tuple(a) for a in self.arrows]})"

    def index(self, x):
        try:
            return self._index[x]
        except KeyError:
            raise DomainMismatchError(f"unknown vertex {x!r}") from None

    def arrow(self, arrow_id):
        try:
            return self._arrow_by_id[arrow_id]
        except KeyError:
            raise DomainMismatchError(f"unknown arrow {arrow_id!r}") from None

    def has_vertex(self, x):
        return x in self._index

    def incoming(self, x):
        return [a for a in self.arrows if a.head == x]

    def outgoing(self, x):
        return [a for a in self.arrows if a.tail == x]

    def incident(self, x):
        return [a for a in self.arrows if x in (a.tail, a.head)]

    def neighbours(self, x):
        self.index(x)
        return [a.tail if a.head == x else a.head for a in self.incident(x)]

    def is_sink(self, x):
        self.index(x)
        return not self.outgoing(x)

    def is_source(self, x):
        self.index(x)
        return not self.incoming(x)

    def sinks(self):
        return [x for x in self.vertices if not self.outgoing(x)]

    def sources(self):
        return [x for x in self.vertices if not self.incoming(x)]

    def topological_order(self):
        return self._order

    def reflected_at(self, *xs):
        marked = set(xs)
        for x in marked:
            self.index(x)
        arrows = [a.reversed() if (a.tail in marked or a.head in marked) else a for a in self.arrows]
        return Quiver(self.vertices, arrows)

    def is_connected(self):
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            x = stack.pop()
            for y in self.neighbours(x):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(self.vertices)

    def euler_matrix(self):
        """``E`` with ``<α, β> = αᵀ E β`` in vertex order."""
        n = len(self.vertices)
        matrix = sympy.eye(n)
        for a in self.arrows:
            matrix[self._index[a.tail], self._index[a.head]] -= 1
        return matrix

    def count_paths(self):
        """``paths[x][y]`` is the number of paths from ``x`` to ``y`` (trivial path included)."""
        counts = {}
        for x in reversed(self._order):
            row = {y: 0 for y in self.vertices}
            row[x] = 1
            for a in self.outgoing(x):
                for y, c in counts[a.head].items():
                    row[y] += c
            counts[x] = row
        return counts


def _quiver(q):
    return getattr(q, "quiver", q)


class VertexVector:
    def __init__(self, entries):
        self._entries = {str(k): self._coerce(v) for k, v in dict(entries).items()}

    @staticmethod
    def _coerce(value):
        return to_rational(value)

    @classmethod
    def from_sequence(cls, vertices, values):
        values = list(values)
        if len(values) != len(vertices):
            raise DomainMismatchError(f"expected {len(vertices)} entries, got {len(values)}")
        return cls(zip(vertices, values))

    @classmethod
    def zero(cls, vertices):
        return cls((x, 0) for x in vertices)

    @classmethod
    def unit(cls, vertices, x):
        if x not in vertices:
            raise DomainMismatchError(f"unknown vertex {x!r}")
        return cls((y, 1 if y == x else 0) for y in vertices)

    def __getitem__(self, x):
        try:
            return self._entries[x]
        except KeyError:
            raise DomainMismatchError(f"vector is not defined at {x!r}") from None

    def get(self, x, default=0):
        return self._entries.get(x, default)

    def keys(self):
        return self._entries.keys()

    def items(self):
        return self._entries.items()

    def values(self):
        return self._entries.values()

    def __iter__(self):
        return iter(self._entries)

    def __len__(self):
        return len(self._entries)

    def __eq__(self, other):
        if not isinstance(other, VertexVector):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self):
        return hash(frozenset(self._entries.items()))

    def _check_same_domain(self, other):
        if set(self._entries) != set(other._entries):
            raise DomainMismatchError("vectors live on different vertex sets")

    def __add__(self, other):
        self._check_same_domain(other)
        return type(self)((x, v + other[x]) for x, v in self.items())

    def __sub__(self, other):
        self._check_same_domain(other)
        return type(self)((x, v - other[x]) for x, v in self.items())

    def __neg__(self):
        return type(self)((x, -v) for x, v in self.items())

    def __mul__(self, scalar):
        return type(self)((x, v * scalar) for x, v in self.items())

    __rmul__ = __mul__

    def dot(self, other):
        self._check_same_domain(other)
        return sum((v * other[x] for x, v in self.items()), sympy.Integer(0))

    def support(self):
        return [x for x, v in self.items() if v != 0]

    def is_zero(self):
        return all(v == 0 for v in self.values())

    def is_nonnegative(self):
        return all(v >= 0 for v in self.values())

    def as_tuple(self, order=None):
        order = order if order is not None else list(self._entries)
        return tuple(self[x] for x in order)

    def to_dict(self):
        return dict(self._entries)

    def format(self, order=None):
        return "(" + ",".join(str(v) for v in self.as_tuple(order)) + ")"

    def __repr__(self):
        body = ", ".join(f"{x}: {v}" for x, v in self.items())
        return f"{type(self).__name__}({{{body}}})"


class DimensionVector(VertexVector):
    """Integer vertex vector.  Intermediate reflection results may carry negative entries."""

    @staticmethod
    def _coerce(value):
        value = to_rational(value)
        if value.q != 1:
            raise MalformedInputError(f"dimension entries must be integers, got {value}")
        return int(value)

    def __mul__(self, scalar):
        return DimensionVector((x, v * int(scalar)) for x, v in self.items())

    __rmul__ = __mul__

    def total(self):
        return sum(self.values())


class Weight(VertexVector):
    """Rational vertex vector; weights of Pfaffian semi-invariants have half-integer entries."""

    def is_half_integral(self):
        return all((2 * v).q == 1 for v in self.values())


def check_domain(q, vector):
    vertices = _quiver(q).vertices
    if set(vector.keys()) != set(vertices):
        raise DomainMismatchError(
            f"vector defined on {sorted(vector.keys())}, quiver has {sorted(vertices)}"
        )


def euler_form(q, alpha, beta):
    q = _quiver(q)
    check_domain(q, alpha)
    check_domain(q, beta)
    value = sum(alpha[x] * beta[x] for x in q.vertices)
    value -= sum(alpha[a.tail] * beta[a.head] for a in q.arrows)
    return value


def quadratic_form(q, alpha):
    return euler_form(q, alpha, alpha)


@functools.lru_cache(maxsize=None)
def _null_root(quiver):
    euler = quiver.euler_matrix()
    symmetric = euler + euler.T
    kernel = nullspace(symmetric)
    if len(kernel) != 1:
        raise NotTameError(f"radical of the quadratic form has rank {len(kernel)}, expected 1")
    vector = kernel[0]
    denominators = [sympy.Rational(v).q for v in vector]
    scale = functools.reduce(lambda a, b: a * b // math.gcd(a, b), denominators, 1)
    ints = [int(v * scale) for v in vector]
    divisor = functools.reduce(math.gcd, (abs(v) for v in ints), 0)
    ints = [v // divisor for v in ints]
    if all(v < 0 for v in ints):
        ints = [-v for v in ints]
    if not all(v > 0 for v in ints):
        raise NotTameError("radical is not spanned by a sincere positive vector")
    return DimensionVector.from_sequence(quiver.vertices, ints)


def null_root(q):
    """The primitive positive generator ``h`` of the radical of the quadratic form."""
    return _null_root(_quiver(q))


def defect(q, alpha):
    return euler_form(q, null_root(q), alpha)


def projective_dim(q, x):
    q = _quiver(q)
    q.index(x)
    paths = q.count_paths()
    return DimensionVector((y, paths[x][y]) for y in q.vertices)


def injective_dim(q, x):
    q = _quiver(q)
    q.index(x)
    paths = q.count_paths()
    return DimensionVector((y, paths[y][x]) for y in q.vertices)


def delta(qs, alpha):
    return qs.delta(alpha)


class SymmetricQuiver:
    """A quiver with a contravariant involution on vertices and arrows.

    The constructor validates the involution axioms and computes the partitions of
    vertices and arrows into plus, fixed and minus parts.
    """

    def __init__(self, quiver, sigma_v, sigma_a):
        self.quiver = quiver
        self.sigma_v = {str(k): str(v) for k, v in dict(sigma_v).items()}
        self.sigma_a = {str(k): str(v) for k, v in dict(sigma_a).items()}
        self._validate()
        self._partition()

    def _validate(self):
        q = self.quiver
        if set(self.sigma_v) != set(q.vertices):
            raise MalformedInputError("sigma must be defined on every vertex")
        if set(self.sigma_a) != {a.id for a in q.arrows}:
            raise MalformedInputError("sigma must be defined on every arrow")
        for x, y in self.sigma_v.items():
            if y not in self.sigma_v or self.sigma_v[y] != x:
                raise MalformedInputError(f"sigma is not an involution at vertex {x!r}")
        for a in q.arrows:
            image_id = self.sigma_a[a.id]
            if image_id not in self.sigma_a or self.sigma_a[image_id] != a.id:
                raise MalformedInputError(f"sigma is not an involution at arrow {a.id!r}")
            image = q.arrow(image_id)
            if image.tail != self.sigma_v[a.head] or image.head != self.sigma_v[a.tail]:
                raise MalformedInputError(f"sigma does not reverse arrow {a.id!r}")
            if self.sigma_v[a.tail] == a.head and image_id != a.id:
                raise MalformedInputError(f"arrow {a.id!r} joins x and σ(x) but is not fixed")

    def _partition(self):
        q = self.quiver
        fixed = [x for x in q.vertices if self.sigma_v[x] == x]
        loose = [x for x in q.vertices if self.sigma_v[x] != x]
        parent = {x: x for x in loose}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in q.arrows:
            if self.sigma_a[a.id] != a.id and a.tail in parent and a.head in parent:
                ra, rb = find(a.tail), find(a.head)
                if ra != rb:
                    parent[max(ra, rb, key=q.index)] = min(ra, rb, key=q.index)
        components = collections.OrderedDict()
        for x in loose:
            components.setdefault(find(x), []).append(x)
        plus = set()
        minus = set()
        self.partition_ok = True
        for members in components.values():
            if members[0] in plus or members[0] in minus:
                continue
            images = {self.sigma_v[x] for x in members}
            if images.isdisjoint(members):
                plus.update(members)
                minus.update(images)
            else:
                # a σ-stable component: split greedily in vertex order
                self.partition_ok = False
                for x in members:
                    if x not in plus and x not in minus:
                        plus.add(x)
                        minus.add(self.sigma_v[x])
        self.plus_vertices = tuple(x for x in q.vertices if x in plus)
        self.fixed_vertices = tuple(fixed)
        self.minus_vertices = tuple(x for x in q.vertices if x in minus)
        plus_arrows, fixed_arrows, minus_arrows = [], [], []
        assigned = set()
        for a in q.arrows:
            image = self.sigma_a[a.id]
            if image == a.id:
                fixed_arrows.append(a.id)
                continue
            if a.id in assigned:
                continue
            b = q.arrow(image)
            touches_plus = a.tail in plus or a.head in plus
            image_touches_plus = b.tail in plus or b.head in plus
            if image_touches_plus and not touches_plus:
                a, b = b, a
            plus_arrows.append(a.id)
            minus_arrows.append(b.id)
            assigned.update((a.id, b.id))
        order = {a.id: i for i, a in enumerate(q.arrows)}
        self.plus_arrows = tuple(sorted(plus_arrows, key=order.get))
        self.fixed_arrows = tuple(fixed_arrows)
        self.minus_arrows = tuple(sorted(minus_arrows, key=order.get))

    @property
    def vertices(self):
        return self.quiver.vertices

    @property
    def arrows(self):
        return self.quiver.arrows

    def arrow(self, arrow_id):
        return self.quiver.arrow(arrow_id)

    def sigma(self, x):
        try:
            return self.sigma_v[x]
        except KeyError:
            raise DomainMismatchError(f"unknown vertex {x!r}") from None

    def sigma_arrow(self, arrow_id):
        try:
            return self.sigma_a[arrow_id]
        except KeyError:
            raise DomainMismatchError(f"unknown arrow {arrow_id!r}") from None

    def is_fixed_vertex(self, x):
        return self.sigma(x) == x

    def is_fixed_arrow(self, arrow_id):
        return self.sigma_arrow(arrow_id) == arrow_id

    def delta(self, alpha):
        check_domain(self.quiver, alpha)
        return type(alpha)((x, alpha[self.sigma_v[x]]) for x in self.vertices)

    def is_symmetric(self, alpha):
        return self.delta(alpha) == alpha

    def joined_to_image(self, x):
        y = self.sigma(x)
        return any({a.tail, a.head} == {x, y} for a in self.arrows) if x != y else False

    def with_quiver(self, quiver):
        return SymmetricQuiver(quiver, self.sigma_v, self.sigma_a)

    def vector(self, values):
        if isinstance(values, VertexVector):
            check_domain(self.quiver, values)
            return values
        if isinstance(values, dict):
            vector = DimensionVector(values)
        else:
            vector = DimensionVector.from_sequence(self.vertices, values)
        check_domain(self.quiver, vector)
        return vector

    def unit(self, x):
        return DimensionVector.unit(self.vertices, x)

    def __eq__(self, other):
        return (
            isinstance(other, SymmetricQuiver)
            and self.quiver == other.quiver
            and self.sigma_v == other.sigma_v
            and self.sigma_a == other.sigma_a
        )

    def __hash__(self):
        return hash((self.quiver, frozenset(self.sigma_v.items())))

    def __repr__(self):
        return f"SymmetricQuiver({self.quiver!r}, sigma_v={self.sigma_v}, sigma_a={self.sigma_a})"


class TameType(NamedTuple):
    kind: TameKind
    params: Tuple[int, ...]
    # (s, t, k, l) for the Ã family, None for D̃
    type_tuple: Optional[Tuple[int, int, int, int]] = None

    def __str__(self):
        if self.kind.is_a:
            return f"{self.kind.label}_{{{self.params[0]},{self.params[1]}}}"
        return f"{self.kind.label}_{{{self.params[0]}}}"


class _Builder:
    def __init__(self):
        self.plus = []
        self.fixed = []
        self.arrows = []
        self.arrow_images = []
        self.fixed_arrows = []

    def vertex(self, x, fixed=False):
        (self.fixed if fixed else self.plus).append(x)
        return x

    def image(self, x):
        if x in self.fixed:
            return x
        if x in self.plus:
            return sigma_name(x)
        return next(y for y in self.plus if sigma_name(y) == x)

    def arrow(self, name, tail, head):
        self.arrows.append(Arrow(name, tail, head))
        self.arrow_images.append(Arrow(sigma_name(name), self.image(head), self.image(tail)))

    def fixed_arrow(self, name, tail, head):
        self.fixed_arrows.append(Arrow(name, tail, head))

    def build(self, order):
        minus = [sigma_name(x) for x in self.plus]
        vertices = [x for x in order] + minus
        sigma_v = {x: x for x in self.fixed}
        for x in self.plus:
            sigma_v[x] = sigma_name(x)
            sigma_v[sigma_name(x)] = x
        arrows = self.arrows + self.fixed_arrows + self.arrow_images
        sigma_a = {a.id: a.id for a in self.fixed_arrows}
        for a, b in zip(self.arrows, self.arrow_images):
            sigma_a[a.id] = b.id
            sigma_a[b.id] = a.id
        return SymmetricQuiver(Quiver(vertices, arrows), sigma_v, sigma_a)


def _require_even(name, value, minimum):
    if value < minimum or value % 2:
        raise InvalidParametersError(f"{name} must be even and at least {minimum}, got {value}")


def _path(builder, first, names, prefix, single_name=None):
    previous = first
    for i, x in enumerate(names, start=1):
        name = single_name if (single_name and len(names) == 1) else f"{prefix}{i}"
        builder.arrow(name, previous, x)
        previous = x
    return previous


def _build_a11(k, l):
    _require_even("k", k, 0)
    _require_even("l", l, 2)
    b = _Builder()
    half = l // 2
    b.vertex("1")
    upper = [b.vertex(str(i)) for i in range(2, half + 1)]
    top = b.vertex(str(half + 1), fixed=True)
    lower = [b.vertex(str(half + 1 + i)) for i in range(1, k // 2 + 1)]
    _path(b, "1", upper + [top], "v", single_name="a")
    tb = _path(b, "1", lower, "u")
    b.fixed_arrow("b", tb, sigma_name(tb))
    return b.build(["1"] + upper + [top] + lower)


def _build_a02(k, l):
    _require_even("k", k, 2)
    _require_even("l", l, 2)
    k, l = min(k, l), max(k, l)
    b = _Builder()
    half = l // 2
    b.vertex("1")
    upper = [b.vertex(str(i)) for i in range(2, half + 1)]
    top = b.vertex(str(half + 1), fixed=True)
    lower = [b.vertex(str(half + 1 + i)) for i in range(1, k // 2)]
    bottom = b.vertex(str(half + k // 2 + 1), fixed=True)
    _path(b, "1", upper + [top], "v")
    _path(b, "1", lower + [bottom], "u")
    return b.build(["1"] + upper + [top] + lower + [bottom])


def _build_a20(k, l, second):
    if second:
        _require_even("k", k, 2)
        _require_even("l", l, 0)
    else:
        _require_even("k", k, 0)
        _require_even("l", l, 0)
        k, l = min(k, l), max(k, l)
        if k + l < 2:
            raise InvalidParametersError("k + l must be at least 2")
    b = _Builder()
    b.vertex("1")
    upper = [b.vertex(str(i)) for i in range(2, l // 2 + 2)]
    lower = [b.vertex(str(l // 2 + 1 + i)) for i in range(1, k // 2 + 1)]
    top = _path(b, "1", upper, "v")
    bottom = _path(b, "1", lower, "u")
    b.fixed_arrow("c", top, sigma_name(top))
    if second:
        b.fixed_arrow("b", sigma_name(bottom), bottom)
    else:
        b.fixed_arrow("b", bottom, sigma_name(bottom))
    return b.build(["1"] + upper + lower)


def _build_a00(k):
    _require_even("k", k, 4)
    b = _Builder()
    half = k // 2
    left = [b.vertex(str(i)) for i in range(1, half + 1)]
    # the last arrow of the left path ends at σ(1)
    for i in range(1, half):
        b.arrow(f"v{i}", left[i - 1], left[i])
    b.arrow(f"v{half}", left[-1], sigma_name("1"))
    return b.build(left)


def _build_d(n):
    if n < 4:
        raise InvalidParametersError(f"D̃_n needs n >= 4, got {n}")
    interior = n - 3
    half = interior // 2
    b = _Builder()
    leaves = [b.vertex("y1"), b.vertex("y2")]
    path = [b.vertex(f"x{i}") for i in range(1, half + 1)]
    centre = b.vertex(f"x{half + 1}", fixed=True) if interior % 2 else None
    first = path[0] if path else centre
    b.arrow("l1", leaves[0], first)
    b.arrow("l2", leaves[1], first)
    for i in range(1, half):
        b.arrow(f"e{i}", path[i - 1], path[i])
    if centre is not None:
        if path:
            b.arrow(f"e{half}", path[-1], centre)
    else:
        b.fixed_arrow("b", path[-1], sigma_name(path[-1]))
    return b.build(leaves + path + ([centre] if centre else []))


def build_canonical(kind, *params):
    """Construct the canonical orientation of a tame symmetric shape.

    Ã shapes take ``(k, l)``; Ã^{0,0} takes the vertex count ``k``; D̃ takes ``n`` for D̃_n.
    """
    kind = kind if isinstance(kind, TameKind) else TameKind(kind)
    try:
        params = tuple(int(p) for p in params)
    except (TypeError, ValueError):
        raise InvalidParametersError(f"parameters must be integers: {params!r}") from None
    expected = 1 if kind in (TameKind.A00, TameKind.D10, TameKind.D01) else 2
    if len(params) != expected:
        raise InvalidParametersError(f"{kind.label} takes {expected} parameter(s), got {len(params)}")
    if kind is TameKind.A11:
        return _build_a11(*params)
    if kind is TameKind.A02:
        return _build_a02(*params)
    if kind is TameKind.A201:
        return _build_a20(*params, second=False)
    if kind is TameKind.A202:
        return _build_a20(*params, second=True)
    if kind is TameKind.A00:
        return _build_a00(*params)
    n = params[0]
    if kind is TameKind.D10 and n % 2 == 0:
        raise InvalidParametersError("D̃^{1,0} needs an odd n (an even number of path vertices)")
    if kind is TameKind.D01 and n % 2 == 1:
        raise InvalidParametersError("D̃^{0,1} needs an even n (an odd number of path vertices)")
    return _build_d(n)


def build_equioriented_d(n):
    """The equioriented D̃_n; σ fixes the middle vertex or the middle arrow by parity of n."""
    return build_canonical(TameKind.D01 if n % 2 == 0 else TameKind.D10, n)


def _cycle_walk(qs, start_arrow):
    q = qs.quiver
    walk = []
    current = start_arrow.head
    walk.append((start_arrow, True))
    used = {start_arrow.id}
    while len(walk) < len(q.arrows):
        step = next(a for a in q.incident(current) if a.id not in used)
        forward = step.tail == current
        walk.append((step, forward))
        used.add(step.id)
        current = step.head if forward else step.tail
    return walk


def classify(qs):
    """Name the tame shape of a symmetric quiver, with its (s, t, k, l) type for Ã."""
    q = qs.quiver
    if not q.is_connected():
        raise ClassificationError("quiver is not connected")
    try:
        h = null_root(q)
    except NotTameError as exc:
        raise ClassificationError(f"not of tame type: {exc}") from None
    s = len(qs.fixed_arrows)
    t = len(qs.fixed_vertices)
    if len(q.arrows) == len(q.vertices) and all(len(q.incident(x)) == 2 for x in q.vertices):
        return _classify_cycle(qs, s, t)
    if len(q.arrows) == len(q.vertices) - 1:
        leaves = [x for x in q.vertices if len(q.incident(x)) == 1]
        if len(leaves) == 4 and sorted(h.values()) == [1] * 4 + [2] * (len(q.vertices) - 4):
            n = len(q.vertices) - 1
            if (s, t) == (1, 0):
                return TameType(TameKind.D10, (n,))
            if (s, t) == (0, 1):
                return TameType(TameKind.D01, (n,))
            raise ClassificationError(f"D̃ graph with {s} fixed arrows and {t} fixed vertices")
    raise ClassificationError("tame graph of type Ẽ has no symmetric structure of tame type")


def _classify_cycle(qs, s, t):
    q = qs.quiver
    walk = _cycle_walk(qs, q.arrows[0])

    def counts(steps):
        ccw = sum(1 for a, fwd in steps if not fwd and not qs.is_fixed_arrow(a.id))
        cw = sum(1 for a, fwd in steps if fwd and not qs.is_fixed_arrow(a.id))
        return ccw, cw

    k, l = counts(walk)
    fixed_directions = [fwd for a, fwd in walk if qs.is_fixed_arrow(a.id)]
    if (s, t) == (1, 1):
        if fixed_directions[0]:
            k, l = l, k
        kind = TameKind.A11
    elif (s, t) == (0, 2):
        kind = TameKind.A02
        k, l = min(k, l), max(k, l)
    elif (s, t) == (2, 0):
        if fixed_directions[0] == fixed_directions[1]:
            kind = TameKind.A202
            if not fixed_directions[0]:
                k, l = l, k
        else:
            kind = TameKind.A201
            k, l = min(k, l), max(k, l)
    elif (s, t) == (0, 0):
        kind = TameKind.A00
        if k != l:
            raise ClassificationError("central symmetry needs equal clockwise and counterclockwise counts")
    else:
        raise ClassificationError(f"Ã graph with {s} fixed arrows and {t} fixed vertices")
    if kind is not TameKind.A00 and (k % 2 or l % 2):
        raise ClassificationError(f"k and l have to be even, got k={k}, l={l}")
    type_tuple = (s, t, k, l)
    params = (k + l,) if kind is TameKind.A00 else (k, l)
    try:
        build_canonical(kind, *params)
    except InvalidParametersError as exc:
        raise ClassificationError(f"{kind.label} with (k, l) = ({k}, {l}): {exc}") from None
    logger.debug("classified %s as type %s", kind.label, type_tuple)
    return TameType(kind, params, type_tuple)
