"""Projective presentations and the determinant/Pfaffian semi-invariants they define.

A presentation ``d: ⊕ P_{rows} -> ⊕ P_{cols}`` stores for every (row, col) a rational
combination of paths from the column vertex to the row vertex.  Paths are tuples of arrow ids in
traversal order; ``()`` is the trivial path.
"""
import collections
import dataclasses
import logging
from typing import Dict, Tuple

import numpy as np
import sympy

from .config import Flavor, SymQuivConfig
from .errors import NonSquareError, SkewSymmetryError
from .linalg import block_diag, det, is_zero, pfaffian, zeros
from .quiver_core import Weight, _quiver, euler_form
from .representations import FormSpace, FormStructure, Representation

logger = logging.getLogger(__name__)


def _path_key(path):
    return (len(path), path)


def _clean(combination):
    return {p: c for p, c in combination.items() if c != 0}


def _compose(first, second):
    out = collections.defaultdict(lambda: sympy.Integer(0))
    for p, c in first.items():
        for r, d in second.items():
            out[p + r] += c * d
    return dict(out)


@dataclasses.dataclass(frozen=True)
class ProjectivePresentation:
    quiver: object
    rows: Tuple[str, ...]
    cols: Tuple[str, ...]
    entries: Dict[Tuple[int, int], Dict[Tuple[str, ...], sympy.Rational]]

    def entry(self, r, c):
        return self.entries.get((r, c), {})

    @property
    def shape(self):
        return len(self.rows), len(self.cols)

    def is_empty(self):
        return not self.rows and not self.cols

    def paths(self):
        return sorted({p for e in self.entries.values() for p in e}, key=_path_key)

    def empty_columns(self):
        used = {c for (_, c), e in self.entries.items() if e}
        return [c for c in range(len(self.cols)) if c not in used]

    def cokernel_dim(self):
        q = _quiver(self.quiver)
        total = collections.Counter()
        for x in self.cols:
            for y, n in _projective_counts(q, x).items():
                total[y] += n
        for y0 in self.rows:
            for y, n in _projective_counts(q, y0).items():
                total[y] -= n
        return {y: total[y] for y in q.vertices}

    def describe(self):
        lines = []
        for (r, c), combination in sorted(self.entries.items()):
            terms = []
            for path, coeff in sorted(combination.items(), key=lambda t: _path_key(t[0])):
                word = "·".join(reversed(path)) if path else f"e_{self.cols[c]}"
                terms.append(word if coeff == 1 else f"{coeff}*{word}")
            lines.append(f"[{self.rows[r]},{self.cols[c]}] " + " + ".join(terms))
        return lines


def _projective_counts(q, x):
    return q.count_paths()[x]


def canonical_presentation(V):
    """``d(v ⊗ e_{ha}) = V(a)v ⊗ e_{ha} - v ⊗ a`` for every arrow and basis vector."""
    q = V.quiver
    cols = []
    col_index = {}
    for x in q.vertices:
        for i in range(V.dim[x]):
            col_index[(x, i)] = len(cols)
            cols.append(x)
    rows = []
    entries = {}
    for a in q.arrows:
        matrix = V.mats[a.id]
        for i in range(V.dim[a.tail]):
            r = len(rows)
            rows.append(a.head)
            for j in range(V.dim[a.head]):
                if matrix[j, i] != 0:
                    entries[(r, col_index[(a.head, j)])] = {(): sympy.Rational(matrix[j, i])}
            entries[(r, col_index[(a.tail, i)])] = {(a.id,): sympy.Integer(-1)}
    return ProjectivePresentation(q, tuple(rows), tuple(cols), entries)


def minimal_presentation(V):
    """Cancel every invertible scalar entry of the canonical presentation, then normalize rows."""
    return reduce_presentation(canonical_presentation(V))


def reduce_presentation(presentation):
    rows = list(presentation.rows)
    cols = list(presentation.cols)
    matrix = {k: dict(v) for k, v in presentation.entries.items() if v}
    row_ids = list(range(len(rows)))
    col_ids = list(range(len(cols)))
    while True:
        pivot = None
        for r in row_ids:
            for c in col_ids:
                e = matrix.get((r, c))
                if e and rows[r] == cols[c] and e.get((), 0) != 0:
                    pivot = (r, c)
                    break
            if pivot:
                break
        if pivot is None:
            break
        r0, c0 = pivot
        inv = 1 / matrix[(r0, c0)][()]
        logger.debug("cancelling P_%s at (%d, %d)", rows[r0], r0, c0)
        for r in row_ids:
            if r == r0 or not matrix.get((r, c0)):
                continue
            left = matrix[(r, c0)]
            for c in col_ids:
                if c == c0 or not matrix.get((r0, c)):
                    continue
                update = _compose(matrix[(r0, c)], left)
                current = collections.defaultdict(lambda: sympy.Integer(0), matrix.get((r, c), {}))
                for p, v in update.items():
                    current[p] -= inv * v
                cleaned = _clean(current)
                if cleaned:
                    matrix[(r, c)] = cleaned
                else:
                    matrix.pop((r, c), None)
        row_ids.remove(r0)
        col_ids.remove(c0)
        matrix = {k: v for k, v in matrix.items() if k[0] != r0 and k[1] != c0}
    row_map = {r: n for n, r in enumerate(row_ids)}
    col_map = {c: n for n, c in enumerate(col_ids)}
    entries = {}
    for r in row_ids:
        row_entries = [(c, matrix[(r, c)]) for c in col_ids if matrix.get((r, c))]
        if not row_entries:
            continue
        _, first = row_entries[0]
        lead = first[min(first, key=_path_key)]
        for c, combination in row_entries:
            entries[(row_map[r], col_map[c])] = {p: v / lead for p, v in combination.items()}
    return ProjectivePresentation(
        presentation.quiver,
        tuple(rows[r] for r in row_ids),
        tuple(cols[c] for c in col_ids),
        entries,
    )


def hom_matrix(presentation, W):
    """Block matrix of ``Hom(d, W)``; the path ``a_k…a_1`` evaluates to ``W(a_k)···W(a_1)``."""
    row_sizes = [W.dim[y] for y in presentation.rows]
    col_sizes = [W.dim[x] for x in presentation.cols]
    out = zeros(sum(row_sizes), sum(col_sizes))
    row_offsets = np.concatenate(([0], np.cumsum(row_sizes, dtype=np.int64))).tolist()
    col_offsets = np.concatenate(([0], np.cumsum(col_sizes, dtype=np.int64))).tolist()
    for (r, c), combination in presentation.entries.items():
        if not row_sizes[r] or not col_sizes[c]:
            continue
        block = zeros(row_sizes[r], col_sizes[c])
        for path, coeff in combination.items():
            block += coeff * W.evaluate_path(path, presentation.cols[c])
        out[row_offsets[r]:row_offsets[r + 1], col_offsets[c]:col_offsets[c + 1]] = block
    return out


@dataclasses.dataclass(frozen=True)
class SemiInvariantValue:
    value: object
    kind: str
    degenerate: bool = False


def det_from_presentation(presentation, W):
    if presentation.empty_columns():
        return SemiInvariantValue(sympy.Integer(0), "det", degenerate=True)
    matrix = hom_matrix(presentation, W)
    if matrix.rows != matrix.cols:
        raise NonSquareError(f"Hom matrix has shape {matrix.rows}x{matrix.cols}")
    return SemiInvariantValue(det(matrix), "det")


def c_eval(V, W):
    """Schofield semi-invariant ``c^V(W)``; requires ``<dim V, dim W> = 0``."""
    pairing = euler_form(V.quiver, V.dim, W.dim)
    if pairing != 0:
        raise NonSquareError(f"<dim V, dim W> = {pairing}, the Hom matrix is not square")
    return det_from_presentation(minimal_presentation(V), W)


def _pair_rows(qs, presentation):
    remaining = list(range(len(presentation.rows)))
    order = []
    for x in presentation.cols:
        target = qs.sigma(x)
        match = next((r for r in remaining if presentation.rows[r] == target), None)
        if match is None:
            raise SkewSymmetryError(f"no P_1 summand matches σ(P_{x})")
        remaining.remove(match)
        order.append(match)
    if remaining:
        raise SkewSymmetryError("P_1 and σ(P_0) have different summands")
    return order


def _block(matrix, rs, cs, t, u):
    return matrix[rs[t]:rs[t + 1], cs[u]:cs[u + 1]]


def _block_signs(n_sample, offsets, count):
    relations = collections.defaultdict(list)
    for t in range(count):
        for u in range(t, count):
            ntu = _block(n_sample, offsets, offsets, t, u)
            nut = _block(n_sample, offsets, offsets, u, t)
            if is_zero(ntu) and is_zero(nut):
                continue
            if is_zero(ntu + nut.T):
                same = True
            elif is_zero(ntu - nut.T) and t != u:
                same = False
            else:
                raise SkewSymmetryError(f"blocks ({t}, {u}) are neither skew nor symmetric partners")
            relations[t].append((u, same))
            relations[u].append((t, same))
    signs = {}
    for start in range(count):
        if start in signs:
            continue
        signs[start] = 1
        stack = [start]
        while stack:
            t = stack.pop()
            for u, same in relations[t]:
                wanted = signs[t] if same else -signs[t]
                if u in signs:
                    if signs[u] != wanted:
                        raise SkewSymmetryError("block signs cannot be made consistent")
                else:
                    signs[u] = wanted
                    stack.append(u)
    return [signs[t] for t in range(count)]


def pf_from_presentation(qs, presentation, W, flavor, seed=SymQuivConfig.DEFAULT_SEED):
    """Pfaffian of ``Hom(d, W)`` after pairing ``P_1`` with ``σ(P_0)`` through the normalized form."""
    form = FormStructure(qs, flavor)
    if presentation.empty_columns():
        return SemiInvariantValue(sympy.Integer(0), "pf", degenerate=True)
    order = _pair_rows(qs, presentation)
    reordered = ProjectivePresentation(
        presentation.quiver,
        tuple(presentation.rows[r] for r in order),
        presentation.cols,
        {
            (order.index(r), c): e
            for (r, c), e in presentation.entries.items()
        },
    )
    sizes = [W.dim[x] for x in reordered.cols]
    offsets = np.concatenate(([0], np.cumsum(sizes, dtype=np.int64))).tolist()
    gram = block_diag([form.gram(x, W.dim[x]) for x in reordered.cols])

    sample = FormSpace(qs, W.dim, form.flavor).random_point(np.random.default_rng(seed))
    n_sample = gram * hom_matrix(reordered, sample)
    signs = _block_signs(n_sample, offsets, len(sizes))
    sign_matrix = block_diag([s * sympy.eye(n) for s, n in zip(signs, sizes)])
    matrix = sign_matrix * gram * hom_matrix(reordered, W)
    if not is_zero(matrix + matrix.T):
        raise SkewSymmetryError("Hom matrix is not skew-symmetric after identification")
    return SemiInvariantValue(pfaffian(matrix), "pf")


def pf_eval(qs, V, W, flavor, seed=SymQuivConfig.DEFAULT_SEED):
    pairing = euler_form(V.quiver, V.dim, W.dim)
    if pairing != 0:
        raise NonSquareError(f"<dim V, dim W> = {pairing}, the Hom matrix is not square")
    return pf_from_presentation(qs, minimal_presentation(V), W, flavor, seed)


def weight_of(qs, V, flavor=Flavor.PLAIN, pf=False):
    """``<α, ·>`` with the fixed-vertex entries removed; halved for Pfaffian semi-invariants."""
    alpha = V.dim if isinstance(V, Representation) else V
    entries = {}
    for y in qs.vertices:
        if y in qs.fixed_vertices and Flavor.parse(flavor) is not Flavor.PLAIN:
            entries[y] = 0
            continue
        entries[y] = euler_form(qs, alpha, qs.unit(y))
    weight = Weight(entries)
    return weight * sympy.Rational(1, 2) if pf else weight


def pairing_weight(qs, V):
    alpha = V.dim if isinstance(V, Representation) else V
    return Weight((y, euler_form(qs, alpha, qs.unit(y))) for y in qs.vertices)
