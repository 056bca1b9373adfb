import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symquiv.config import Direction, Region, TameKind
from symquiv.errors import InadmissibleVertexError, NonCanonicalError, NotSinkOrSourceError
from symquiv.quiver_core import build_canonical, classify, injective_dim, null_root, projective_dim, quadratic_form
from symquiv.reflections import (
    ReflectionSequence,
    admissible_numbering,
    apply_sequence,
    coxeter_dim,
    coxeter_matrix,
    is_admissible_sink,
    is_canonical,
    reduce_to_canonical,
    reflect_dim,
    reflect_pair,
    reflect_pair_dim,
    region_of,
    tube_data,
)


@pytest.fixture(scope='session')
def a11_22():
    return build_canonical(TameKind.A11, 2, 2)


def test_admissible_sinks(a11_02, a02_22):
    assert not is_admissible_sink(a11_02, "σ(1)")
    assert not is_admissible_sink(a11_02, "1")
    assert is_admissible_sink(a02_22, "σ(1)")
    assert not is_admissible_sink(a02_22, "2")


def test_reflect_dim(a11_02):
    assert reflect_dim(a11_02, "σ(1)", a11_02.vector([0, 1, 0])) == a11_02.vector([0, 1, 1])
    h = null_root(a11_02)
    assert reflect_dim(a11_02, "σ(1)", h) == h
    twice = reflect_dim(a11_02.quiver.reflected_at("σ(1)"), "σ(1)", reflect_dim(a11_02, "σ(1)", a11_02.unit("2")))
    assert twice == a11_02.unit("2")


def test_reflect_dim_allows_negative_entries(a11_02):
    assert reflect_dim(a11_02, "σ(1)", a11_02.unit("σ(1)"))["σ(1)"] == -1


def test_reflect_dim_needs_sink_or_source(a11_02):
    with pytest.raises(NotSinkOrSourceError):
        reflect_dim(a11_02, "2", a11_02.unit("2"))


def test_reflect_pair_dim_is_an_involution(a02_22):
    alpha = a02_22.vector({"1": 1, "2": 2, "3": 0, "σ(1)": 1})
    reflected, beta = reflect_pair_dim(a02_22, "σ(1)", alpha)
    assert reflected.quiver.is_source("σ(1)")
    assert reflected.is_symmetric(beta)
    back, gamma = reflect_pair_dim(reflected, "σ(1)", beta)
    assert back == a02_22
    assert gamma == alpha


def test_reflect_pair_rejects_joined_vertices(a11_02):
    with pytest.raises(InadmissibleVertexError):
        reflect_pair(a11_02, "σ(1)")


def test_coxeter_dim(a11_02, a11_06):
    assert coxeter_dim(a11_02, a11_02.vector([0, 1, 0])) == a11_02.vector([1, 0, 1])
    for qs in (a11_02, a11_06):
        h = null_root(qs)
        assert coxeter_dim(qs, h) == h


def test_coxeter_dim_inverse_on_regular_roots(a11_06):
    for tube in tube_data(a11_06).tubes:
        for root in tube.roots:
            assert coxeter_dim(a11_06, coxeter_dim(a11_06, root), Direction.MINUS) == root


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=7, max_size=7))
def test_coxeter_dim_is_an_isometry(values):
    qs = build_canonical(TameKind.A11, 0, 6)
    alpha = qs.vector(values)
    image = coxeter_dim(qs, alpha)
    assert quadratic_form(qs, image) == quadratic_form(qs, alpha)
    assert coxeter_dim(qs, image, Direction.MINUS) == alpha


def test_coxeter_dim_is_numbering_independent(a11_06):
    alpha = a11_06.vector([3, -1, 2, 0, 5, 1, -2])
    default = admissible_numbering(a11_06)
    reverse_ties = admissible_numbering(a11_06, key=lambda x: -a11_06.quiver.index(x))
    assert coxeter_dim(a11_06, alpha, numbering=default) == coxeter_dim(a11_06, alpha, numbering=reverse_ties)


def test_coxeter_matrix_matches_coxeter_dim(a11_06):
    alpha = a11_06.vector([1, 2, 0, 3, 1, 0, 2])
    image = coxeter_matrix(a11_06) @ [alpha[x] for x in a11_06.vertices]
    assert [int(v) for v in image] == list(coxeter_dim(a11_06, alpha).as_tuple(a11_06.vertices))


def test_region_of(a11_02):
    assert region_of(a11_02, null_root(a11_02)) is Region.REGULAR
    assert region_of(a11_02, projective_dim(a11_02, "1")) is Region.PREPROJECTIVE
    assert region_of(a11_02, injective_dim(a11_02, "σ(1)")) is Region.PREINJECTIVE


def test_tube_data_a11_02(a11_02):
    tubes = tube_data(a11_02)
    assert len(tubes.tubes) == 1
    tube = tubes.tubes[0]
    assert tube.period == 2
    assert set(tube.roots) == {a11_02.vector([0, 1, 0]), a11_02.vector([1, 0, 1])}
    assert tube.fixed == frozenset({1, 2})
    assert tube.self_mapped


def test_tube_data_a11_06(a11_06):
    tubes = tube_data(a11_06)
    assert [t.period for t in tubes.tubes] == [6]
    tube = tubes.tubes[0]
    assert tube.fixed == frozenset({1, 4})
    assert tube.e(1) == a11_06.vector({"1": 1, "2": 0, "3": 0, "4": 0, "σ(1)": 1, "σ(2)": 0, "σ(3)": 0})
    assert tube.e(4) == a11_06.unit("4")


def test_tube_indices_wrap_cyclically(a11_06):
    tube = tube_data(a11_06).tubes[0]
    assert tube.wrap(0) == tube.period
    assert tube.wrap(tube.period + 1) == 1
    assert tube.e(0) == tube.roots[-1]
    assert tube.e(tube.period + 1) == tube.roots[0]


@pytest.mark.parametrize("kind,params", [
    (TameKind.A11, (0, 6)),
    (TameKind.A11, (2, 4)),
    (TameKind.A02, (2, 4)),
    (TameKind.A201, (2, 2)),
    (TameKind.A202, (2, 2)),
    (TameKind.A00, (6,)),
])
def test_tube_invariants(kind, params):
    qs = build_canonical(kind, *params)
    tubes = tube_data(qs)
    for tube in tubes.tubes:
        total = tube.roots[0]
        for root in tube.roots[1:]:
            total = total + root
        assert total == tubes.h
        image = tubes.tube(tube.image)
        for i in range(1, tube.period + 1):
            assert coxeter_dim(qs, tube.e(i)) == tube.e(i + 1)
            assert qs.delta(tube.e(i)) == image.e(tube.sigma_I(i))
            assert image.sigma_I(tube.sigma_I(i)) == i


@pytest.mark.parametrize("k,l", [(0, 2), (0, 6), (2, 2)])
def test_tube_periods_by_coxeter_matrix(k, l):
    qs = build_canonical(TameKind.A11, k, l)
    tubes = tube_data(qs)
    assert sorted(t.period for t in tubes.tubes) == sorted(r for r in (l, k + 1) if r > 1)
    C = coxeter_matrix(qs)
    for tube in tubes.tubes:
        start = np.array([tube.e(1)[x] for x in qs.vertices], dtype=np.int64)
        current = start
        for i in range(1, tube.period + 1):
            current = C @ current
            assert list(current) == list(tube.e(i + 1).as_tuple(qs.vertices))
            assert (i == tube.period) == bool((current == start).all())


def test_tube_data_needs_canonical(a11_22):
    with pytest.raises(NonCanonicalError):
        tube_data(reflect_pair(a11_22, "σ(1)"))


def test_reduce_canonical_input(a11_02):
    sequence, qs = reduce_to_canonical(a11_02)
    assert sequence == ReflectionSequence(())
    assert qs == a11_02


def test_reduce_one_step(a11_22):
    assert is_admissible_sink(a11_22, "σ(1)")
    moved = reflect_pair(a11_22, "σ(1)")
    assert not is_canonical(moved)
    sequence, qs = reduce_to_canonical(moved)
    assert list(sequence) == ["1"]
    assert qs == a11_22
    assert classify(qs).type_tuple == classify(moved).type_tuple


def test_apply_sequence_carries_vectors(a11_22):
    moved = reflect_pair(a11_22, "σ(1)")
    sequence, _ = reduce_to_canonical(moved)
    h = null_root(moved)
    qs, image = apply_sequence(moved, sequence, h)
    assert qs == a11_22
    assert image == h


def test_apply_sequence_rejects_inadmissible(a11_02):
    with pytest.raises(InadmissibleVertexError):
        apply_sequence(a11_02, ReflectionSequence(("σ(1)",)))


@pytest.mark.parametrize("kind,params", [
    (TameKind.A11, (2, 2)),
    (TameKind.A11, (0, 6)),
    (TameKind.A02, (2, 4)),
])
def test_reduce_random_orientations(kind, params):
    canonical = build_canonical(kind, *params)
    rng = np.random.default_rng(5)
    for _ in range(5):
        qs = canonical
        for _ in range(int(rng.integers(1, 6))):
            sinks = [x for x in qs.vertices if is_admissible_sink(qs, x)]
            if not sinks:
                break
            qs = reflect_pair(qs, sinks[int(rng.integers(len(sinks)))])
        sequence, reduced = reduce_to_canonical(qs)
        assert is_canonical(reduced)
        assert classify(reduced).type_tuple == classify(canonical).type_tuple
        assert apply_sequence(qs, sequence)[0] == reduced
