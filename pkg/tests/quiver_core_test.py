import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symquiv.config import TameKind
from symquiv.errors import ClassificationError, DomainMismatchError, InvalidParametersError, MalformedInputError, NotTameError
from symquiv.quiver_core import (
    Arrow,
    DimensionVector,
    Quiver,
    SymmetricQuiver,
    build_canonical,
    build_equioriented_d,
    classify,
    defect,
    euler_form,
    injective_dim,
    null_root,
    projective_dim,
    quadratic_form,
)


def test_canonical_a11_02_shape(a11_02):
    assert a11_02.vertices == ("1", "2", "σ(1)")
    assert {a.id for a in a11_02.arrows} == {"a", "σ(a)", "b"}
    assert a11_02.fixed_arrows == ("b",)
    assert a11_02.fixed_vertices == ("2",)
    assert a11_02.arrow("b") == Arrow("b", "1", "σ(1)")


def test_euler_form_examples(a11_02):
    h = a11_02.vector([1, 1, 1])
    assert euler_form(a11_02, h, h) == 0
    assert euler_form(a11_02, a11_02.unit("1"), a11_02.unit("σ(1)")) == -1
    for x in a11_02.vertices:
        assert euler_form(a11_02, a11_02.unit(x), a11_02.unit(x)) == 1


def test_euler_form_domain_mismatch(a11_02, a11_06):
    with pytest.raises(DomainMismatchError):
        euler_form(a11_02, a11_02.vector([1, 1, 1]), a11_06.unit("1"))


def test_null_root_patterns(a11_06, d10_5):
    assert set(null_root(a11_06).values()) == {1}
    h = null_root(d10_5)
    assert [h[x] for x in ("y1", "y2", "σ(y1)", "σ(y2)")] == [1, 1, 1, 1]
    assert [h[x] for x in ("x1", "σ(x1)")] == [2, 2]
    assert quadratic_form(d10_5, h) == 0


def test_null_root_rejects_finite_type():
    path = Quiver(["1", "2", "3"], [Arrow("a", "1", "2"), Arrow("b", "2", "3")])
    with pytest.raises(NotTameError):
        null_root(path)


def test_defect_of_projectives_and_injectives(a11_02, a11_06):
    assert projective_dim(a11_02, "1") == a11_02.vector([1, 1, 2])
    assert defect(a11_02, projective_dim(a11_02, "1")) == -1
    assert injective_dim(a11_02, "σ(1)") == a11_02.vector([2, 1, 1])
    assert defect(a11_02, injective_dim(a11_02, "σ(1)")) == 1
    for x in a11_06.vertices:
        assert defect(a11_06, projective_dim(a11_06, x)) < 0
        assert defect(a11_06, injective_dim(a11_06, x)) > 0


def test_delta(a11_02):
    alpha = a11_02.vector([1, 1, 2])
    assert a11_02.delta(alpha) == a11_02.vector([2, 1, 1])
    h = null_root(a11_02)
    assert a11_02.delta(h) == h


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=14, max_size=14))
def test_euler_form_duality(values):
    qs = build_canonical(TameKind.A11, 0, 6)
    alpha = qs.vector(values[:7])
    beta = qs.vector(values[7:])
    assert euler_form(qs, alpha, beta) == euler_form(qs, qs.delta(beta), qs.delta(alpha))
    assert qs.delta(qs.delta(alpha)) == alpha


def test_quadratic_form_radical_on_a_box(a11_02):
    h = null_root(a11_02)
    for values in itertools.product(range(-2, 3), repeat=3):
        alpha = a11_02.vector(list(values))
        value = quadratic_form(a11_02, alpha)
        assert value >= 0
        assert (value == 0) == any(alpha == h * k for k in range(-2, 3))


@pytest.mark.parametrize("kind,params,expected", [
    (TameKind.A11, (0, 2), (1, 1, 0, 2)),
    (TameKind.A11, (2, 4), (1, 1, 2, 4)),
    (TameKind.A02, (2, 2), (0, 2, 2, 2)),
    (TameKind.A02, (2, 4), (0, 2, 2, 4)),
    (TameKind.A201, (0, 2), (2, 0, 0, 2)),
    (TameKind.A202, (2, 0), (2, 0, 2, 0)),
    (TameKind.A202, (2, 2), (2, 0, 2, 2)),
])
def test_classify_round_trip_a(kind, params, expected):
    tame = classify(build_canonical(kind, *params))
    assert tame.kind is kind
    assert tame.params == params
    assert tame.type_tuple == expected


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_classify_round_trip_d(n):
    tame = classify(build_equioriented_d(n))
    assert tame.kind is (TameKind.D01 if n % 2 == 0 else TameKind.D10)
    assert tame.params == (n,)
    assert tame.type_tuple is None


def test_classify_central_symmetry():
    tame = classify(build_canonical(TameKind.A00, 4))
    assert tame.kind is TameKind.A00
    assert tame.params == (4,)


def test_build_rejects_bad_parameters():
    with pytest.raises(InvalidParametersError):
        build_canonical(TameKind.A11, 1, 2)
    with pytest.raises(InvalidParametersError):
        build_canonical(TameKind.A11, 0)
    with pytest.raises(InvalidParametersError):
        build_canonical(TameKind.D10, 6)


def test_symmetric_quiver_rejects_unknown_arrow_image():
    quiver = Quiver(
        ["1", "2", "σ(1)"],
        [Arrow("a", "1", "2"), Arrow("σ(a)", "2", "σ(1)"), Arrow("c", "1", "σ(1)")],
    )
    with pytest.raises(MalformedInputError):
        SymmetricQuiver(quiver, {"1": "σ(1)", "2": "2", "σ(1)": "1"}, {"a": "σ(a)", "σ(a)": "a", "c": "σ(c)"})


def test_classify_rejects_disconnected():
    quiver = Quiver(["1", "σ(1)", "2", "σ(2)"], [Arrow("a", "1", "σ(1)"), Arrow("c", "2", "σ(2)")])
    qs = SymmetricQuiver(quiver, {"1": "σ(1)", "σ(1)": "1", "2": "σ(2)", "σ(2)": "2"}, {"a": "a", "c": "c"})
    with pytest.raises(ClassificationError):
        classify(qs)


def test_symmetric_quiver_rejects_non_involution():
    quiver = Quiver(["1", "2"], [Arrow("a", "1", "2")])
    with pytest.raises(MalformedInputError):
        SymmetricQuiver(quiver, {"1": "2", "2": "2"}, {"a": "a"})


def test_dimension_vectors_are_integral(a11_02):
    with pytest.raises(MalformedInputError):
        DimensionVector({"1": "1/2", "2": 0, "σ(1)": 0})
    assert a11_02.vector({"1": 2, "2": 1, "σ(1)": 2}).total() == 5
