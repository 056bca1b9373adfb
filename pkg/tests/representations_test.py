import numpy as np
import pytest
import sympy

from symquiv.config import Direction, Flavor
from symquiv.errors import InvalidParametersError, ParityError, UnsupportedTypeError
from symquiv.quiver_core import euler_form, null_root, projective_dim
from symquiv.reflections import reflect_dim
from symquiv.representations import (
    FormSpace,
    FormStructure,
    Representation,
    TubeCoord,
    ambient_paths,
    bgp_reflect,
    build_regular_A,
    check_form,
    direct_sum,
    ext_dim,
    hom_space,
    is_isomorphic,
    nabla,
    projective_representation,
    random_representation,
    reflect_pair_rep,
    regular_models,
    simple_representation,
    thin_representation,
)


def test_hom_between_simples(a11_02):
    s2 = simple_representation(a11_02, "2")
    assert hom_space(s2, s2).dim == 1
    assert ext_dim(s2, s2) == 0
    e1 = thin_representation(a11_02, a11_02.vector([1, 0, 1]))
    assert e1.mats["b"] == sympy.Matrix([[1]])
    assert hom_space(s2, e1).dim == 0


def test_ext_between_adjacent_tube_simples(a11_02):
    e1 = thin_representation(a11_02, a11_02.vector([1, 0, 1]))
    s2 = simple_representation(a11_02, "2")
    assert hom_space(e1, s2).dim == 0
    assert ext_dim(e1, s2) == 1


def test_hom_from_projective(a11_02):
    rng = np.random.default_rng(3)
    W = random_representation(a11_02, a11_02.vector([2, 3, 1]), rng)
    for x in a11_02.vertices:
        P = projective_representation(a11_02, x)
        assert P.dim == projective_dim(a11_02, x)
        assert hom_space(P, W).dim == W.dim[x]
        assert ext_dim(P, W) == 0


def test_hom_minus_ext_is_euler_form(a11_06):
    rng = np.random.default_rng(11)
    V = random_representation(a11_06, a11_06.vector([1, 0, 1, 1, 0, 1, 0]), rng)
    W = random_representation(a11_06, a11_06.vector([0, 1, 1, 0, 1, 0, 1]), rng)
    assert hom_space(V, W).dim - ext_dim(V, W) == euler_form(a11_06, V.dim, W.dim)


def test_nabla(a11_02):
    rng = np.random.default_rng(5)
    V = random_representation(a11_02, a11_02.vector([2, 1, 3]), rng)
    assert nabla(a11_02, nabla(a11_02, V)) == V
    assert nabla(a11_02, simple_representation(a11_02, "1")) == simple_representation(a11_02, "σ(1)")


@pytest.mark.parametrize("flavor", [Flavor.ORTHOGONAL, Flavor.SYMPLECTIC])
def test_form_points_are_self_dual(a11_02, flavor):
    space = FormSpace(a11_02, a11_02.vector([2, 2, 2]), flavor)
    V = space.random_point(np.random.default_rng(7))
    assert check_form(a11_02, V, flavor)
    assert is_isomorphic(nabla(a11_02, V), V)


def test_orthogonal_fixed_arrow_is_skew(a11_02):
    V = FormSpace(a11_02, a11_02.vector([2, 2, 2]), Flavor.ORTHOGONAL).random_point(np.random.default_rng(1))
    assert V.mats["b"] == -V.mats["b"].T
    assert V.mats["σ(a)"] == -V.mats["a"].T


def test_check_form_reports_violations(a11_02):
    zero = Representation(a11_02.quiver, a11_02.vector([2, 2, 2]))
    assert check_form(a11_02, zero, Flavor.ORTHOGONAL)
    odd = Representation(a11_02.quiver, a11_02.vector([1, 1, 1]))
    report = check_form(a11_02, odd, Flavor.SYMPLECTIC)
    assert not report
    assert "odd dimension" in report.violations[0]
    bad = Representation(a11_02.quiver, a11_02.vector([1, 0, 1]), {"b": [[1]]})
    assert not check_form(a11_02, bad, FormStructure(a11_02, Flavor.ORTHOGONAL))


def test_symplectic_space_needs_even_fixed_dims(a11_02):
    with pytest.raises(ParityError):
        FormSpace(a11_02, a11_02.vector([1, 1, 1]), Flavor.SYMPLECTIC)


def test_bgp_reflection_of_simple_at_sink(a11_02):
    reflected = bgp_reflect(a11_02.quiver, simple_representation(a11_02, "σ(1)"), "σ(1)")
    assert reflected.is_zero()
    assert reflected.dim.is_zero()


def test_bgp_reflection_of_regular_model(a11_02):
    V = build_regular_A(a11_02, (1, 1))
    once = bgp_reflect(a11_02.quiver, V, "σ(1)", Direction.PLUS)
    assert once.dim == reflect_dim(a11_02, "σ(1)", V.dim)
    back = bgp_reflect(once.quiver, once, "σ(1)", Direction.MINUS)
    assert is_isomorphic(back, V)


def test_reflect_pair_rep_dimension(a02_22):
    V = build_regular_A(a02_22, (2, 3))
    W = reflect_pair_rep(a02_22, V, "σ(1)")
    assert W.dim == null_root(a02_22)
    assert hom_space(W, W).dim == 1


def test_regular_model_simple(a11_02):
    E = build_regular_A(a11_02, TubeCoord("Δ", 2, 2))
    assert E.dim == a11_02.vector([0, 1, 0])
    assert all(m.is_zero_matrix for m in E.mats.values())


def test_homogeneous_models(a11_02):
    upper, lower = ambient_paths(a11_02)
    assert upper == ["a", "σ(a)"]
    assert lower == ["b"]
    V = build_regular_A(a11_02, (1, 0))
    assert V.mats["a"] == sympy.Matrix([[1]])
    assert V.mats["σ(a)"] == sympy.Matrix([[1]])
    assert V.mats["b"] == sympy.Matrix([[0]])
    assert hom_space(V, V).dim == 1
    assert not is_isomorphic(V, build_regular_A(a11_02, (0, 1)))
    with pytest.raises(InvalidParametersError):
        build_regular_A(a11_02, (0, 0))


def test_regular_models_are_bricks(a11_06):
    h = null_root(a11_06)
    for coordinate, E in regular_models(a11_06).items():
        assert euler_form(a11_06, h, E.dim) == 0
        assert hom_space(E, E).dim == 1


def test_regular_model_rejects_bad_coordinates(a11_02, d10_5):
    with pytest.raises(InvalidParametersError):
        build_regular_A(a11_02, TubeCoord("Δ", 3, 1))
    with pytest.raises(InvalidParametersError):
        build_regular_A(a11_02, TubeCoord("Δ″", 1, 1))
    with pytest.raises(UnsupportedTypeError):
        build_regular_A(d10_5, (1, 0))


def test_direct_sum(a11_02):
    s2 = simple_representation(a11_02, "2")
    total = direct_sum(s2, s2)
    assert total.dim == a11_02.vector([0, 2, 0])
    assert hom_space(total, total).dim == 4
