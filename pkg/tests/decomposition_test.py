import pytest

from symquiv.config import Flavor
from symquiv.decomposition import (
    admissible_arcs,
    arc_multiplicity,
    decompose,
    ext_conflicts,
    generic_decompose,
    level_components,
    orthogonal_generic,
    regular_decompose,
    summand_module,
    symplectic_generic,
    up_down_split,
)
from symquiv.errors import InvalidParametersError, NestingError, ParityError
from symquiv.quiver_core import null_root
from symquiv.representations import hom_space


@pytest.fixture(scope='module')
def polygon(a11_06, example_dim):
    return regular_decompose(a11_06, example_dim).polygons[0]


def test_regular_decompose_example(a11_06, example_dim):
    regular = regular_decompose(a11_06, example_dim)
    assert regular.p == 2
    assert regular.labels == {"Δ": (4, 3, 0, 2, 0, 3)}
    assert 0 in regular.polygons[0].labels


def test_regular_decompose_multiple_of_h(a11_06):
    regular = regular_decompose(a11_06, null_root(a11_06) * 2)
    assert regular.p == 2
    assert set(regular.polygons[0].labels) == {0}


def test_regular_decompose_rejects(a11_06):
    with pytest.raises(InvalidParametersError):
        regular_decompose(a11_06, a11_06.unit("1"))
    with pytest.raises(ParityError):
        regular_decompose(a11_06, null_root(a11_06), Flavor.SYMPLECTIC)


def test_generic_decomposition_string(a11_06, example_dim):
    generic = generic_decompose(a11_06, example_dim)
    assert generic.format_regular() == "((e₂+δe₂)+e₁)^{⊕3} ⊕ e₁ ⊕ (e₄)^{⊕2}"
    assert generic.format() == "h^{⊕2} ⊕ ((e₂+δe₂)+e₁)^{⊕3} ⊕ e₁ ⊕ (e₄)^{⊕2}"


def test_symplectic_decomposition_string(a11_06, example_dim):
    symplectic = symplectic_generic(a11_06, example_dim)
    assert symplectic.format_regular() == "((e₂+δe₂)+e₁)^{⊕3} ⊕ e₁ ⊕ 2e₄"
    assert not symplectic.convention_dependent


def test_orthogonal_decomposition_string(a11_06, example_dim):
    orthogonal = orthogonal_generic(a11_06, example_dim)
    assert orthogonal.format_regular() == "2((e₂+δe₂)+e₁) ⊕ ((e₂+δe₂)+2e₁) ⊕ (e₄)^{⊕2}"
    assert orthogonal.p == 2


@pytest.mark.parametrize("flavor", list(Flavor))
def test_decompositions_resum(a11_06, example_dim, flavor):
    result = decompose(a11_06, example_dim, flavor)
    assert result.resum(null_root(a11_06)) == example_dim
    assert result.flavor is flavor


def test_only_h_gives_bare_h(a11_06):
    assert decompose(a11_06, null_root(a11_06)).format() == "h"
    assert decompose(a11_06, null_root(a11_06) * 3).format() == "h^{⊕3}"


def test_admissible_arcs(polygon):
    arcs = admissible_arcs(polygon)
    for arc in arcs:
        assert polygon.label(arc.start) == polygon.label(arc.end) == arc.bound
        assert all(polygon.label(k) > arc.bound for k in arc.interior)
    assert polygon.sigma_I(2) == 6
    runs = {(arc.interior[0], arc.interior[-1]): arc.ind for arc in arcs}
    assert runs == {(2, 6): 3, (1, 1): 4, (4, 4): 2}


def test_admissible_arcs_of_zero_labels(a11_06):
    poly = regular_decompose(a11_06, null_root(a11_06) * 2).polygons[0]
    arcs = admissible_arcs(poly)
    assert len(arcs) == poly.period
    assert all(not arc.interior and arc.ind == 0 for arc in arcs)


def test_single_arc_multiplicity_is_its_index(polygon):
    for arc in admissible_arcs(polygon):
        assert arc_multiplicity([arc]) == [arc.ind]


def test_level_components_and_multiplicity(polygon):
    components = level_components(polygon)
    spans = [arc.span for arc in components]
    assert spans == [frozenset({1, 2, 6}), frozenset({1}), frozenset({4})]
    assert [arc.q for arc in components] == [3, 1, 2]
    assert arc_multiplicity(components[:2]) == [3, 1]
    with pytest.raises(NestingError):
        arc_multiplicity([components[2], components[1]])


def test_up_down_split(polygon):
    up, down = up_down_split(polygon)
    assert set(up) | set(down) == {1, 2, 4, 6}
    assert not set(up) & set(down)
    for half in (up, down):
        assert {polygon.sigma_I(i) for i in half} == set(half)


def test_generic_summands_are_bricks_without_extensions(a11_06, example_dim):
    generic = generic_decompose(a11_06, example_dim)
    assert ext_conflicts(a11_06, generic) == []
    for summand in generic.summands:
        module = summand_module(a11_06, summand)
        assert module.dim == summand.vector
        if len(summand.modules) == 1:
            assert hom_space(module, module).dim == 1
