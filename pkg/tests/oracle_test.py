import numpy as np
import pytest

from symquiv.catalog import corrupted_descriptor, list_generators
from symquiv.config import Flavor
from symquiv.errors import BudgetExceededError, DomainMismatchError, InvalidParametersError
from symquiv.oracle import (
    PlainSpace,
    act,
    invariance_test,
    invariant_dims,
    pfaffian_trials,
    random_group_element,
    representation_space,
    subalgebra_dims,
)
from symquiv.quiver_core import null_root
from symquiv.representations import FormSpace, check_form


@pytest.mark.parametrize("flavor", list(Flavor))
def test_group_elements_preserve_the_form(a11_02, flavor):
    d = null_root(a11_02) * 2
    for seed in range(3):
        g = random_group_element(a11_02, d, flavor, seed)
        assert g.preserves_form()
        assert (g * g.inverse()).blocks["1"].is_Identity


@pytest.mark.parametrize("flavor", [Flavor.ORTHOGONAL, Flavor.SYMPLECTIC])
def test_action_stays_in_form_space(a11_02, flavor):
    d = null_root(a11_02) * 2
    W = FormSpace(a11_02, d, flavor).random_point(np.random.default_rng(8))
    g = random_group_element(a11_02, d, flavor, 5)
    assert check_form(a11_02, act(g, W), flavor)


def test_act_is_a_group_action(a11_02):
    d = null_root(a11_02) * 2
    W = FormSpace(a11_02, d, Flavor.ORTHOGONAL).random_point(np.random.default_rng(3))
    g = random_group_element(a11_02, d, Flavor.ORTHOGONAL, 1)
    k = random_group_element(a11_02, d, Flavor.ORTHOGONAL, 2)
    assert act(g * k, W) == act(g, act(k, W))
    with pytest.raises(DomainMismatchError):
        act(random_group_element(a11_02, null_root(a11_02), Flavor.ORTHOGONAL), W)


@pytest.mark.parametrize("flavor", [Flavor.ORTHOGONAL, Flavor.SYMPLECTIC])
def test_generators_are_invariant(a11_02, flavor):
    d = null_root(a11_02) * 2
    W = FormSpace(a11_02, d, flavor).random_point(np.random.default_rng(13))
    for g in list_generators(a11_02, d, flavor):
        report = invariance_test(g, W, trials=10)
        assert report.ok, g.label
        assert report.passed == 10


@pytest.mark.parametrize("flavor", [Flavor.ORTHOGONAL, Flavor.SYMPLECTIC])
def test_generators_of_a_regular_vector_are_invariant(a11_06, example_dim, flavor):
    W = FormSpace(a11_06, example_dim, flavor).random_point(np.random.default_rng(17))
    generators = list_generators(a11_06, example_dim, flavor)
    assert generators
    for g in generators:
        report = invariance_test(g, W, trials=3)
        assert report.ok, g.label


def test_corrupted_recipe_is_caught(a11_02):
    d = null_root(a11_02) * 2
    W = FormSpace(a11_02, d, Flavor.ORTHOGONAL).random_point(np.random.default_rng(13))
    g = next(g for g in list_generators(a11_02, d, Flavor.ORTHOGONAL) if g.label == "det V(a)")
    report = invariance_test(corrupted_descriptor(g), W, trials=20)
    assert not report.ok
    assert report.counterexample[1] != report.value


def test_invariant_dims_orthogonal(a11_02):
    assert invariant_dims(a11_02, null_root(a11_02) * 2, Flavor.ORTHOGONAL) == [1, 1, 2, 2, 3]


def test_invariant_dims_symplectic(a11_02):
    assert invariant_dims(a11_02, null_root(a11_02) * 2, Flavor.SYMPLECTIC) == [1, 0, 2, 0, 3]
    assert invariant_dims(a11_02, null_root(a11_02) * 3, Flavor.SYMPLECTIC) == [1, 0, 0, 0, 0]


def test_invariant_dims_ignore_coordinate_order(a11_02):
    d = null_root(a11_02) * 2
    assert invariant_dims(a11_02, d, Flavor.ORTHOGONAL, max_degree=3, shuffle_seed=7) == [1, 1, 2, 2]


def test_invariant_dims_budget(a11_02):
    with pytest.raises(BudgetExceededError):
        invariant_dims(a11_02, null_root(a11_02) * 2, Flavor.ORTHOGONAL, budget=10)


@pytest.mark.parametrize("flavor", [Flavor.ORTHOGONAL, Flavor.SYMPLECTIC])
def test_generators_span_the_invariants(a11_02, flavor):
    d = null_root(a11_02) * 2
    generators = list_generators(a11_02, d, flavor)
    space = representation_space(a11_02, d, flavor)
    assert subalgebra_dims(generators, space) == invariant_dims(a11_02, d, flavor)


def test_plain_space(a11_02):
    space = representation_space(a11_02, null_root(a11_02), Flavor.PLAIN)
    assert isinstance(space, PlainSpace)
    assert len(space) == 3
    W = space.random_point(np.random.default_rng(0))
    assert space.build(space.coordinates_of(W)) == W


def test_pfaffian_trials():
    trials = pfaffian_trials(6, trials=5)
    assert len(trials) == 5
    assert all(t.ok for t in trials)
    with pytest.raises(InvalidParametersError):
        pfaffian_trials(5)
