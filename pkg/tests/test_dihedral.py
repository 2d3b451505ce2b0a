import pytest
from hypothesis import given, strategies as st

from logk3.dihedral import (
    CycleAction,
    DihedralElement,
    abstract_to_cycle,
    action_violation,
    all_elements,
    compose,
    cycle_automorphisms_brute_force,
    dihedral_iso_from_pair,
    element_from_images,
    sign_character,
)
from logk3.groups import cyclic_group

elements = st.integers(3, 9).flatmap(
    lambda n: st.tuples(*[st.builds(DihedralElement, st.integers(0, n - 1), st.booleans(), st.just(n))] * 3)
)


@pytest.mark.parametrize("n", range(3, 9))
def test_elements_match_cycle_automorphisms(n):
    ours = {tuple(g(v) for v in range(n)) for g in all_elements(n)}
    assert ours == set(cycle_automorphisms_brute_force(n))
    assert len(ours) == 2 * n


@given(elements)
def test_composition_is_function_composition(gs):
    g, h, _ = gs
    gh = compose(g, h)
    for v in range(g.n):
        assert gh(v) == g(h(v))
        assert gh.edge(v) == g.edge(h.edge(v))


@given(elements)
def test_group_laws(gs):
    g, h, k = gs
    assert (g * h) * k == g * (h * k)
    assert (g * g.inverse()).is_identity()
    assert sign_character(g * h) == sign_character(g) * sign_character(h)


@given(elements)
def test_edge_action_consistent_with_vertices(gs):
    g = gs[0]
    for i in range(g.n):
        ends = {g(i), g(i + 1)}
        j = g.edge(i)
        assert ends == {j, (j + 1) % g.n}


def test_two_cycle_edges_distinguished():
    swap = DihedralElement(1, False, 2)
    flip = DihedralElement(1, True, 2)
    assert swap(0) == flip(0) == 1
    assert swap.edge(0) == 1 and flip.edge(0) == 0
    assert len(all_elements(2)) == 4


def test_element_from_images():
    for g in all_elements(6):
        assert element_from_images(g(0), g.edge(0), 6) == g
    with pytest.raises(ValueError):
        element_from_images(0, 3, 6)


def test_iso_from_standard_pair_is_identity():
    table = abstract_to_cycle(0, 1, 5)
    assert all(k == v for k, v in table.items())


def test_iso_from_other_pair():
    gens = dihedral_iso_from_pair(2, 1, 5)
    assert gens["tau"] == DihedralElement(4, False, 5)
    assert gens["sigma"](2) == 2 and gens["sigma"].refl
    table = abstract_to_cycle(2, 1, 5)
    assert len(set(table.values())) == 10
    with pytest.raises(ValueError):
        dihedral_iso_from_pair(0, 2, 5)


def test_action_validation():
    G = cyclic_group(5)
    rot = DihedralElement(1, False, 5)
    good = CycleAction(G, 5, tuple(DihedralElement(k, False, 5) for k in range(5)))
    assert action_violation(good) is None
    bad = CycleAction(G, 5, tuple(rot for _ in range(5)))
    assert "identity" in action_violation(bad)


def test_action_json_round_trip():
    G = cyclic_group(2)
    rho = CycleAction(G, 4, (DihedralElement.identity(4), DihedralElement(1, True, 4)))
    assert CycleAction.from_json(rho.to_json()) == rho
    assert rho.vertex_orbits() == [frozenset({0, 1}), frozenset({2, 3})]
