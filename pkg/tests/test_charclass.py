from itertools import product

import pytest

from logk3.charclass import (
    ClassError,
    CocycleClass,
    class_from_action,
    h1_enumerate,
    h1_homomorphisms,
    image_order,
    is_quadratic,
    model_from_class,
    sign_pushforward,
)
from logk3.dihedral import CycleAction, DihedralElement
from logk3.groups import cyclic_group, named_group, small_groups
from logk3.points import is_solution, quadratic_model, trivial_model
from logk3.structures import (
    LogK3Structure,
    admissible_structures,
    compatible_actions,
    reachable_degree5,
    reduce_to_degree5,
)


def _d5_as_permutations():
    """D5 as vertex permutations of the pentagon, built without the library."""
    rots = [tuple((i + k) % 5 for i in range(5)) for k in range(5)]
    refls = [tuple((k - i) % 5 for i in range(5)) for k in range(5)]
    return rots + refls


def _compose(p, q):
    return tuple(p[q[i]] for i in range(5))


def _inverse(p):
    out = [0] * 5
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def _h1_cyclic_oracle(n):
    """Hom(Z/n, D5) is the set of elements of order dividing n; classes are conjugacy classes."""
    D5 = _d5_as_permutations()
    ident = tuple(range(5))

    def power(p, k):
        out = ident
        for _ in range(k):
            out = _compose(out, p)
        return out

    homs = [g for g in D5 if power(g, n) == ident]
    classes = {frozenset(_compose(_compose(c, g), _inverse(c)) for c in D5) for g in homs}
    return len(homs), len(classes)


@pytest.mark.parametrize("n,expected", [(2, 2), (3, 1), (5, 3)])
def test_h1_cyclic_counts(n, expected):
    G = cyclic_group(n)
    classes = h1_enumerate(G)
    homs = h1_homomorphisms(G)
    assert len(classes) == expected
    assert (len(homs), len(classes)) == _h1_cyclic_oracle(n)
    assert sum(c.orbit_size() for c in classes) == len(homs)


def test_orbit_sizes_sum_for_all_small_groups():
    for G in small_groups(10):
        classes = h1_enumerate(G)
        assert sum(c.orbit_size() for c in classes) == len(h1_homomorphisms(G)), G.name
        assert classes[0].is_trivial()


def test_class_json_round_trip():
    for c in h1_enumerate(named_group("S3")):
        assert CocycleClass.from_json(c.to_json()) == c


def test_d8_example_is_trivial():
    final, _ = reduce_to_degree5(LogK3Structure(8, (3, 1)))
    c = class_from_action(final.action)
    assert c.is_trivial()
    model = model_from_class(c)
    assert model.equation["text"] == "(xy - 1)t = x - 1"
    assert model.surface_model() == trivial_model()


def _d7_swap():
    G = cyclic_group(2)
    swap = DihedralElement(1, True, 3)
    return LogK3Structure(7, (0, 0, 1), CycleAction(G, 3, (DihedralElement.identity(3), swap)))


def test_d7_swap_is_quadratic():
    final, _ = reduce_to_degree5(_d7_swap())
    c = class_from_action(final.action)
    assert is_quadratic(c) and not c.is_trivial()
    assert sorted(sign_pushforward(c)) == [-1, 1]
    model = model_from_class(c, a=5)
    assert model.surface_model() == quadratic_model(5)
    with pytest.raises(ClassError):
        model_from_class(c)
    with pytest.raises(ClassError):
        model_from_class(c, a=12)


def test_order_five_class_has_no_explicit_model():
    G = cyclic_group(5)
    rho = CycleAction(G, 5, tuple(DihedralElement(k, False, 5) for k in range(5)))
    c = class_from_action(rho)
    assert image_order(c) == 5
    assert model_from_class(c).kind == "non-explicit"


def test_model_points_exist():
    assert is_solution(trivial_model(), (2, 1, 1))
    assert is_solution(quadratic_model(2), (11, 8, -1))


def test_class_independent_of_reduction_path():
    for s in admissible_structures():
        for G in small_groups(6):
            for rho in compatible_actions(s.seq, G):
                t = LogK3Structure(s.degree, s.seq, rho)
                ends = reachable_degree5(t, max_steps=4)
                assert ends, t
                assert len({class_from_action(f.action) for f, _ in ends}) == 1, t


def test_class_independent_of_identifying_pair():
    G = cyclic_group(2)
    rho = CycleAction(G, 5, (DihedralElement.identity(5), DihedralElement(0, True, 5)))
    base = class_from_action(rho)
    for v0, step in product(range(5), (1, -1)):
        assert class_from_action(rho, v0, (v0 + step) % 5) == base
