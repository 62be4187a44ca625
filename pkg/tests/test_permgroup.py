import random

import numpy as np
import pytest

from g2unital.permgroup import PermGroup, closure, compose, group_closure, inverse, is_identity, perm_word

S4_GENS = [[1, 0, 2, 3], [1, 2, 3, 0]]


def test_compose_is_left_to_right():
    p = np.array([1, 2, 0])
    q = np.array([0, 2, 1])
    r = compose(p, q)
    for i in range(3):
        assert r[i] == q[p[i]]
    assert is_identity(compose(p, inverse(p)))


def test_symmetric_group_order_and_derived():
    G = PermGroup(S4_GENS)
    assert G.order == 24
    assert G.is_2_transitive()
    assert G.derived_subgroup().order == 12
    assert G.derived_subgroup().derived_subgroup().order == 4


def test_identity_closure():
    G = group_closure([np.arange(5)])
    assert G.order == 1
    assert PermGroup([], 5).order == 1


def test_closure_is_closed_and_contains_inverses():
    G = PermGroup([[1, 2, 3, 4, 0], [1, 0, 2, 3, 4]])
    assert G.order == 120
    E = G.elements
    rng = np.random.default_rng(0)
    for a, b in rng.integers(0, len(E), size=(50, 2)):
        assert compose(E[a], E[b]) in G
        assert inverse(E[a]) in G


def test_generator_order_independence():
    gens = [np.array(g) for g in ([1, 2, 3, 4, 5, 0], [1, 0, 2, 3, 4, 5], [0, 1, 3, 2, 5, 4])]
    ref = closure(gens, 6)
    random.Random(1).shuffle(gens)
    assert np.array_equal(closure(gens, 6), ref)


def test_orbits_and_stabilizers():
    G = PermGroup([[1, 0, 2, 3, 4], [0, 1, 2, 4, 3]])
    assert G.orbits() == [(0, 1), (2,), (3, 4)]
    assert not G.is_transitive()
    assert G.stabilizer(0).order == 2
    assert G.setwise_stabilizer([0, 1]).order == 4
    assert G.orbit(4) == (3, 4)


def test_cyclic_group_is_not_doubly_transitive():
    G = PermGroup([[1, 2, 3, 4, 0]])
    assert G.is_transitive()
    assert not G.is_2_transitive()


def test_conjugate_relabels_points():
    G = PermGroup([[1, 0, 2, 3]])
    phi = np.array([3, 2, 1, 0])
    H = G.conjugate(phi)
    assert H.order == 2
    assert np.array_equal(H.generators[0], [0, 1, 3, 2])


def test_bad_generators():
    with pytest.raises(ValueError):
        PermGroup([[0, 0, 1]])
    with pytest.raises(ValueError):
        PermGroup([[0, 1], [0, 1, 2]])
    with pytest.raises(ValueError):
        PermGroup([])


def test_perm_word():
    assert perm_word(np.array([2, 0, 1])) == "2 0 1"
