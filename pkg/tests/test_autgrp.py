import numpy as np
import pytest

from g2unital import autgrp
from g2unital.compalg import octonions
from g2unital.permgroup import closure
from g2unital.subalg import Subspace, families, orth_complement, span_closure


@pytest.fixture(scope="module")
def G():
    return autgrp.full_group(2)


@pytest.fixture(scope="module")
def fam():
    return families(2)


def matrix_copy(q):
    return Subspace.from_vectors(octonions(q).basis[:4], q)


def C_field():
    alg = octonions(2)
    return span_closure([alg.named()["u"]], 2)


def test_alpha_identity():
    alg = octonions(3)
    f = autgrp.alpha(matrix_copy(3), alg.w, alg.one, alg.one, q=3)
    assert f.is_identity()


@pytest.mark.parametrize("q", [2, 3])
def test_alpha_stabilizes_H_and_preserves_norm_trace(q):
    alg = octonions(q)
    M = matrix_copy(q)
    s = np.array([1, 1, 0, 1, 0, 0, 0, 0], dtype=np.uint8)
    t = np.array([0, 1, q - 1, 0, 0, 0, 0, 0], dtype=np.uint8)
    f = autgrp.alpha(M, alg.w, s, t, q=q)
    assert autgrp.image_subspace(f, M) == M
    X = np.random.default_rng(q).integers(0, q, size=(200, 8)).astype(np.uint8)
    assert np.array_equal(alg.norm(f(X)), alg.norm(X))
    assert np.array_equal(alg.trace(f(X)), alg.trace(X))


def test_alpha_preconditions():
    alg = octonions(2)
    M = matrix_copy(2)
    one, w = alg.one, alg.w
    n0 = alg.named()["n0"]
    with pytest.raises(ValueError):
        autgrp.alpha(M, one, one, one, q=2)  # v not in H-perp
    with pytest.raises(ValueError):
        autgrp.alpha(M, alg.mul(n0, w), one, one, q=2)  # N(v) = 0
    with pytest.raises(ValueError):
        autgrp.alpha(M, w, n0, one, q=2)  # s not invertible
    with pytest.raises(ValueError):
        autgrp.alpha(M, w, one, w, q=2)  # t outside H
    with pytest.raises(ValueError):
        autgrp.alpha(families(2).X[0], w, one, one, q=2)


def test_quaternion_stabilizer_has_36_maps():
    alg = octonions(2)
    assert len(autgrp.stabilizer_maps(matrix_copy(2), alg.w, 2)) == 36


def test_alpha_cc_is_tau():
    alg = octonions(2)
    C = C_field()
    for c in C.space.elements()[1:]:
        assert autgrp.alpha(matrix_copy(2), alg.w, c, c, q=2) == autgrp.tau(C, c)


def test_tau_identity_and_order_three():
    alg = octonions(2)
    C = C_field()
    assert autgrp.tau(C, alg.one).is_identity()
    u = alg.named()["u"]
    t = autgrp.tau(C, u)
    assert not t.is_identity()
    assert t.compose(t).compose(t).is_identity()
    T = t.table
    assert np.array_equal(T[T[T]], np.arange(256))


def test_tau_errors():
    alg = octonions(2)
    C = C_field()
    with pytest.raises(ValueError):
        autgrp.tau(C, alg.w)
    with pytest.raises(ValueError):
        autgrp.tau(C, np.zeros(8, dtype=np.uint8))
    with pytest.raises(NotImplementedError):
        autgrp.tau(families(3).D[0], octonions(3).one)


def test_tau_fixes_D_and_cycles_its_blocks(fam):
    alg = fam.alg
    Ci = fam.D_index[C_field().space]
    p = autgrp.induced_perm(autgrp.tau(C_field(), alg.named()["u"]), "D", fam)
    assert p[Ci] == Ci
    for x in fam.X_D[Ci]:
        others = [d for d in fam.D_X[x] if d != Ci]
        assert sorted(p[others]) == sorted(others)
        assert all(p[d] != d for d in others)


def test_translation_group_orbit(fam):
    # {D0, D1, D2} = the points of a block through C other than C is one orbit
    alg = fam.alg
    Ci = fam.D_index[C_field().space]
    T = autgrp.translation_group(C_field())
    perms = [autgrp.point_perm(t, fam) for t in T]
    for x in fam.X_D[Ci]:
        d0 = next(d for d in fam.D_X[x] if d != Ci)
        assert {int(p[d0]) for p in perms} == set(fam.D_X[x]) - {Ci}


def test_induced_perm_identity(fam):
    alg = fam.alg
    f = autgrp.alpha(matrix_copy(2), alg.w, alg.one, alg.one, q=2)
    assert np.array_equal(autgrp.induced_perm(f, "D", fam), np.arange(28))
    assert np.array_equal(autgrp.induced_perm(f, "X", fam), np.arange(63))
    assert np.array_equal(autgrp.induced_perm(f, "elements", fam), np.arange(256))
    with pytest.raises(ValueError):
        autgrp.induced_perm(f, "H", fam)


def test_induced_perm_matches_subspace_images(fam):
    alg = fam.alg
    f = autgrp.stabilizer_maps(matrix_copy(2), alg.w, 2)[7]
    p = autgrp.induced_perm(f, "D", fam)
    bp = autgrp.induced_perm(f, "X", fam)
    for i in (0, 5, 27):
        assert fam.D[p[i]].space == autgrp.image_subspace(f, fam.D[i].space)
    for i in (0, 30, 62):
        assert fam.X[bp[i]].space == autgrp.image_subspace(f, fam.X[i].space)


def test_full_group_order_and_faithful(G):
    assert G.order == 12096
    assert G.faithful and G.kernel_order == 1
    assert len(np.unique(G.elements_action, axis=0)) == 12096
    assert G.points.is_2_transitive()


def test_full_group_other_q():
    with pytest.raises(NotImplementedError):
        autgrp.full_group(3)


def test_derived_subgroup(G):
    assert G.points.derived_subgroup().order == 6048


def test_generators_are_isometries(G):
    alg = octonions(2)
    E = alg.elements()
    N, T = alg.norm(E), alg.trace(E)
    for f in G.generators[::9]:
        assert np.array_equal(N[f.table], N)
        assert np.array_equal(T[f.table], T)


def test_closure_independent_of_generator_order(G):
    perms = [np.concatenate([autgrp.point_perm(f, families(2)), 28 + f.table]) for f in G.generators]
    ref = closure(perms, 284)
    rng = np.random.default_rng(4)
    shuffled = [perms[i] for i in rng.permutation(len(perms))]
    assert np.array_equal(closure(shuffled, 284), ref)


def test_stabilizers(G, fam):
    _, SD = autgrp.stabilizer(G, 0, "point")
    assert SD.order == 432
    rows, Su = autgrp.stabilizer(G, int(fam.D[0].witnesses[0]), "element")
    assert Su.order == 216
    B = autgrp.action_on_blocks(Su.elements, fam, list(fam.X_D[0]))
    assert B.is_2_transitive()
    with pytest.raises(ValueError):
        autgrp.stabilizer(G, 0, "flag")


def test_orbits_are_norm_trace_fibers(G):
    orbits = sorted(tuple(sorted(o)) for o in autgrp.orbit_classification(G))
    fibers = autgrp.norm_trace_fibers(2)
    assert len(orbits) == 4
    assert orbits == sorted(tuple(sorted(v)) for v in fibers.values())
    assert sum(map(len, orbits)) == 254


def test_named_elements_share_orbits(G):
    alg = octonions(2)
    nm = alg.named()
    orbit_of = {}
    for i, o in enumerate(autgrp.orbit_classification(G)):
        for c in o:
            orbit_of[c] = i
    code = lambda x: int(alg.encode(x))
    n0m0 = alg.mul(nm["n0"], nm["m0"])
    assert orbit_of[code(nm["p0"])] == orbit_of[code(n0m0)]
    other = alg.add(alg.add(nm["n0"], nm["m0"]), alg.mul(nm["m0"], nm["n0"]))
    assert orbit_of[code(nm["u"])] == orbit_of[code(other)]


def test_hermitian_form_over_D():
    alg = octonions(2)
    C = C_field()
    form = autgrp.herm_form(C)
    E = alg.elements()
    rng = np.random.default_rng(0)
    X = E[rng.integers(0, 256, size=100)]
    assert np.array_equal(form(X, X), alg.scale(alg.norm(X), alg.one))
    P = form.perp.elements()
    for x, y in zip(P[rng.integers(0, 64, 40)], P[rng.integers(0, 64, 40)]):
        assert np.array_equal(form(y, x), alg.conj(form(x, y)))
        assert C.space.contains(form(x, y))


def test_hermitian_form_nondegenerate_on_perp():
    C = C_field()
    form = autgrp.HermFormD(C)
    alg = form.alg
    g = form.gram()
    assert g.shape == (3, 3, 8)
    assert not np.array_equal(autgrp.det_in_D(alg, g), np.zeros(8, dtype=np.uint8))


def test_hermitian_form_needs_a_field():
    with pytest.raises(ValueError):
        autgrp.HermFormD(families(2).L[0])


def test_det_over_D_of_translations():
    alg = octonions(2)
    C = C_field()
    for c in C.space.elements()[1:]:
        # tau_c scales the 3-dim D-space by c, so the determinant is c^3 = 1
        assert np.array_equal(autgrp.det_over_D(autgrp.tau(C, c), C), alg.power(c, 3))
        assert np.array_equal(alg.power(c, 3), alg.one)


def test_det_over_D_requires_fixing_u(G, fam):
    D = fam.D[0]
    rows = np.flatnonzero(G.elements_action[:, fam.D[0].witnesses[0]] != fam.D[0].witnesses[0])
    with pytest.raises(ValueError):
        autgrp.det_over_D(G.matrices(rows[:1])[0], D)


def test_stabilizer_lies_in_special_unitary(G, fam):
    alg = fam.alg
    D = fam.D[0]
    rows, _ = autgrp.stabilizer(G, int(D.witnesses[0]), "element")
    form = autgrp.HermFormD(D)
    for M in G.matrices(rows):
        assert np.array_equal(autgrp.det_over_D(M, D, form), alg.one)


def test_factorized_order_deep_q3():
    # |H| * |Aut O_H| at q = 3
    fam = families(3)
    alg = fam.alg
    maps = autgrp.stabilizer_maps(matrix_copy(3), alg.w, 3)
    assert len(maps) == 576
    assert len(fam.H) * len(maps) == 3**6 * (3**6 - 1) * (3**2 - 1)
