import itertools

import numpy as np
import pytest

import oracle
from g2unital import geometry as geo
from g2unital.subalg import families


@pytest.fixture(scope="module")
def U():
    return geo.build_U(2)


def test_unital_parameters(U):
    assert U.v == 28 and U.b == 63
    assert {len(b) for b in U.blocks} == {4}
    rep = geo.check_design(U)
    assert (rep.v, rep.k, rep.lam, rep.r, rep.is_2_design) == (28, 4, 1, 9, True)
    assert rep.describe() == "2-(28,4,1), r = 9"


def test_unital_is_a_linear_space(U):
    through = {}
    for i, b in enumerate(U.blocks):
        for pair in itertools.combinations(b, 2):
            through.setdefault(pair, []).append(i)
    assert len(through) == 378 and all(len(v) == 1 for v in through.values())


def test_single_block_design():
    d = geo.Design.from_blocks([(0, 1, 2, 3)])
    assert geo.check_design(d).describe() == "2-(4,4,1), r = 1"


def test_non_uniform_design_is_reported():
    d = geo.Design.from_blocks([(0, 1, 2), (2, 3)])
    rep = geo.check_design(d)
    assert not rep.is_2_design and rep.k is None
    with pytest.raises(ValueError):
        geo.check_design(geo.Design.from_blocks([], 3))


def test_design_validates_blocks():
    with pytest.raises(ValueError):
        geo.Design.from_blocks([(0, 5)], 3)


def test_onan_unital_empty(U, backend):
    r = geo.onan_search(U)
    assert r.configurations == ()
    assert r.examined == 595665
    assert r.summary() == "0 configurations found; 595665 block 4-subsets examined"


def test_onan_projective_plane(backend):
    # frozen from oracle.onan_count_bruteforce(oracle.pg23_lines()): 234
    r = geo.onan_search(geo.projective_plane(3))
    assert len(r.configurations) == 234


def test_onan_needs_four_blocks():
    d = geo.Design.from_blocks([(0, 1), (1, 2), (0, 2)])
    assert geo.onan_search(d).configurations == ()


def test_onan_is_deterministic(U):
    d = geo.projective_plane(3)
    assert geo.onan_search(d) == geo.onan_search(d)


def test_iso_identity_first(U):
    assert geo.iso_search(U, U) == tuple(range(28))


def test_iso_parameter_mismatch(U):
    assert geo.iso_search(U, geo.projective_plane(3)) is None


def test_iso_finds_hidden_relabelling(U):
    rng = np.random.default_rng(11)
    perm = rng.permutation(28)
    V = U.relabel(perm)
    phi = geo.iso_search(U, V)
    assert phi is not None and geo.is_isomorphism(U, V, phi)


def test_iso_none_for_non_isomorphic():
    # two 2-(7,3,1)-sized block sets, one a Fano plane, one not
    fano = geo.Design.from_blocks([(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)])
    other = geo.Design.from_blocks([(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 6)])
    assert geo.iso_search(fano, other) is None


def test_affine_and_projective_planes():
    ag = geo.affine_plane_3()
    assert geo.check_design(ag).describe() == "2-(9,3,1), r = 4"
    pg = geo.projective_plane(3)
    assert geo.check_design(pg).describe() == "2-(13,4,1), r = 4"


@pytest.mark.parametrize("D", range(28))
def test_pencil_plane_is_affine(D):
    P = geo.pencil_plane(D)
    assert P.v == 9 and P.b == 12
    assert geo.iso_search(P, geo.affine_plane_3()) is not None


def test_pencil_plane_only_q2():
    with pytest.raises(NotImplementedError):
        geo.pencil_plane(0, q=3)


def test_gamma_q2():
    g = geo.gamma_graph(2)
    # frozen from oracle.gamma_components(2): 12 vertices, four components of 3
    assert len(g.vertices) == 12
    assert sorted(map(len, g.components())) == [3, 3, 3, 3]


def test_gamma_q3_connected():
    g = geo.gamma_graph(3)
    assert len(g.vertices) == 63
    assert len(g.components()) == 1


def test_gamma_q4_connected():
    assert len(geo.gamma_graph(4).components()) == 1


def test_gamma_matches_oracle():
    for q in (2, 3):
        n, sizes = oracle.gamma_components(q)
        g = geo.gamma_graph(q)
        assert (len(g.vertices), sorted(map(len, g.components()))) == (n, sizes)


def test_gamma_bad_q():
    with pytest.raises(ValueError):
        geo.gamma_graph(5)


def test_graph_without_edges():
    g = geo.Graph((0, 1, 2), ())
    assert g.components() == [(0,), (1,), (2,)]
    assert g.degree() == [0, 0, 0]


def test_joining_block_points_all_pairs():
    fam = families(2)
    for D, E in itertools.combinations(range(28), 2):
        r = geo.joining_block_points(D, E)
        assert r.points in fam.block_of_points
        assert len(r.involutions) == 2
        assert sum(1 for _, o in r.orders if o == 3) == 6
        assert r.pattern in ("de", "d2e")


def test_joining_block_points_errors():
    with pytest.raises(ValueError):
        geo.joining_block_points(3, 3)
    with pytest.raises(NotImplementedError):
        geo.joining_block_points(0, 1, q=3)


def test_translations(U):
    assert geo.translations_check(U, geo.translation_groups(2))


def test_translations_single_block_fails():
    d = geo.Design.from_blocks([(0, 1, 2, 3)])
    ident = [np.arange(4)]
    assert not geo.translations_check(d, {p: ident for p in range(4)})


def test_design_text_roundtrip(U):
    text = geo.design_to_text(U)
    assert text.splitlines()[0] == "points 28 blocks 63"
    assert geo.design_from_text(text) == U
    with pytest.raises(ValueError):
        geo.design_from_text("vertices 3\n0 1\n")
    with pytest.raises(ValueError):
        geo.design_from_text("points 3 blocks 2\n0 1\n")


def test_dot_export():
    dot = geo.graph_to_dot(geo.gamma_graph(2))
    assert dot.startswith("graph gamma {")
    assert dot.count(" -- ") == len(geo.gamma_graph(2).edges)


def test_build_V():
    V = geo.build_V(2)
    # each H holds a single D at q = 2, so the 336 H-blocks collapse to 28 singletons
    assert V.b == 63 + 28
    assert {len(b) for b in V.blocks} == {1, 4}
