"""The verification suite, in dependency order.

Each check returns ``(expected, computed)``; it passes when the two are equal.
``source`` says where the expected value comes from: a closed formula, an
independent computation, or an identity that holds by construction.
"""

from __future__ import annotations

import itertools
import random
import time
from math import comb

import numpy as np

from . import autgrp, geometry, hermitian
from .compalg import octonions
from .gf import SUPPORTED_Q, field, find_delta
from .linalg import rank
from .report import CheckRecord, VerificationReport
from .subalg import Kind, Subspace, families, span_closure, span_dichotomy

VERIFY_Q = (2, 3)


# closed formulas -------------------------------------------------------------------------


def count_formulas(q: int) -> dict:
    return {
        "D": q**3 * (q * q + q + 1) * (q - 1) // 2,
        "X": q * (q * q + q + 1) * (q - 1) * (q + 1) * (q * q - q + 1) // 2,
        "H": q**4 * (q * q + q + 1) * (q * q - q + 1),
    }


def incidence_formulas(q: int) -> dict:
    return {
        "X_D": q**3 + 1,
        "H_D": q * q * (q * q - q + 1),
        "D_X": q * q,
        "D_H": q * (q - 1) // 2,
    }


def g2_order(q: int) -> int:
    return q**6 * (q**6 - 1) * (q * q - 1)


def quaternion_stabilizer_order(q: int) -> int:
    """|PGL2(q)| * |SL2(q)|."""
    sl2 = q * (q * q - 1)
    return sl2 * sl2


# individual checks -------------------------------------------------------------------------


def field_axioms():
    bad = []
    for q in SUPPORTED_Q:
        F = field(q)
        a = np.arange(q)
        A, B, C = np.meshgrid(a, a, a, indexing="ij")
        dist = F.mul[A, F.add[B, C]] == F.add[F.mul[A, B], F.mul[A, C]]
        inv = all(F.mul[x, F.inv[x]] == 1 for x in range(1, q))
        if not (dist.all() and inv):
            bad.append(q)
    return [], bad


def delta_irreducible():
    exp = {q: True for q in SUPPORTED_Q}
    got = {}
    for q in SUPPORTED_Q:
        F = field(q)
        d = int(find_delta(q))
        got[q] = all(F.sub[F.sub[F.mul[r, r], r], d] != 0 for r in range(q))
    return exp, got


def _pairs(alg, q, seed, sample):
    if q == 2:
        E = alg.elements()
        return E[:, None, :], E[None, :, :]
    rng = np.random.default_rng(seed)
    X = rng.integers(0, q, size=(sample, 8)).astype(np.uint8)
    Y = rng.integers(0, q, size=(sample, 8)).astype(np.uint8)
    return X, Y


def composition_law(q, seed=0, sample=20000):
    alg = octonions(q)
    X, Y = _pairs(alg, q, seed, sample)
    F = alg.F
    lhs = alg.norm(alg.mul(X, Y))
    rhs = F.mul[alg.norm(X), alg.norm(Y)]
    return 0, int(np.count_nonzero(lhs != rhs))


def conjugation_antiautomorphism(q, seed=0, sample=20000):
    alg = octonions(q)
    X, Y = _pairs(alg, q, seed, sample)
    lhs = alg.conj(alg.mul(X, Y))
    rhs = alg.mul(alg.conj(Y), alg.conj(X))
    return 0, int(np.count_nonzero(np.any(lhs != rhs, axis=-1)))


def alternative_laws(q, seed=0, sample=20000):
    alg = octonions(q)
    X, Y = _pairs(alg, q, seed, sample)
    left = alg.mul(X, alg.mul(X, Y)) != alg.mul(alg.mul(X, X), Y)
    right = alg.mul(alg.mul(Y, X), X) != alg.mul(Y, alg.mul(X, X))
    return 0, int(np.count_nonzero(np.any(left | right, axis=-1)))


def polar_nondegenerate(q):
    alg = octonions(q)
    return 8, rank(alg.gram, alg.F)


def family_counts(q):
    fam = families(q)
    got = {"D": len(fam.D), "X": len(fam.X), "H": len(fam.H)}
    return count_formulas(q), got


def nil_count(q):
    # no closed formula is used; the value is the brute-force enumeration itself
    return 63, len(families(q).L)


def incidence_sizes(q):
    fam = families(q)
    got = {
        "X_D": sorted({len(x) for x in fam.X_D}),
        "H_D": sorted({len(x) for x in fam.H_D}),
        "D_X": sorted({len(x) for x in fam.D_X}),
        "D_H": sorted({len(x) for x in fam.D_H}),
    }
    return {k: [v] for k, v in incidence_formulas(q).items()}, got


def flag_identities(q):
    fam = families(q)
    got = {
        "X": len(fam.X) * len(fam.D_X[0]) == len(fam.D) * len(fam.X_D[0]),
        "H": len(fam.H) * len(fam.D_H[0]) == len(fam.D) * len(fam.H_D[0]),
    }
    return {"X": True, "H": True}, got


def span_dichotomy_counts(q):
    fam = families(q)
    got = {Kind.MIXED_X.name: 0, Kind.QUATERNION_H.name: 0}
    for D, E in itertools.combinations(fam.D, 2):
        kind, _ = span_dichotomy(D, E)
        got[kind.name] = got.get(kind.name, 0) + 1
    f = incidence_formulas(q)
    c = count_formulas(q)
    exp = {
        Kind.MIXED_X.name: c["X"] * comb(f["D_X"], 2),
        Kind.QUATERNION_H.name: c["H"] * comb(f["D_H"], 2),
    }
    return exp, got


def unital_design(q):
    rep = geometry.check_design(geometry.build_U(q))
    n = q + 1
    return (
        {"v": n**3 + 1, "k": n + 1, "lambda": 1, "r": n * n},
        {"v": rep.v, "k": rep.k, "lambda": rep.lam, "r": rep.r},
    )


def onan_unital():
    r = geometry.onan_search(geometry.build_U(2))
    return {"configurations": 0, "examined": comb(63, 4)}, {
        "configurations": len(r.configurations),
        "examined": r.examined,
    }


def onan_projective_plane():
    # four lines in general position: choose 4 of 13 lines, no 3 concurrent
    d = geometry.projective_plane(3)
    expected = sum(
        1
        for quad in itertools.combinations(range(d.b), 4)
        if all(not (set(d.blocks[a]) & set(d.blocks[b]) & set(d.blocks[c])) for a, b, c in itertools.combinations(quad, 3))
    )
    return expected, len(geometry.onan_search(d).configurations)


def joining_blocks_agree():
    fam = families(2)
    block = fam.block_of_points
    agree = 0
    for D, E in itertools.combinations(range(len(fam.D)), 2):
        r = geometry.joining_block_points(D, E)
        if r.points in block and len(r.involutions) == 2:
            agree += 1
    return comb(len(fam.D), 2), agree


def translations_all():
    U = geometry.build_U(2)
    return True, geometry.translations_check(U, geometry.translation_groups(2))


def alpha_equals_tau():
    alg = octonions(2)
    C = span_closure([alg.named()["u"]], 2)
    M = Subspace.from_vectors(alg.basis[:4], 2)
    cs = [c for c in C.space.elements() if np.any(c)]
    got = [autgrp.alpha(M, alg.w, c, c, q=2) == autgrp.tau(C, c) for c in cs]
    return [True] * 3, got


def matrix_stabilizer_orbit():
    alg = octonions(2)
    nm = alg.named()
    C = span_closure([nm["u"]], 2)
    M = Subspace.from_vectors(alg.basis[:4], 2)
    n0w = alg.mul(nm["n0"], alg.w)
    Ts = [t for t in M.elements() if alg.norm(t) == 1]
    Ss = [s for s in C.space.elements() if np.any(s)]
    orbit = {int(alg.encode(autgrp.alpha(M, alg.w, s, t, q=2)(n0w))) for s in Ss for t in Ts}
    return 9, len(orbit)


def group_order():
    G = autgrp.full_group(2)
    return g2_order(2), G.order


def group_faithful():
    G = autgrp.full_group(2)
    return {"faithful": True, "kernel": 1}, {"faithful": G.faithful, "kernel": G.kernel_order}


def group_doubly_transitive():
    return True, autgrp.full_group(2).points.is_2_transitive()


def group_factorized(q: int = 2):
    fam = families(q)
    alg = fam.alg
    M = Subspace.from_vectors(alg.basis[:4], q)
    stab = len(autgrp.stabilizer_maps(M, alg.w, q))
    return g2_order(q), len(fam.H) * stab


def group_derived():
    return g2_order(2) // 2, autgrp.full_group(2).points.derived_subgroup().order


def stabilizer_orders():
    G = autgrp.full_group(2)
    fam = families(2)
    _, SD = autgrp.stabilizer(G, 0, "point")
    _, Su = autgrp.stabilizer(G, int(fam.D[0].witnesses[0]), "element")
    q = 2
    return (
        {"D": 2 * q**3 * (q**3 + 1) * (q * q - 1), "u_D": q**3 * (q**3 + 1) * (q * q - 1)},
        {"D": SD.order, "u_D": Su.order},
    )


def stabilizer_on_blocks():
    G = autgrp.full_group(2)
    fam = families(2)
    _, Su = autgrp.stabilizer(G, int(fam.D[0].witnesses[0]), "element")
    B = autgrp.action_on_blocks(Su.elements, fam, list(fam.X_D[0]))
    return True, B.is_2_transitive()


def stabilizer_special_unitary():
    """Every automorphism fixing ``u_D`` has D-determinant 1 and preserves the form."""
    G = autgrp.full_group(2)
    fam = families(2)
    alg = fam.alg
    D = fam.D[0]
    rows, _ = autgrp.stabilizer(G, int(D.witnesses[0]), "element")
    form = autgrp.HermFormD(D)
    P = form.perp.array()
    g0 = form(P[:, None, :], P[None, :, :])
    det_ok = pres_ok = 0
    for Mx in G.matrices(rows):
        if np.array_equal(autgrp.det_over_D(Mx, D, form), alg.one):
            det_ok += 1
        FP = autgrp.linalg.dot(P, Mx, alg.F)
        if np.array_equal(form(FP[:, None, :], FP[None, :, :]), g0):
            pres_ok += 1
    n = len(rows)
    return {"det_one": n, "preserves_form": n}, {"det_one": det_ok, "preserves_form": pres_ok}


def orbits_are_fibers():
    G = autgrp.full_group(2)
    orbits = sorted(tuple(sorted(o)) for o in autgrp.orbit_classification(G))
    fibers = sorted(tuple(sorted(v)) for v in autgrp.norm_trace_fibers(2).values())
    return {"count": 4, "match": True}, {"count": len(orbits), "match": orbits == fibers}


def hermitian_unital_3():
    rep = geometry.check_design(hermitian.build_hermitian_unital(3))
    return {"v": 28, "b": 63, "k": 4, "lambda": 1}, {"v": rep.v, "b": rep.b, "k": rep.k, "lambda": rep.lam}


def hermitian_group_orders():
    C = hermitian.pgammau_group(3)
    return (
        {"full": 12096, "derived": 6048, "linear": 6048, "doubly_transitive": True},
        {
            "full": C.full.order,
            "derived": C.full.derived_subgroup().order,
            "linear": C.linear.order,
            "doubly_transitive": C.full.is_2_transitive(),
        },
    )


def hermitian_scalar_kernels():
    k = hermitian.scalar_kernel_orders(3)
    # scalars preserving the form: up to a factor (all of F9*), exactly (lambda^4 = 1), with det 1
    return {"similitude": 8, "unitary": 4, "special_unitary": 1}, {
        "similitude": k.similitude,
        "unitary": k.unitary,
        "special_unitary": k.special_unitary,
    }


def hermitian_2_affine():
    H2 = hermitian.build_hermitian_unital(2)
    return True, geometry.iso_search(H2, geometry.affine_plane_3()) is not None


def unital_isomorphic():
    U = geometry.build_U(2)
    H3 = hermitian.build_hermitian_unital(3)
    phi = geometry.iso_search(U, H3)
    return True, phi is not None and geometry.is_isomorphism(U, H3, phi)


def pencils_affine():
    AG = geometry.affine_plane_3()
    got = {"blocks": set(), "isomorphic": 0}
    for D in range(28):
        P = geometry.pencil_plane(D)
        got["blocks"].add(P.b)
        got["isomorphic"] += geometry.iso_search(P, AG) is not None
    got["blocks"] = sorted(got["blocks"])
    return {"blocks": [12], "isomorphic": 28}, got


def group_isomorphism():
    r = hermitian.group_iso_check()
    return (
        {"equal": True, "derived_equal": True, "stabilizer": 432},
        {"equal": r.equal, "derived_equal": r.derived_equal, "stabilizer": r.stabilizer_order},
    )


def gamma_components(q):
    comps = geometry.gamma_graph(q).components()
    got = {"components": len(comps), "sizes": sorted({len(c) for c in comps})}
    if q == 2:
        return {"components": 4, "sizes": [3]}, got
    return {"components": 1, "sizes": [q**4 + q * q + 1 - (q**3 + 1)]}, got


def deep_factorized(q):
    """``|H| * |Aut O_H|`` with the stabilizer counted as distinct alpha maps."""
    return group_factorized(q)


# the suite -----------------------------------------------------------------------------------


def suite(q: int, seed: int = 0, deep: bool = False) -> list:
    """``(id, anchor, source, thunk)`` in dependency order."""
    S = [
        ("fields.axioms", "table arithmetic is a field for every supported q", "trivial", field_axioms),
        ("fields.delta", "x^2 - x - delta is irreducible", "oracle", delta_irreducible),
        ("algebra.composition", "N(xy) = N(x) N(y)", "trivial", lambda: composition_law(q, seed)),
        ("algebra.conjugation", "conj(xy) = conj(y) conj(x)", "trivial", lambda: conjugation_antiautomorphism(q, seed)),
        ("algebra.alternative", "x(xy) = (xx)y and (yx)x = y(xx)", "trivial", lambda: alternative_laws(q, seed)),
        ("algebra.polar_rank", "polar form is nondegenerate", "trivial", lambda: polar_nondegenerate(q)),
        ("enum.counts", "sizes of the families D, X, H", "formula", lambda: family_counts(q)),
        ("enum.incidence", "uniform incidence numbers", "formula", lambda: incidence_sizes(q)),
        ("enum.flags", "flag double counting", "trivial", lambda: flag_identities(q)),
    ]
    if q == 2:
        S += [
            ("enum.nil", "two-dimensional subalgebras with zero multiplication", "oracle", lambda: nil_count(q)),
            ("enum.span_dichotomy", "two quadratic subfields span an X or an H", "formula", lambda: span_dichotomy_counts(q)),
            ("unital.design", "U is a unital of order q + 1", "formula", lambda: unital_design(q)),
            ("onan.unital", "no O'Nan configurations in U", "trivial", onan_unital),
            ("onan.projective_plane", "quadrilaterals of PG(2,3) are found", "oracle", onan_projective_plane),
            ("unital.joining_blocks", "element orders locate the joining block", "trivial", joining_blocks_agree),
            ("translations.alpha_tau", "alpha with s = t = c is the translation by c", "oracle", alpha_equals_tau),
            ("translations.orbit", "orbit of n0 w under the matrix stabilizer", "oracle", matrix_stabilizer_orbit),
            ("translations.all", "U admits all translations", "oracle", translations_all),
            ("group.order", "order of Aut O", "formula", group_order),
            ("group.faithful", "Aut O acts faithfully on D", "oracle", group_faithful),
            ("group.doubly_transitive", "Aut O is doubly transitive on D", "oracle", group_doubly_transitive),
            ("group.factorized", "|H| times the order of a quaternion stabilizer", "formula", lambda: group_factorized(2)),
            ("group.derived", "commutator subgroup has index 2", "formula", group_derived),
            ("stabilizer.orders", "stabilizers of a point and of its generator", "formula", stabilizer_orders),
            ("stabilizer.blocks", "generator stabilizer is doubly transitive on the pencil", "oracle", stabilizer_on_blocks),
            ("stabilizer.special_unitary", "generator stabilizer lies in SU of the form over D", "oracle", stabilizer_special_unitary),
            ("orbits.norm_trace", "orbits on non-central elements are (norm, trace) fibers", "oracle", orbits_are_fibers),
        ]
    if q in (2, 3):
        S += [
            ("hermitian.unital", "H(3) is a 2-(28,4,1) design", "formula", hermitian_unital_3),
            ("hermitian.groups", "semi-similitude group and its commutator subgroup", "formula", hermitian_group_orders),
            ("hermitian.scalars", "scalar matrices in GU, U and SU of F9^3", "oracle", hermitian_scalar_kernels),
            ("hermitian.order_2", "H(2) is the affine plane of order 3", "oracle", hermitian_2_affine),
        ]
    if q == 2:
        S += [
            ("iso.unital", "U is isomorphic to H(3)", "oracle", unital_isomorphic),
            ("iso.pencils", "every pencil is an affine plane of order 3", "oracle", pencils_affine),
            ("iso.groups", "Aut O and the semi-similitude group coincide on 28 points", "oracle", group_isomorphism),
        ]
    S.append(("gamma.components", "components of the nonisotropic-point graph", "formula", lambda: gamma_components(q)))
    if deep and q != 2:
        S.append(("group.factorized_deep", "|H| times the order of a quaternion stabilizer", "formula", lambda: deep_factorized(q)))
    return S


def run_checks(q: int = 2, seed: int = 0, deep: bool = False, timing: bool = True, only=None) -> VerificationReport:
    if q not in VERIFY_Q:
        raise ValueError(f"verify supports q in {VERIFY_Q}, not {q}")
    random.seed(seed)
    rep = VerificationReport(config={"q": q, "seed": seed, "deep": deep, "delta": int(find_delta(q))})
    for cid, anchor, source, thunk in suite(q, seed, deep):
        if only is not None and not any(cid.startswith(p) for p in only):
            continue
        t0 = time.perf_counter()
        expected, computed = thunk()
        ms = round((time.perf_counter() - t0) * 1000, 1) if timing else None
        rep.add(CheckRecord(cid, anchor, expected, computed, expected == computed, ms, source))
    return rep
