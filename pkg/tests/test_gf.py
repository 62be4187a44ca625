import numpy as np
import pytest
from hypothesis import given, strategies as st

from g2unital.gf import (
    SUPPORTED_Q,
    FieldMismatchError,
    field,
    field_arith,
    find_delta,
    quadratic_extension,
    ext_norm_trace,
)


@pytest.mark.parametrize("q", SUPPORTED_Q)
def test_tables_form_a_field(q):
    F = field(q)
    a = np.arange(q)
    A, B, C = np.meshgrid(a, a, a, indexing="ij")
    assert np.array_equal(F.mul[A, F.add[B, C]], F.add[F.mul[A, B], F.mul[A, C]])
    assert np.array_equal(F.add[F.add[A, B], C], F.add[A, F.add[B, C]])
    assert np.array_equal(F.mul[F.mul[A, B], C], F.mul[A, F.mul[B, C]])
    for x in range(1, q):
        assert F.mul[x, F.inv[x]] == 1
        assert F.add[x, F.neg[x]] == 0
    # multiplicative group is cyclic
    assert len({F.pow(F.primitive, k) for k in range(q - 1)}) == q - 1


def test_f4_omega():
    F = field(4)
    w = 2  # the class of t
    assert F.mul[w, w] == F.add[w, 1]
    assert F.pow(w, 3) == 1


def test_tables_are_read_only():
    with pytest.raises(ValueError):
        field(4).mul[1, 1] = 0


@pytest.mark.parametrize("q,delta", [(2, 1), (3, 1), (4, 2), (8, 1), (9, 3)])
def test_find_delta(q, delta):
    d = find_delta(q)
    assert d.value == delta
    F = field(q)
    assert all(F.sub[F.sub[F.mul[r, r], r], delta] for r in range(q))


def test_field_elem_ops():
    F = field(9)
    x, y = F(5), F(7)
    assert (x + y) - y == x
    assert (x * y) / y == x
    assert x * x.inverse() == 1
    assert -x + x == 0
    assert x**8 == 1
    assert field_arith(x, y, "mul") == x * y
    assert field_arith(x, None, "inv") == x.inverse()


def test_division_by_zero():
    F = field(3)
    with pytest.raises(ZeroDivisionError):
        F(1) / F(0)


def test_mixing_fields_is_an_error():
    with pytest.raises(FieldMismatchError):
        field(4)(1) + field(2)(1)


@pytest.mark.parametrize("big", [4, 9, 16])
def test_quadratic_extension(big):
    ext = quadratic_extension(big)
    base = ext.base
    # the embedding is a ring map
    for a in range(base.q):
        for b in range(base.q):
            assert ext.embed[base.mul[a, b]] == ext.big.mul[ext.embed[a], ext.embed[b]]
            assert ext.embed[base.add[a, b]] == ext.big.add[ext.embed[a], ext.embed[b]]
    # norm is onto the nonzero base elements, q + 1 to one
    norms = [ext.norm_trace(x)[0] for x in range(1, big)]
    assert sorted(set(norms)) == list(range(1, base.q))
    assert all(norms.count(n) == base.q + 1 for n in set(norms))


def test_quadratic_extension_unsupported():
    with pytest.raises(ValueError):
        quadratic_extension(8)


def test_ext_norm_trace_of_conjugates():
    F = field(9)
    ext = quadratic_extension(9)
    for v in range(9):
        n, t = ext_norm_trace(F(v))
        assert (n, t) == ext_norm_trace(F(ext.conj(v)))


@given(st.sampled_from(SUPPORTED_Q), st.data())
def test_frobenius_is_additive(q, data):
    F = field(q)
    a = data.draw(st.integers(0, q - 1))
    b = data.draw(st.integers(0, q - 1))
    assert F.frobenius(F.add[a, b]) == F.add[F.frobenius(a), F.frobenius(b)]
    assert F.frobenius(F.mul[a, b]) == F.mul[F.frobenius(a), F.frobenius(b)]
