import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import paulis
from oracles import dense
from stsphase.errors import DimensionError, InputError
from stsphase.pauli import PauliOperator, SupportSet, commutes, multiply, parse_pauli, restrict


def test_single_letter_products():
    x = PauliOperator.from_string("X")
    y = PauliOperator.from_string("Y")
    z = PauliOperator.from_string("Z")
    assert x * y == PauliOperator.from_string("+iZ")
    assert y * x == PauliOperator.from_string("-iZ")
    assert z * x == PauliOperator.from_string("+iY")
    assert x * x == PauliOperator.identity(1)


def test_parse_and_format_roundtrip():
    p = parse_pauli("-iXY_Z")
    assert p.phase_exp == 3
    assert p.to_string() == "-iXY_Z"
    assert p.to_string(group=2) == "-iXY _Z"
    assert parse_pauli("XY|_Z").same_letters(p)


@pytest.mark.parametrize("bad", ["", "+", "XQ", "*X"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(InputError):
        parse_pauli(bad)


def test_size_mismatch():
    with pytest.raises(DimensionError):
        multiply(PauliOperator.identity(2), PauliOperator.identity(3))
    with pytest.raises(DimensionError):
        restrict(PauliOperator.identity(2), [5])


def test_weight_support_restrict():
    p = parse_pauli("-X_YZ")
    assert p.weight == 3
    assert list(p.support) == [0, 2, 3]
    r = restrict(p, [2, 3])
    assert r.to_string() == "+__YZ"
    assert SupportSet.of([3, 0]).complement(4) == SupportSet.of([1, 2])


@settings(max_examples=200)
@given(paulis(3), paulis(3))
def test_product_matches_dense_matrices(a, b):
    assert np.allclose(dense(a * b), dense(a) @ dense(b))


@settings(max_examples=200)
@given(paulis(3), paulis(3))
def test_commutation_matches_dense(a, b):
    da, db = dense(a), dense(b)
    assert commutes(a, b) == np.allclose(da @ db, db @ da)


@settings(max_examples=10_000, deadline=None)
@given(paulis(6), paulis(6), paulis(6))
def test_multiply_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(paulis(5))
def test_inverse(p):
    assert p * p.inverse() == PauliOperator.identity(5)


@given(paulis(4), st.integers(0, 3))
def test_hermitian_iff_real_phase(p, e):
    q = p.with_phase(e)
    d = dense(q)
    assert q.is_hermitian == np.allclose(d, d.conj().T)
