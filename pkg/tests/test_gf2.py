import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from oracles import xor_rank
from stsphase import gf2

matrices = st.integers(1, 8).flatmap(
    lambda r: st.integers(1, 140).flatmap(
        lambda c: arrays(np.uint8, (r, c), elements=st.integers(0, 1))
    )
)


def _ints(dense):
    return [int("".join(map(str, row[::-1])), 2) for row in dense]


@settings(max_examples=150)
@given(matrices)
def test_pack_roundtrip(m):
    packed = gf2.pack_rows(m)
    assert np.array_equal(gf2.unpack_rows(packed, m.shape[1]), m)


@settings(max_examples=150)
@given(matrices)
def test_rank_matches_xor_basis(m):
    assert gf2.rank(gf2.pack_rows(m), range(m.shape[1])) == xor_rank(_ints(m))


@settings(max_examples=100)
@given(matrices)
def test_nullspace_is_kernel_of_transpose_product(m):
    c = m.shape[1]
    w = gf2.words_for(c)
    ns = gf2.unpack_rows(gf2.nullspace(gf2.pack_rows(m, w), range(c), w), c)
    assert ns.shape[0] == c - xor_rank(_ints(m))
    assert not ((m.astype(int) @ ns.T.astype(int)) % 2).any()


@settings(max_examples=100)
@given(matrices, st.data())
def test_solve_finds_combination(m, data):
    coeff = data.draw(arrays(np.uint8, (m.shape[0],), elements=st.integers(0, 1)))
    target = (coeff.astype(int) @ m.astype(int)) % 2
    w = gf2.words_for(m.shape[1])
    sol = gf2.solve(gf2.pack_rows(m, w), gf2.pack_rows(target[None, :], w)[0], range(m.shape[1]))
    assert sol is not None
    assert np.array_equal((sol.astype(int) @ m.astype(int)) % 2, target)


def test_solve_reports_unreachable():
    m = np.array([[1, 0, 0], [0, 1, 0]], dtype=np.uint8)
    assert gf2.solve(gf2.pack_rows(m), gf2.pack_rows(np.array([[0, 0, 1]]))[0], range(3)) is None


def test_empty_inputs():
    assert gf2.unpack_rows(np.zeros((0, 2), dtype=np.uint64), 10).shape == (0, 10)
    assert gf2.rank(np.zeros((0, 1), dtype=np.uint64), range(5)) == 0
