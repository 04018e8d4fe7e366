from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from stsphase.pauli import PauliOperator  # noqa: E402


def paulis(n: int, with_phase: bool = True) -> st.SearchStrategy[PauliOperator]:
    limit = (1 << n) - 1
    phase = st.integers(0, 3) if with_phase else st.just(0)
    return st.builds(
        PauliOperator, st.just(n), st.integers(0, limit), st.integers(0, limit), phase
    )


@pytest.fixture
def five_qubit_gens() -> list[PauliOperator]:
    return [PauliOperator.from_string(s) for s in ("XZZXI", "IXZZX", "XIXZZ", "ZXIXZ")]


def _clifford_scramble(x: list[int], z: list[int], n: int, rng) -> tuple[list[int], list[int]]:
    """Apply random H, S and CNOT gates to the symplectic rows (signs ignored)."""
    for _ in range(6 * n):
        kind = rng.integers(3)
        a = int(rng.integers(n))
        if kind == 0:  # H swaps x and z
            for i in range(len(x)):
                bx, bz = (x[i] >> a) & 1, (z[i] >> a) & 1
                x[i] ^= (bx ^ bz) << a
                z[i] ^= (bx ^ bz) << a
        elif kind == 1:  # S: z += x
            for i in range(len(x)):
                z[i] ^= ((x[i] >> a) & 1) << a
        else:
            b = int(rng.integers(n))
            if a == b:
                continue
            for i in range(len(x)):
                x[i] ^= ((x[i] >> a) & 1) << b
                z[i] ^= ((z[i] >> b) & 1) << a
    return x, z


def random_stabilizer_gens(n: int, r: int, seed: int) -> list[PauliOperator]:
    """r independent commuting Hermitian Paulis on n qubits."""
    import numpy as np

    rng = np.random.default_rng(seed)
    x = [0] * r
    z = [1 << i for i in range(r)]
    x, z = _clifford_scramble(x, z, n, rng)
    return [PauliOperator(n, xi, zi, 0) for xi, zi in zip(x, z)]
