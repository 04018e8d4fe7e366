"""Phase-tracked Pauli operators in binary symplectic form.

An operator on N qubits is stored as two N-bit integers (the X part and the
Z part; a qubit carrying Y has both bits set) plus ``phase_exp``, the power
of i that multiplies the literal product of Hermitian letters.  Python
integers are arbitrary-length packed words, so XOR/AND/popcount act on all
qubits at once.

Letter composition follows X·Z = -iY, Z·X = +iY, X·Y = +iZ and cyclic.
Internally a product is evaluated in the "XZ form" i^e X^x Z^z, where
moving Z^z1 past X^x2 costs (-1)^(z1·x2); a Y letter contributes one
factor of i when converting between the two forms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import DimensionError, InputError

__all__ = [
    "PauliOperator",
    "SupportSet",
    "multiply",
    "commutes",
    "restrict",
    "weight",
    "parse_pauli",
]

_LETTER_BITS = {"I": (0, 0), "_": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_LETTER = {(0, 0): "_", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}
_PHASE_PREFIX = {0: "+", 1: "+i", 2: "-", 3: "-i"}
_PREFIX_PHASE = {"": 0, "+": 0, "+i": 1, "i": 1, "-": 2, "-i": 3}
_TEXT_RE = re.compile(r"^\s*([+-]?i?)\s*([IXYZ_|\s]*)$")


@dataclass(frozen=True, slots=True)
class SupportSet:
    """Strictly increasing tuple of qubit indices."""

    indices: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        idx = tuple(int(i) for i in self.indices)
        object.__setattr__(self, "indices", idx)
        for a, b in zip(idx, idx[1:]):
            if a >= b:
                raise InputError("support indices must be unique and increasing")
        if idx and idx[0] < 0:
            raise InputError("support indices must be non-negative")

    @classmethod
    def of(cls, qubits: Iterable[int]) -> "SupportSet":
        """Normalize any iterable of indices (sorting, dropping repeats)."""
        return cls(tuple(sorted(set(int(q) for q in qubits))))

    @classmethod
    def from_mask(cls, mask: int) -> "SupportSet":
        return cls(tuple(_iter_bits(mask)))

    @property
    def mask(self) -> int:
        m = 0
        for i in self.indices:
            m |= 1 << i
        return m

    def complement(self, n_qubits: int) -> "SupportSet":
        inside = set(self.indices)
        return SupportSet(tuple(q for q in range(n_qubits) if q not in inside))

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __contains__(self, q: object) -> bool:
        return q in self.indices


def _iter_bits(value: int) -> Iterator[int]:
    while value:
        low = value & -value
        yield low.bit_length() - 1
        value ^= low


@dataclass(frozen=True, slots=True)
class PauliOperator:
    """Immutable Pauli operator ``i**phase_exp`` times a string of letters."""

    n_qubits: int
    x_bits: int = 0
    z_bits: int = 0
    phase_exp: int = 0

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            raise DimensionError("a Pauli operator needs at least one qubit")
        limit = 1 << self.n_qubits
        if not (0 <= self.x_bits < limit and 0 <= self.z_bits < limit):
            raise DimensionError("bit-vector longer than n_qubits")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    # construction -------------------------------------------------------
    @classmethod
    def identity(cls, n_qubits: int) -> "PauliOperator":
        return cls(n_qubits)

    @classmethod
    def single(cls, n_qubits: int, qubit: int, letter: str) -> "PauliOperator":
        if not 0 <= qubit < n_qubits:
            raise DimensionError(f"qubit {qubit} out of range for N={n_qubits}")
        try:
            x, z = _LETTER_BITS[letter]
        except KeyError:
            raise InputError(f"unknown Pauli letter {letter!r}") from None
        return cls(n_qubits, x << qubit, z << qubit)

    @classmethod
    def from_letters(
        cls, n_qubits: int, letters: Mapping[int, str], phase_exp: int = 0
    ) -> "PauliOperator":
        """Build from ``{qubit: letter}``; each qubit appears once."""
        x = z = 0
        for q, letter in letters.items():
            if not 0 <= q < n_qubits:
                raise DimensionError(f"qubit {q} out of range for N={n_qubits}")
            try:
                bx, bz = _LETTER_BITS[letter]
            except KeyError:
                raise InputError(f"unknown Pauli letter {letter!r}") from None
            x |= bx << q
            z |= bz << q
        return cls(n_qubits, x, z, phase_exp)

    @classmethod
    def from_string(cls, text: str) -> "PauliOperator":
        return parse_pauli(text)

    # queries ------------------------------------------------------------
    @property
    def weight(self) -> int:
        return (self.x_bits | self.z_bits).bit_count()

    @property
    def support(self) -> SupportSet:
        return SupportSet.from_mask(self.x_bits | self.z_bits)

    @property
    def is_identity(self) -> bool:
        return self.x_bits == 0 and self.z_bits == 0

    @property
    def is_hermitian(self) -> bool:
        return self.phase_exp % 2 == 0

    @property
    def y_count(self) -> int:
        return (self.x_bits & self.z_bits).bit_count()

    @property
    def xz_phase(self) -> int:
        """Exponent e in ``i**e X**x Z**z`` (each Y equals i·X·Z)."""
        return (self.phase_exp + self.y_count) % 4

    def letter(self, qubit: int) -> str:
        bits = ((self.x_bits >> qubit) & 1, (self.z_bits >> qubit) & 1)
        return "I" if bits == (0, 0) else _BITS_LETTER[bits]

    def letters(self) -> dict[int, str]:
        return {q: self.letter(q) for q in _iter_bits(self.x_bits | self.z_bits)}

    # algebra ------------------------------------------------------------
    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        return multiply(self, other)

    def commutes_with(self, other: "PauliOperator") -> bool:
        return commutes(self, other)

    def inverse(self) -> "PauliOperator":
        return PauliOperator(self.n_qubits, self.x_bits, self.z_bits, -self.phase_exp)

    def with_phase(self, phase_exp: int) -> "PauliOperator":
        return PauliOperator(self.n_qubits, self.x_bits, self.z_bits, phase_exp)

    def unsigned(self) -> "PauliOperator":
        return self.with_phase(0)

    def same_letters(self, other: "PauliOperator") -> bool:
        return (self.n_qubits, self.x_bits, self.z_bits) == (
            other.n_qubits,
            other.x_bits,
            other.z_bits,
        )

    # text ---------------------------------------------------------------
    def to_string(self, group: int | None = None) -> str:
        chars = [
            _BITS_LETTER[((self.x_bits >> q) & 1, (self.z_bits >> q) & 1)]
            for q in range(self.n_qubits)
        ]
        if group and group > 0:
            body = " ".join(
                "".join(chars[i : i + group]) for i in range(0, len(chars), group)
            )
        else:
            body = "".join(chars)
        return _PHASE_PREFIX[self.phase_exp] + body

    def __str__(self) -> str:
        return self.to_string()


def _check_sizes(a: PauliOperator, b: PauliOperator) -> None:
    if a.n_qubits != b.n_qubits:
        raise DimensionError(
            f"operators act on {a.n_qubits} and {b.n_qubits} qubits"
        )


def multiply(a: PauliOperator, b: PauliOperator) -> PauliOperator:
    """Return the product a·b with its phase."""
    _check_sizes(a, b)
    x = a.x_bits ^ b.x_bits
    z = a.z_bits ^ b.z_bits
    e = a.xz_phase + b.xz_phase + 2 * (a.z_bits & b.x_bits).bit_count()
    return PauliOperator(a.n_qubits, x, z, e - (x & z).bit_count())


def commutes(a: PauliOperator, b: PauliOperator) -> bool:
    """True iff the symplectic product x_a·z_b + z_a·x_b vanishes mod 2."""
    _check_sizes(a, b)
    return ((a.x_bits & b.z_bits) ^ (a.z_bits & b.x_bits)).bit_count() % 2 == 0


def restrict(p: PauliOperator, s: SupportSet | Iterable[int]) -> PauliOperator:
    """Keep the letters on ``s``; the phase is reset to 0."""
    if not isinstance(s, SupportSet):
        s = SupportSet.of(s)
    if s.indices and s.indices[-1] >= p.n_qubits:
        raise DimensionError(f"qubit {s.indices[-1]} out of range for N={p.n_qubits}")
    m = s.mask
    return PauliOperator(p.n_qubits, p.x_bits & m, p.z_bits & m, 0)


def weight(p: PauliOperator) -> int:
    return p.weight


def parse_pauli(text: str) -> PauliOperator:
    """Parse ``[+|-|+i|-i]`` followed by letters ``I X Y Z _``.

    Spaces and ``|`` may separate cell groups and are ignored.
    """
    m = _TEXT_RE.match(text)
    if m is None:
        raise InputError(f"cannot parse Pauli string {text!r}")
    prefix, body = m.groups()
    letters = [c for c in body if c not in " \t|"]
    if not letters:
        raise InputError(f"Pauli string {text!r} has no qubits")
    x = z = 0
    for q, c in enumerate(letters):
        bx, bz = _LETTER_BITS[c]
        x |= bx << q
        z |= bz << q
    return PauliOperator(len(letters), x, z, _PREFIX_PHASE[prefix])
