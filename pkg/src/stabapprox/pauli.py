"""Pauli strings in binary symplectic form.

An n-qubit Pauli string is stored as two integer bit masks ``x`` and ``z``;
bit q of each mask refers to qubit q.  The single-qubit letter on qubit q is

    (x, z) = (0, 0) -> I,  (1, 0) -> X,  (1, 1) -> Y,  (0, 1) -> Z

Labels are written with qubit 0 as the *rightmost* character, so the label
``"ZXIX"`` is Z on qubit 3, X on qubits 2 and 0.

Phases are tracked as an exponent of i modulo 4.  The bare string (x, z)
always denotes the Hermitian operator, i.e. Y and not XZ.
"""
from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "PauliString",
    "SignedPauli",
    "PauliParseError",
    "DimensionError",
    "parse_label",
    "format_label",
    "parse_signed",
    "multiply",
    "commutes",
]

_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_LETTER = {v: k for k, v in _LETTER_BITS.items()}


class PauliParseError(ValueError):
    """Raised for malformed Pauli labels."""


class DimensionError(ValueError):
    """Raised when operands act on different numbers of qubits."""


def _popcount(v: int) -> int:
    return bin(v).count("1")


@dataclass(frozen=True)
class PauliString:
    num_qubits: int
    x: int = 0
    z: int = 0

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError("num_qubits must be positive")
        limit = 1 << self.num_qubits
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise ValueError(f"bit masks do not fit in {self.num_qubits} qubits")

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        return parse_label(label)

    @classmethod
    def identity(cls, num_qubits: int) -> "PauliString":
        return cls(num_qubits)

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    @property
    def weight(self) -> int:
        return _popcount(self.x | self.z)

    @property
    def y_count(self) -> int:
        return _popcount(self.x & self.z)

    def symplectic(self) -> int:
        """Packed 2n-bit vector, x bits high and z bits low."""
        return (self.x << self.num_qubits) | self.z

    @classmethod
    def from_symplectic(cls, num_qubits: int, v: int) -> "PauliString":
        mask = (1 << num_qubits) - 1
        return cls(num_qubits, v >> num_qubits, v & mask)

    def letter(self, qubit: int) -> str:
        return _BITS_LETTER[(self.x >> qubit) & 1, (self.z >> qubit) & 1]

    def support(self) -> list[int]:
        return [q for q in range(self.num_qubits) if ((self.x | self.z) >> q) & 1]

    def __str__(self) -> str:
        return format_label(self)


@dataclass(frozen=True)
class SignedPauli:
    """The operator ``i**phase * pauli``."""

    pauli: PauliString
    phase: int = 0

    def __post_init__(self):
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def from_label(cls, label: str, sign: int = 1) -> "SignedPauli":
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        return cls(parse_label(label), 0 if sign == 1 else 2)

    @property
    def num_qubits(self) -> int:
        return self.pauli.num_qubits

    @property
    def is_hermitian(self) -> bool:
        return self.phase in (0, 2)

    @property
    def sign(self) -> int:
        if not self.is_hermitian:
            raise ValueError("operator has an imaginary phase and no real sign")
        return 1 if self.phase == 0 else -1

    def __neg__(self) -> "SignedPauli":
        return SignedPauli(self.pauli, self.phase + 2)

    def __mul__(self, other: "SignedPauli") -> "SignedPauli":
        return multiply(self, other)

    def __str__(self) -> str:
        prefix = {0: "+", 1: "+i", 2: "-", 3: "-i"}[self.phase]
        return prefix + format_label(self.pauli)


def parse_label(label: str) -> PauliString:
    """Parse a label such as ``"IZ"``; the rightmost character is qubit 0."""
    if not label:
        raise PauliParseError("empty Pauli label")
    n = len(label)
    x = z = 0
    for pos, ch in enumerate(label):
        try:
            xb, zb = _LETTER_BITS[ch]
        except KeyError:
            raise PauliParseError(
                f"invalid Pauli character {ch!r} at position {pos} in {label!r}"
            ) from None
        q = n - 1 - pos
        x |= xb << q
        z |= zb << q
    return PauliString(n, x, z)


def format_label(p: PauliString) -> str:
    return "".join(p.letter(q) for q in reversed(range(p.num_qubits)))


def parse_signed(text: str) -> SignedPauli:
    """Parse ``+ZXIX`` / ``-IZ`` style generator syntax (a bare label means +)."""
    s = text.strip()
    sign = 1
    if s and s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        s = s[1:].strip()
    return SignedPauli.from_label(s, sign)


def _check_dims(a: PauliString, b: PauliString) -> None:
    if a.num_qubits != b.num_qubits:
        raise DimensionError(
            f"Pauli strings act on {a.num_qubits} and {b.num_qubits} qubits"
        )


def multiply(a: SignedPauli, b: SignedPauli) -> SignedPauli:
    """Exact operator product ``a @ b``."""
    pa, pb = a.pauli, b.pauli
    _check_dims(pa, pb)
    x, z = pa.x ^ pb.x, pa.z ^ pb.z
    # P(x,z) = i^{x.z} X^x Z^z; moving Z^{z_a} past X^{x_b} costs (-1)^{z_a.x_b}
    phase = (
        a.phase
        + b.phase
        + _popcount(pa.x & pa.z)
        + _popcount(pb.x & pb.z)
        + 2 * _popcount(pa.z & pb.x)
        - _popcount(x & z)
    )
    return SignedPauli(PauliString(pa.num_qubits, x, z), phase)


def commutes(a: PauliString, b: PauliString) -> bool:
    _check_dims(a, b)
    return (_popcount(a.x & b.z) + _popcount(a.z & b.x)) % 2 == 0
