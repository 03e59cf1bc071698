"""Explicit stabilizer states with exact quarter-phase amplitudes."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .pauli import DimensionError, SignedPauli
from .tableau import StabilizerTableau, TableauError

__all__ = [
    "StabilizerStateVector",
    "SupportCapError",
    "synthesize",
    "format_ket",
    "apply_pauli",
    "pauli_expectation",
    "state_energy",
    "DEFAULT_SUPPORT_CAP",
]

DEFAULT_SUPPORT_CAP = 12


class SupportCapError(RuntimeError):
    pass


def _popcount(v: int) -> int:
    return bin(v).count("1")


@dataclass(frozen=True)
class StabilizerStateVector:
    """``sum_b i**phases[b] |b> / sqrt(2**support_log2)``.

    Keys of ``phases`` are basis states as integers, bit q = qubit q.
    """

    num_qubits: int
    support_log2: int
    phases: dict

    def __post_init__(self):
        if len(self.phases) != 1 << self.support_log2:
            raise ValueError("support size must be 2**support_log2")

    def basis_string(self, b: int) -> str:
        return format(b, f"0{self.num_qubits}b")

    def amplitudes(self) -> dict[str, complex]:
        norm = 2 ** (-self.support_log2 / 2)
        return {self.basis_string(b): (1j ** e) * norm for b, e in sorted(self.phases.items())}

    def squared_norm(self) -> Fraction:
        return Fraction(len(self.phases), 1 << self.support_log2)

    def to_dense(self) -> np.ndarray:
        v = np.zeros(1 << self.num_qubits, dtype=complex)
        norm = 2 ** (-self.support_log2 / 2)
        for b, e in self.phases.items():
            v[b] = (1j ** e) * norm
        return v

    def canonical(self) -> "StabilizerStateVector":
        """Same state with the smallest basis string carrying phase +1."""
        first = min(self.phases)
        shift = self.phases[first]
        return StabilizerStateVector(
            self.num_qubits,
            self.support_log2,
            {b: (e - shift) % 4 for b, e in self.phases.items()},
        )

    def equals_up_to_phase(self, other: "StabilizerStateVector") -> bool:
        return self.num_qubits == other.num_qubits and self.canonical().phases == other.canonical().phases


def apply_pauli(p: SignedPauli, s: StabilizerStateVector) -> StabilizerStateVector:
    if p.num_qubits != s.num_qubits:
        raise DimensionError(f"operator on {p.num_qubits} qubits, state on {s.num_qubits}")
    x, z = p.pauli.x, p.pauli.z
    base = p.phase + _popcount(x & z)
    out = {}
    for b, e in s.phases.items():
        out[b ^ x] = (e + base + 2 * _popcount(z & b)) % 4
    return StabilizerStateVector(s.num_qubits, s.support_log2, out)


def synthesize(t: StabilizerTableau, support_cap: int = DEFAULT_SUPPORT_CAP) -> StabilizerStateVector:
    """The unique joint +1 eigenstate of a complete tableau."""
    if not t.is_complete:
        raise TableauError(f"tableau has rank {t.rank} < {t.num_qubits}; state not unique")
    n = t.num_qubits
    rows = t.canonical_generators()
    x_rows = [g for g in rows if g.pauli.x]
    z_rows = [g for g in rows if not g.pauli.x]
    r = len(x_rows)
    if r > support_cap:
        raise SupportCapError(f"state support 2**{r} exceeds cap 2**{support_cap}")
    # Reduced echelon: each Z row's pivot qubit appears in no other Z row, and
    # the remaining bits of the seed are left at zero.
    seed = 0
    for g in z_rows:
        if g.sign == -1:
            seed |= 1 << (g.pauli.z.bit_length() - 1)
    state = StabilizerStateVector(n, 0, {seed: 0})
    for g in x_rows:
        moved = apply_pauli(g, state)
        merged = dict(state.phases)
        merged.update(moved.phases)
        state = StabilizerStateVector(n, state.support_log2 + 1, merged)
    return state.canonical()


def pauli_expectation(p, s: StabilizerStateVector) -> float:
    """``<s|p|s>`` evaluated from the sparse amplitudes."""
    if not isinstance(p, SignedPauli):
        p = SignedPauli(p)
    moved = apply_pauli(p, s).phases
    total = 0j
    for b, e in s.phases.items():
        if b in moved:
            total += 1j ** ((moved[b] - e) % 4)
    return (total / (1 << s.support_log2)).real


def state_energy(h, s: StabilizerStateVector) -> float:
    """Rayleigh quotient of a Hamiltonian on a stabilizer state, term by term."""
    e = h.identity_offset
    for c, p in h.terms:
        e += c * pauli_expectation(p, s)
    return e


_PHASE_TEXT = {0: "+", 1: "+i", 2: "-", 3: "-i"}


def format_ket(s: StabilizerStateVector) -> str:
    """Ket notation, e.g. ``(|00> - |11>)/sqrt(2)``; qubit 0 is rightmost."""
    items = sorted(s.phases.items())
    if len(items) == 1:
        b, e = items[0]
        return ("" if e == 0 else _PHASE_TEXT[e]) + f"|{s.basis_string(b)}>"
    parts = []
    for i, (b, e) in enumerate(items):
        ket = f"|{s.basis_string(b)}>"
        if i == 0:
            parts.append(ket if e == 0 else _PHASE_TEXT[e] + ket)
        else:
            parts.append(f" {_PHASE_TEXT[e]} {ket}" if e in (0, 2) else f" {_PHASE_TEXT[e][0]} i{ket}")
    return "(" + "".join(parts) + f")/sqrt({1 << s.support_log2})"
