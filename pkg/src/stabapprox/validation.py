"""Input coercion shared by the estimator and the CLI."""
from __future__ import annotations

import os
from pathlib import Path

from .hamiltonian import QubitHamiltonian, load_hamiltonian, parse_hamiltonian
from .pauli import PauliString, SignedPauli, parse_label, parse_signed

__all__ = ["check_hamiltonian", "check_pauli", "check_signed_pauli"]


def check_hamiltonian(h, *, min_abs_coefficient: float = 0.0) -> QubitHamiltonian:
    """Accept a QubitHamiltonian, a path, file-format text, or (coeff, label) pairs."""
    if isinstance(h, QubitHamiltonian):
        return h
    if isinstance(h, Path):
        return load_hamiltonian(h, min_abs_coefficient=min_abs_coefficient)
    if isinstance(h, str):
        if "\n" not in h and "*" not in h and os.path.exists(h):
            return load_hamiltonian(h, min_abs_coefficient=min_abs_coefficient)
        return parse_hamiltonian(h, min_abs_coefficient=min_abs_coefficient)
    if isinstance(h, dict):
        h = [(c, p) for p, c in h.items()]
    try:
        pairs = [(float(c), p) for c, p in h]
    except (TypeError, ValueError):
        raise TypeError(
            f"cannot interpret {type(h).__name__} as a Hamiltonian; expected "
            "QubitHamiltonian, path, text, or (coefficient, label) pairs"
        ) from None
    return QubitHamiltonian.from_terms(pairs, min_abs_coefficient=min_abs_coefficient)


def check_pauli(p, num_qubits: int | None = None) -> PauliString:
    if isinstance(p, str):
        p = parse_label(p)
    elif not isinstance(p, PauliString):
        raise TypeError(f"expected a Pauli label or PauliString, got {type(p).__name__}")
    if num_qubits is not None and p.num_qubits != num_qubits:
        raise ValueError(f"{p} acts on {p.num_qubits} qubits, expected {num_qubits}")
    return p


def check_signed_pauli(g, num_qubits: int | None = None) -> SignedPauli:
    if isinstance(g, str):
        g = parse_signed(g)
    elif isinstance(g, PauliString):
        g = SignedPauli(g)
    elif not isinstance(g, SignedPauli):
        raise TypeError(f"expected a signed Pauli, got {type(g).__name__}")
    check_pauli(g.pauli, num_qubits)
    return g
