"""Independent reference values for small systems.

Nothing here goes through the tableau or the greedy engine: Pauli operators
are applied directly to dense vectors, and stabilizer-state energies in the
exhaustive search are traces against dense projectors.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .hamiltonian import QubitHamiltonian
from .pauli import PauliString, format_label

__all__ = [
    "CapacityError",
    "MAX_EXACT_QUBITS",
    "MAX_EXHAUSTIVE_QUBITS",
    "pauli_matrix",
    "hamiltonian_matrix",
    "pauli_matvec",
    "ground_energy",
    "ExhaustiveReport",
    "exhaustive_stabilizer_min",
    "stabilizer_state_count",
]

MAX_EXACT_QUBITS = 16
MAX_EXHAUSTIVE_QUBITS = 3
_DENSE_LIMIT = 10

_MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class CapacityError(RuntimeError):
    pass


def pauli_matrix(p: PauliString | str) -> np.ndarray:
    """Dense matrix; the leftmost label letter is the most significant factor."""
    label = p if isinstance(p, str) else format_label(p)
    return reduce(np.kron, (_MATS[ch] for ch in label))


def hamiltonian_matrix(h: QubitHamiltonian) -> np.ndarray:
    dim = 1 << h.num_qubits
    m = h.identity_offset * np.eye(dim, dtype=complex)
    for c, p in h.terms:
        m += c * pauli_matrix(p)
    return m


def _parity(a: np.ndarray) -> np.ndarray:
    return (np.bitwise_count(a) & 1).astype(np.int64)


def pauli_matvec(h: QubitHamiltonian, v: np.ndarray) -> np.ndarray:
    """``H @ v`` term by term without building a matrix."""
    v = np.asarray(v)
    dim = 1 << h.num_qubits
    if v.shape != (dim,):
        raise ValueError(f"vector of shape {v.shape} for a {h.num_qubits}-qubit operator")
    idx = np.arange(dim, dtype=np.int64)
    out = h.identity_offset * v.astype(complex)
    for c, p in h.terms:
        # P|b> = i^{#Y} (-1)^{z.b} |b ^ x>
        phase = (1j) ** (bin(p.x & p.z).count("1") % 4)
        signs = 1 - 2 * _parity(idx & p.z)
        out[idx ^ p.x] += (c * phase) * signs * v
    return out


def _term_actions(h: QubitHamiltonian):
    """Terms grouped by X mask: (axes to flip, summed weight vector) pairs.

    ``P|b> = w[b] |b ^ x>``; flipping the tensor axes named by ``x`` is the
    XOR permutation, which avoids fancy indexing in the inner loop.
    """
    n = h.num_qubits
    idx = np.arange(1 << n, dtype=np.int64)
    grouped: dict[int, np.ndarray] = {}
    for c, p in h.terms:
        phase = (1j) ** (bin(p.x & p.z).count("1") % 4)
        w = (c * phase) * (1 - 2 * _parity(idx & p.z))
        # weight indexed by the *target* basis state
        w = w[idx ^ p.x]
        grouped[p.x] = grouped.get(p.x, 0) + w
    actions = []
    for x, w in grouped.items():
        axes = tuple(n - 1 - q for q in range(n) if (x >> q) & 1)
        actions.append((axes, w))
    return actions


def _lanczos_ground(h: QubitHamiltonian, tol: float = 1e-9, krylov: int = 80, max_restarts: int = 300):
    n = h.num_qubits
    dim = 1 << n
    actions = _term_actions(h)

    def matvec(v):
        out = h.identity_offset * v
        t = v.reshape((2,) * n)
        for axes, weights in actions:
            moved = np.flip(t, axes).reshape(dim) if axes else v
            out += weights * moved
        return out

    rng = np.random.default_rng(12345)
    x = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    x /= np.linalg.norm(x)
    energy = None
    m = min(krylov, dim)
    for _ in range(max_restarts):
        basis = np.zeros((m, dim), dtype=complex)
        basis[0] = x
        alphas, betas = [], []
        for k in range(m):
            w = matvec(basis[k])
            alphas.append(np.vdot(basis[k], w).real)
            # two passes of classical Gram-Schmidt against the whole basis
            for _pass in range(2):
                w -= basis[: k + 1].T @ (basis[: k + 1] @ w.conj()).conj()
            b = np.linalg.norm(w)
            if b < 1e-12 or k == m - 1:
                break
            betas.append(b)
            basis[k + 1] = w / b
        size = len(alphas)
        tri = np.diag(alphas) + np.diag(betas[: size - 1], 1) + np.diag(betas[: size - 1], -1)
        vals, vecs = np.linalg.eigh(tri)
        energy = vals[0]
        x = vecs[:, 0] @ basis[:size]
        x /= np.linalg.norm(x)
        if np.linalg.norm(matvec(x) - energy * x) < tol:
            break
    return float(np.vdot(x, matvec(x)).real), x


def ground_energy(h: QubitHamiltonian) -> tuple[float, np.ndarray]:
    """Lowest eigenvalue of the electronic operator and a normalized eigenvector.

    Dense diagonalization up to 10 qubits, restarted Lanczos on
    ``pauli_matvec`` beyond that.
    """
    n = h.num_qubits
    if n > MAX_EXACT_QUBITS:
        raise CapacityError(f"exact diagonalization supports at most {MAX_EXACT_QUBITS} qubits, got {n}")
    if n <= _DENSE_LIMIT:
        vals, vecs = np.linalg.eigh(hamiltonian_matrix(h))
        return float(vals[0]), vecs[:, 0]
    return _lanczos_ground(h)


def stabilizer_state_count(n: int) -> int:
    """Number of pure n-qubit stabilizer states, ``2**n * prod(2**k + 1)``."""
    return 2 ** n * int(np.prod([2 ** k + 1 for k in range(1, n + 1)]))


@dataclass
class ExhaustiveReport:
    minimum: float
    argmin: list[list[str]] = field(default_factory=list)
    states_enumerated: int = 0


def _rref(vectors: list[int]) -> tuple[int, ...]:
    rows: list[int] = []
    for v in vectors:
        for r in rows:
            if v ^ r < v:
                v ^= r
        if v:
            rows = [r ^ v if r ^ v < r else r for r in rows]
            rows.append(v)
    return tuple(sorted(rows, reverse=True))


def _lagrangian_subspaces(n: int) -> set[tuple[int, ...]]:
    # Pauli strings as (x << n | z) with commutation by the symplectic form
    mask = (1 << n) - 1

    def anti(a, b):
        return (bin((a >> n) & b).count("1") + bin((a & mask) & (b >> n)).count("1")) & 1

    found = set()

    def extend(chosen, start):
        if len(chosen) == n:
            found.add(_rref(chosen))
            return
        for v in range(start, 1 << (2 * n)):
            if any(anti(v, c) for c in chosen):
                continue
            if len(_rref(chosen + [v])) == len(chosen) + 1:
                extend(chosen + [v], v + 1)

    extend([], 1)
    return found


def exhaustive_stabilizer_min(h: QubitHamiltonian, atol: float = 1e-12) -> ExhaustiveReport:
    """Minimum energy over every pure stabilizer state (n <= 3)."""
    n = h.num_qubits
    if n > MAX_EXHAUSTIVE_QUBITS:
        raise CapacityError(f"exhaustive search supports at most {MAX_EXHAUSTIVE_QUBITS} qubits, got {n}")
    hm = hamiltonian_matrix(h)
    dim = 1 << n
    eye = np.eye(dim, dtype=complex)
    seen = 0
    best = np.inf
    argmin: list[list[str]] = []
    for rows in sorted(_lagrangian_subspaces(n)):
        paulis = [PauliString.from_symplectic(n, v) for v in rows]
        mats = [pauli_matrix(p) for p in paulis]
        for signs in itertools.product((1, -1), repeat=n):
            proj = reduce(np.matmul, ((eye + s * m) / 2 for s, m in zip(signs, mats)))
            e = float(np.trace(hm @ proj).real)
            seen += 1
            labels = [("+" if s == 1 else "-") + format_label(p) for s, p in zip(signs, paulis)]
            if e < best - atol:
                best, argmin = e, [labels]
            elif abs(e - best) <= atol:
                argmin.append(labels)
    expected = stabilizer_state_count(n)
    if seen != expected:
        raise AssertionError(f"enumerated {seen} stabilizer states, expected {expected}")
    return ExhaustiveReport(best, argmin, seen)
