import random
from functools import reduce

import numpy as np
import pytest

from stabapprox import load_fixture
from stabapprox.pauli import PauliString, SignedPauli
from stabapprox.tableau import StabilizerTableau

_MATS = {
    "I": np.eye(2),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.diag([1.0, -1.0]).astype(complex),
}


def dense(label: str) -> np.ndarray:
    """Kronecker product of single-qubit matrices, leftmost letter first."""
    return reduce(np.kron, (_MATS[c] for c in label))


def dense_signed(g: SignedPauli) -> np.ndarray:
    return (1j ** g.phase) * dense(str(g.pauli))


def basis_vector(bits: str) -> np.ndarray:
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[int(bits, 2)] = 1
    return v


def random_tableau(n: int, rng: random.Random, rank: int | None = None) -> StabilizerTableau:
    rank = n if rank is None else rank
    t = StabilizerTableau(n)
    while t.rank < rank:
        p = PauliString(n, rng.getrandbits(n), rng.getrandbits(n))
        if p.is_identity:
            continue
        t.try_add(SignedPauli(p, rng.choice((0, 2))))
    return t


@pytest.fixture(scope="session")
def h2_eq():
    return load_fixture("h2_d0.74_2q")


@pytest.fixture(scope="session")
def h2_far():
    return load_fixture("h2_d2.8_2q")


@pytest.fixture(scope="session")
def h2_far_4q():
    return load_fixture("h2_d2.8_4q")


@pytest.fixture(scope="session")
def lih_eq():
    return load_fixture("lih_d1.5_trunc")


@pytest.fixture(scope="session")
def lih_far():
    return load_fixture("lih_d5.0_trunc")


def random_hamiltonian(n: int, rng: random.Random, num_terms: int, integer: bool = False):
    from stabapprox.hamiltonian import QubitHamiltonian

    pairs = []
    for _ in range(num_terms):
        p = PauliString(n, rng.getrandbits(n), rng.getrandbits(n))
        c = float(rng.randint(-3, 3)) if integer else rng.gauss(0, 1)
        pairs.append((c, p))
    pairs.append((rng.gauss(0, 1), PauliString(n)))
    return QubitHamiltonian.from_terms(pairs)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok in results.items():
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")
