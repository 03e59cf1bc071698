"""Stabilizer-state approximations of qubit Hamiltonian ground states."""
from importlib import resources

from .engine import ApproximationResult, SearchConfig, gain, group_energy, run
from .estimator import StabilizerApproximator
from .hamiltonian import QubitHamiltonian, load_hamiltonian, parse_hamiltonian, sorted_terms, total_energy
from .pauli import PauliString, SignedPauli, commutes, format_label, multiply, parse_label, parse_signed
from .states import StabilizerStateVector, apply_pauli, format_ket, synthesize
from .tableau import AddOutcome, StabilizerTableau, Verdict

__version__ = "0.1.0"

FIXTURES = ("h2_d0.74_2q", "h2_d2.8_2q", "h2_d2.8_4q", "lih_d1.5_trunc", "lih_d5.0_trunc")


def fixture_path(name: str):
    """Path of a bundled Hamiltonian fixture, e.g. ``fixture_path("h2_d2.8_4q")``."""
    return resources.files(__name__) / "fixtures" / f"{name}.txt"


def load_fixture(name: str) -> QubitHamiltonian:
    return load_hamiltonian(fixture_path(name))
