"""Estimator-style front end for the greedy stabilizer search."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .engine import SearchConfig, group_energy, run
from .states import DEFAULT_SUPPORT_CAP, format_ket
from .validation import check_hamiltonian, check_pauli


class StabilizerApproximator(BaseEstimator):
    """Approximate a qubit Hamiltonian's ground state by a stabilizer state.

    ``fit`` takes the Hamiltonian in place of a design matrix.  After fitting,
    ``predict`` returns stabilizer expectation values of Pauli strings (NaN
    where the group leaves them undetermined) and ``score`` returns the
    negated energy of the fitted group on a Hamiltonian, so larger is better.

    Parameters
    ----------
    strategy : {"closure", "term"}
    gain_epsilon : float
        Smallest energy decrease that still admits a generator ("closure").
    near_degenerate_threshold : float
        Accepted generators with smaller ``|gain|`` are reported as weakly fixed.
    enumeration_cap : int
        Largest free rank whose ``2**free_rank`` completions are enumerated.
    completion_policy : {"terms-first", "canonical"}
    synthesize_states : bool
    support_cap : int
        Largest ``log2`` support size allowed for a synthesized state.
    min_abs_coefficient : float
        Drop terms smaller than this when parsing input (0 keeps everything).
    """

    def __init__(
        self,
        strategy="closure",
        gain_epsilon=1e-10,
        near_degenerate_threshold=1e-3,
        enumeration_cap=4,
        completion_policy="terms-first",
        synthesize_states=True,
        support_cap=DEFAULT_SUPPORT_CAP,
        min_abs_coefficient=0.0,
    ):
        self.strategy = strategy
        self.gain_epsilon = gain_epsilon
        self.near_degenerate_threshold = near_degenerate_threshold
        self.enumeration_cap = enumeration_cap
        self.completion_policy = completion_policy
        self.synthesize_states = synthesize_states
        self.support_cap = support_cap
        self.min_abs_coefficient = min_abs_coefficient

    def _config(self) -> SearchConfig:
        return SearchConfig(
            strategy=self.strategy,
            gain_epsilon=self.gain_epsilon,
            near_degenerate_threshold=self.near_degenerate_threshold,
            enumeration_cap=self.enumeration_cap,
            completion_policy=self.completion_policy,
            synthesize_states=self.synthesize_states,
            support_cap=self.support_cap,
        )

    def fit(self, H, y=None):
        h = check_hamiltonian(H, min_abs_coefficient=self.min_abs_coefficient)
        result = run(h, self._config())
        self.hamiltonian_ = h
        self.result_ = result
        self.n_qubits_ = h.num_qubits
        self.tableau_ = result.tableau
        self.generators_ = [str(g) for g in result.generators]
        self.free_rank_ = result.free_rank
        self.degeneracy_ = result.degeneracy
        self.weakly_fixed_ = [str(g) for g in result.weakly_fixed]
        self.electronic_energy_ = result.electronic_energy
        self.total_energy_ = result.total_energy
        self.states_ = result.states
        return self

    def predict(self, paulis):
        check_is_fitted(self, "tableau_")
        if isinstance(paulis, str):
            paulis = [paulis]
        out = []
        for p in paulis:
            ev = self.tableau_.expectation(check_pauli(p, self.n_qubits_))
            out.append(np.nan if ev is None else float(ev))
        return np.array(out)

    def score(self, H, y=None) -> float:
        check_is_fitted(self, "tableau_")
        return -group_energy(check_hamiltonian(H), self.tableau_)

    def kets(self) -> list[str]:
        check_is_fitted(self, "tableau_")
        return [format_ket(s) for s in self.states_]
