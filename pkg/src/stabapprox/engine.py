"""Greedy selection of stabilizer generators from Hamiltonian terms.

Candidates are always ``+P`` or ``-P`` for a Pauli ``P`` that appears in the
Hamiltonian.  Two strategies are available:

``"term"``
    Walk the terms by descending ``|c|`` and try ``-sign(c) * P`` for each.
``"closure"``
    Repeatedly add the candidate whose addition lowers the stabilizer energy
    the most, counting every term that newly enters the group; stop when no
    candidate lowers it by more than ``gain_epsilon``.

When fewer than ``num_qubits`` generators are fixed, the remaining freedom is
reported as a ``2**free_rank``-fold degenerate family and, for small free
rank, every completion is enumerated together with its state.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

from .hamiltonian import QubitHamiltonian, sorted_terms, total_energy
from .pauli import PauliString, SignedPauli
from .states import DEFAULT_SUPPORT_CAP, StabilizerStateVector, synthesize
from .tableau import AddOutcome, StabilizerTableau

__all__ = [
    "Strategy",
    "CompletionPolicy",
    "SearchConfig",
    "TraceEntry",
    "Completion",
    "ApproximationResult",
    "group_energy",
    "gain",
    "run",
]

# completion generators must be neutral to within this absolute energy
_NEUTRAL_TOL = 1e-12


class Strategy(str, enum.Enum):
    TERM_ORDER = "term"
    CLOSURE_AWARE = "closure"


class CompletionPolicy(str, enum.Enum):
    HAMILTONIAN_TERMS_FIRST = "terms-first"
    CANONICAL_CENTRALIZER = "canonical"


@dataclass(frozen=True)
class SearchConfig:
    strategy: Strategy = Strategy.CLOSURE_AWARE
    gain_epsilon: float = 1e-10
    near_degenerate_threshold: float = 1e-3
    enumeration_cap: int = 4
    completion_policy: CompletionPolicy = CompletionPolicy.HAMILTONIAN_TERMS_FIRST
    synthesize_states: bool = True
    support_cap: int = DEFAULT_SUPPORT_CAP

    def __post_init__(self):
        object.__setattr__(self, "strategy", Strategy(self.strategy))
        object.__setattr__(self, "completion_policy", CompletionPolicy(self.completion_policy))
        if self.gain_epsilon < 0:
            raise ValueError("gain_epsilon must be non-negative")
        if self.gain_epsilon > self.near_degenerate_threshold:
            raise ValueError("gain_epsilon must not exceed near_degenerate_threshold")
        if self.enumeration_cap < 0:
            raise ValueError("enumeration_cap must be non-negative")


@dataclass(frozen=True)
class TraceEntry:
    candidate: SignedPauli
    outcome: AddOutcome
    gain: float | None = None

    def __str__(self) -> str:
        g = "" if self.gain is None else f" gain={self.gain:+.10f}"
        return f"{self.candidate} {self.outcome.value}{g}"


@dataclass
class Completion:
    generators: list[SignedPauli]
    tableau: StabilizerTableau
    electronic_energy: float
    state: StabilizerStateVector | None = None


@dataclass
class ApproximationResult:
    hamiltonian: QubitHamiltonian
    tableau: StabilizerTableau
    electronic_energy: float
    gains: list[float]
    completion_generators: list[PauliString] = field(default_factory=list)
    completions: list[Completion] = field(default_factory=list)
    weakly_fixed: list[SignedPauli] = field(default_factory=list)
    trace: list[TraceEntry] = field(default_factory=list)

    @property
    def num_qubits(self) -> int:
        return self.tableau.num_qubits

    @property
    def generators(self) -> tuple[SignedPauli, ...]:
        return self.tableau.generators

    @property
    def free_rank(self) -> int:
        return self.tableau.num_qubits - self.tableau.rank

    @property
    def degeneracy(self) -> int:
        return 2 ** self.free_rank

    @property
    def total_energy(self) -> float:
        return total_energy(self.hamiltonian, self.electronic_energy)

    @property
    def states(self) -> list[StabilizerStateVector]:
        return [c.state for c in self.completions if c.state is not None]


def group_energy(h: QubitHamiltonian, t: StabilizerTableau) -> float:
    """Energy fixed by the group: offset plus every signed member term."""
    if h.num_qubits != t.num_qubits:
        raise ValueError(f"Hamiltonian on {h.num_qubits} qubits, tableau on {t.num_qubits}")
    e = h.identity_offset
    for c, p in h.terms:
        ev = t.expectation(p)
        if ev:
            e += c * ev
    return e


def gain(h: QubitHamiltonian, t: StabilizerTableau, g: SignedPauli) -> float:
    """Energy change from adding ``g``; only terms newly in the group count."""
    extended = t.with_generator(g)  # raises unless g is addable
    return _closure_gain(h, t, extended)


def _closure_gain(h, before, after) -> float:
    # terms already determined keep their value, so sum over the rest only
    delta = 0.0
    for c, p in h.terms:
        if before.expectation(p) is None:
            ev = after.expectation(p)
            if ev:
                delta += c * ev
    return delta


def _sign_of(c: float) -> int:
    return 1 if c > 0 else -1


def _term_order(h, cfg, trace):
    t = StabilizerTableau(h.num_qubits)
    gains = []
    for i in sorted_terms(h):
        if t.is_complete:
            break
        c, p = h.terms[i]
        if c == 0:
            continue
        cand = SignedPauli(p, 0 if c < 0 else 2)
        outcome = t.classify(cand)
        g = None
        if outcome is AddOutcome.ADDED:
            new = t.with_generator(cand)
            g = _closure_gain(h, t, new)
            t = new
            gains.append(g)
        trace.append(TraceEntry(cand, outcome, g))
    return t, gains


def _closure_aware(h, cfg, trace):
    t = StabilizerTableau(h.num_qubits)
    order = sorted_terms(h)
    gains = []
    while not t.is_complete:
        best = None
        for rank, i in enumerate(order):
            c, p = h.terms[i]
            preferred = 0 if c < 0 else 2
            for pref, phase in enumerate((preferred, preferred + 2)):
                cand = SignedPauli(p, phase)
                if t.classify(cand) is not AddOutcome.ADDED:
                    break  # +P and -P are addable or not together
                new = t.with_generator(cand)
                g = _closure_gain(h, t, new)
                key = (g, rank, pref)
                if best is None or key < best[0]:
                    best = (key, cand, new)
        if best is None or best[0][0] >= -cfg.gain_epsilon:
            break
        (g, _, _), cand, t = best
        gains.append(g)
        trace.append(TraceEntry(cand, AddOutcome.ADDED, g))
    return t, gains


def _sign_assignments(gens: list[PauliString]):
    for signs in itertools.product((0, 2), repeat=len(gens)):
        yield [SignedPauli(p, s) for p, s in zip(gens, signs)]


def _is_neutral(h, base, chosen, cand) -> bool:
    """True if adding ``cand`` changes no energy under any signing of ``chosen``."""
    for signed in _sign_assignments(chosen):
        t = base.copy()
        for g in signed:
            t.try_add(g)
        after = t.copy()
        if after.try_add(SignedPauli(cand)) is not AddOutcome.ADDED:
            return False
        if abs(_closure_gain(h, t, after)) > _NEUTRAL_TOL:
            return False
    return True


def _complete(h, t, cfg) -> list[PauliString]:
    chosen: list[PauliString] = []
    work = t.copy()
    if cfg.completion_policy is CompletionPolicy.HAMILTONIAN_TERMS_FIRST:
        for i in sorted_terms(h):
            if work.is_complete:
                break
            p = h.terms[i][1]
            if work.classify(SignedPauli(p)) is not AddOutcome.ADDED:
                continue
            if _is_neutral(h, t, chosen, p):
                chosen.append(p)
                work.try_add(SignedPauli(p))
    if not work.is_complete:
        chosen.extend(work.centralizer_completion())
    return chosen


def run(h: QubitHamiltonian, cfg: SearchConfig | None = None) -> ApproximationResult:
    cfg = cfg or SearchConfig()
    if not h.terms and h.identity_offset == 0.0:
        raise ValueError("empty Hamiltonian")
    trace: list[TraceEntry] = []
    if cfg.strategy is Strategy.TERM_ORDER:
        t, gains = _term_order(h, cfg, trace)
    else:
        t, gains = _closure_aware(h, cfg, trace)
    energy = group_energy(h, t)
    weak = [e.candidate for e in trace if e.gain is not None and abs(e.gain) < cfg.near_degenerate_threshold]
    result = ApproximationResult(h, t, energy, gains, weakly_fixed=weak, trace=trace)

    free = h.num_qubits - t.rank
    if free == 0:
        state = synthesize(t, cfg.support_cap) if cfg.synthesize_states else None
        result.completions.append(Completion([], t, energy, state))
    elif free <= cfg.enumeration_cap:
        result.completion_generators = _complete(h, t, cfg)
        for signed in _sign_assignments(result.completion_generators):
            full = t.copy()
            for g in signed:
                full.try_add(g)
            state = synthesize(full, cfg.support_cap) if cfg.synthesize_states else None
            result.completions.append(Completion(signed, full, group_energy(h, full), state))
    return result
