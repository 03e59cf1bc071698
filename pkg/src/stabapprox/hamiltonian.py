"""Qubit Hamiltonians: text format, validation and dominance ordering.

File format (UTF-8, one entry per line)::

    # comment
    label: H2 d=0.74
    nuclear_repulsion: 0.7151043
    -1.0534210769165204 * II
    +0.39484436335590356 * IZ

Header lines (``key: value``) must precede the first term line.  Known keys
are ``nuclear_repulsion``, ``label`` and ``num_qubits``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .pauli import PauliParseError, PauliString, format_label, parse_label

__all__ = [
    "QubitHamiltonian",
    "HamiltonianParseError",
    "parse_hamiltonian",
    "load_hamiltonian",
    "sorted_terms",
    "total_energy",
]

_HEADER_KEYS = ("nuclear_repulsion", "label", "num_qubits")
_HEADER_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*:\s*(.*?)\s*$")
_TERM_RE = re.compile(r"^\s*(\S+)\s*\*\s*(\S+)\s*$")
# a leading sign may be separated from the number by spaces ("+ 0.39 * IZ")
_SIGN_SPACE_RE = re.compile(r"^\s*([+-])\s+")


class HamiltonianParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class QubitHamiltonian:
    """``identity_offset * I + sum(c * P for c, P in terms)``.

    ``nuclear_repulsion`` is reporting metadata only and never enters the
    operator.
    """

    num_qubits: int
    identity_offset: float = 0.0
    terms: tuple[tuple[float, PauliString], ...] = ()
    nuclear_repulsion: float | None = None
    label: str | None = None
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError("num_qubits must be positive")
        seen = {}
        for i, (c, p) in enumerate(self.terms):
            if p.num_qubits != self.num_qubits:
                raise ValueError(f"term {format_label(p)} does not act on {self.num_qubits} qubits")
            if p.is_identity:
                raise ValueError("identity belongs in identity_offset, not in terms")
            if not math.isfinite(c):
                raise ValueError(f"non-finite coefficient for {format_label(p)}")
            if p in seen:
                raise ValueError(f"duplicate term {format_label(p)}")
            seen[p] = i
        object.__setattr__(self, "terms", tuple((float(c), p) for c, p in self.terms))
        object.__setattr__(self, "_index", seen)

    @classmethod
    def from_terms(cls, pairs: Iterable[tuple[float, str | PauliString]], *,
                   nuclear_repulsion=None, label=None, num_qubits=None,
                   min_abs_coefficient: float = 0.0) -> "QubitHamiltonian":
        """Build from (coefficient, label) pairs, merging duplicates."""
        offset = 0.0
        merged: dict[PauliString, float] = {}
        for c, p in pairs:
            if isinstance(p, str):
                p = parse_label(p)
            if num_qubits is None:
                num_qubits = p.num_qubits
            elif p.num_qubits != num_qubits:
                raise ValueError(
                    f"label {format_label(p)} has {p.num_qubits} qubits, expected {num_qubits}"
                )
            if p.is_identity:
                offset += c
            else:
                merged[p] = merged.get(p, 0.0) + c
        if num_qubits is None:
            raise ValueError("empty Hamiltonian")
        terms = tuple(
            (c, p) for p, c in merged.items() if c != 0.0 and abs(c) >= min_abs_coefficient
        )
        return cls(num_qubits, offset, terms, nuclear_repulsion, label)

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, p: PauliString | str) -> float:
        if isinstance(p, str):
            p = parse_label(p)
        if p.is_identity:
            return self.identity_offset
        i = self._index.get(p)
        return 0.0 if i is None else self.terms[i][0]

    def with_nuclear_repulsion(self, value: float | None) -> "QubitHamiltonian":
        return QubitHamiltonian(self.num_qubits, self.identity_offset, self.terms, value, self.label)

    def to_text(self) -> str:
        """Serialize in the file format; ``parse_hamiltonian`` inverts it exactly."""
        lines = []
        if self.label is not None:
            lines.append(f"label: {self.label}")
        if self.nuclear_repulsion is not None:
            lines.append(f"nuclear_repulsion: {self.nuclear_repulsion!r}")
        lines.append(f"num_qubits: {self.num_qubits}")
        lines.append(f"{self.identity_offset!r} * {'I' * self.num_qubits}")
        for c, p in self.terms:
            lines.append(f"{c!r} * {format_label(p)}")
        return "\n".join(lines) + "\n"


def parse_hamiltonian(text: str, *, min_abs_coefficient: float = 0.0) -> QubitHamiltonian:
    """Parse the line-oriented Hamiltonian format.

    Terms whose merged coefficient is exactly zero are dropped.  Terms below
    ``min_abs_coefficient`` in magnitude are dropped too (off by default).
    """
    header: dict[str, object] = {}
    pairs: list[tuple[float, PauliString]] = []
    num_qubits = None
    saw_identity = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _HEADER_RE.match(line)
        if m and "*" not in line:
            key, value = m.group(1), m.group(2)
            if pairs or saw_identity:
                raise HamiltonianParseError(f"header {key!r} after first term line", lineno)
            if key not in _HEADER_KEYS:
                raise HamiltonianParseError(f"unknown header key {key!r}", lineno)
            try:
                if key == "nuclear_repulsion":
                    header[key] = float(value)
                elif key == "num_qubits":
                    header[key] = int(value)
                    if header[key] < 1:
                        raise ValueError
                else:
                    header[key] = value
            except ValueError:
                raise HamiltonianParseError(f"bad value {value!r} for {key!r}", lineno) from None
            if key == "num_qubits":
                num_qubits = header[key]
            continue
        m = _TERM_RE.match(_SIGN_SPACE_RE.sub(r"\1", line))
        if not m:
            raise HamiltonianParseError(f"cannot parse term line {raw.strip()!r}", lineno)
        coeff_text, label = m.groups()
        try:
            coeff = float(coeff_text)
        except ValueError:
            raise HamiltonianParseError(f"malformed real {coeff_text!r}", lineno) from None
        if not math.isfinite(coeff):
            raise HamiltonianParseError(f"non-finite coefficient {coeff_text!r}", lineno)
        try:
            p = parse_label(label)
        except PauliParseError as exc:
            raise HamiltonianParseError(str(exc), lineno) from None
        if num_qubits is None:
            num_qubits = p.num_qubits
        elif p.num_qubits != num_qubits:
            raise HamiltonianParseError(
                f"label {label!r} has length {p.num_qubits}, expected {num_qubits}", lineno
            )
        saw_identity |= p.is_identity
        pairs.append((coeff, p))
    if not pairs:
        raise HamiltonianParseError("empty Hamiltonian")
    return QubitHamiltonian.from_terms(
        pairs,
        nuclear_repulsion=header.get("nuclear_repulsion"),
        label=header.get("label"),
        num_qubits=num_qubits,
        min_abs_coefficient=min_abs_coefficient,
    )


def load_hamiltonian(path, **kwargs) -> QubitHamiltonian:
    return parse_hamiltonian(Path(path).read_text(encoding="utf-8"), **kwargs)


def sorted_terms(h: QubitHamiltonian) -> list[int]:
    """Term indices by descending ``|c|``; ties keep file order."""
    return sorted(range(len(h.terms)), key=lambda i: -abs(h.terms[i][0]))


def total_energy(h: QubitHamiltonian, electronic: float) -> float:
    return electronic + (h.nuclear_repulsion or 0.0)
