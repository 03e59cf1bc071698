"""Growing sets of commuting, independent signed Pauli generators.

Membership queries use a reduced row-echelon form of the generators'
symplectic vectors over GF(2).  Vectors are packed as ``x << n | z`` and each
echelon row pivots on its most significant set bit, so X-bearing rows always
precede pure Z rows.  Every row remembers which generators it is a product
of; its sign is recomputed from that product rather than tracked
incrementally.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from .pauli import DimensionError, PauliString, SignedPauli, commutes, multiply, parse_signed

__all__ = [
    "AddOutcome",
    "Verdict",
    "Membership",
    "EchelonRow",
    "StabilizerTableau",
    "TableauError",
]


class TableauError(ValueError):
    pass


class AddOutcome(enum.Enum):
    ADDED = "added"
    REJECTED_ANTICOMMUTES = "rejected_anticommutes"
    REDUNDANT_CONSISTENT = "redundant_consistent"
    REJECTED_CONTRADICTS = "rejected_contradicts"


class Verdict(enum.Enum):
    IN_GROUP = "in_group"
    ANTICOMMUTES = "anticommutes"
    COMMUTES_NOT_MEMBER = "commutes_not_member"


@dataclass(frozen=True)
class Membership:
    verdict: Verdict
    sign: int = 0  # +1/-1 for IN_GROUP, else 0

    @property
    def in_group(self) -> bool:
        return self.verdict is Verdict.IN_GROUP


@dataclass(frozen=True)
class EchelonRow:
    vector: int
    pivot: int
    mask: int  # bit j set iff generator j is a factor
    op: SignedPauli


def _product(gens, mask: int, n: int) -> SignedPauli:
    out = SignedPauli(PauliString(n))
    j = 0
    while mask:
        if mask & 1:
            out = multiply(out, gens[j])
        mask >>= 1
        j += 1
    return out


class StabilizerTableau:
    """Ordered generating set plus its sign-tracked echelon form."""

    def __init__(self, num_qubits: int, generators: Iterable[SignedPauli | str] = ()):
        if num_qubits < 1:
            raise ValueError("num_qubits must be positive")
        self.num_qubits = num_qubits
        self._generators: list[SignedPauli] = []
        self._rows: list[EchelonRow] = []
        for g in generators:
            if isinstance(g, str):
                g = parse_signed(g)
            outcome = self.try_add(g)
            if outcome is not AddOutcome.ADDED:
                raise TableauError(f"cannot add generator {g}: {outcome.value}")

    @classmethod
    def from_labels(cls, labels: Iterable[str]) -> "StabilizerTableau":
        gens = [parse_signed(s) for s in labels]
        if not gens:
            raise TableauError("no generators given")
        return cls(gens[0].num_qubits, gens)

    def copy(self) -> "StabilizerTableau":
        new = StabilizerTableau.__new__(StabilizerTableau)
        new.num_qubits = self.num_qubits
        new._generators = list(self._generators)
        new._rows = list(self._rows)
        return new

    @property
    def generators(self) -> tuple[SignedPauli, ...]:
        return tuple(self._generators)

    @property
    def echelon(self) -> tuple[EchelonRow, ...]:
        return tuple(self._rows)

    @property
    def rank(self) -> int:
        return len(self._generators)

    @property
    def is_complete(self) -> bool:
        return self.rank == self.num_qubits

    def __len__(self) -> int:
        return self.rank

    def __repr__(self) -> str:
        return f"StabilizerTableau({self.num_qubits}, [{', '.join(map(str, self._generators))}])"

    def _check(self, p: PauliString) -> None:
        if p.num_qubits != self.num_qubits:
            raise DimensionError(f"expected {self.num_qubits} qubits, got {p.num_qubits}")

    def _reduce(self, v: int) -> tuple[int, int]:
        mask = 0
        for row in self._rows:
            if (v >> row.pivot) & 1:
                v ^= row.vector
                mask ^= row.mask
        return v, mask

    def reduce(self, p: PauliString) -> PauliString:
        """Canonical representative of ``p`` modulo the (unsigned) group."""
        self._check(p)
        v, _ = self._reduce(p.symplectic())
        return PauliString.from_symplectic(self.num_qubits, v)

    def membership(self, p: PauliString) -> Membership:
        self._check(p)
        if any(not commutes(p, g.pauli) for g in self._generators):
            return Membership(Verdict.ANTICOMMUTES)
        v, mask = self._reduce(p.symplectic())
        if v:
            return Membership(Verdict.COMMUTES_NOT_MEMBER)
        prod = _product(self._generators, mask, self.num_qubits)
        assert prod.pauli == p and prod.is_hermitian
        return Membership(Verdict.IN_GROUP, prod.sign)

    def expectation(self, p: PauliString) -> int | None:
        """+1/-1 for signed members, 0 if anticommuting, None if undetermined."""
        if p.is_identity:
            self._check(p)
            return 1
        m = self.membership(p)
        if m.verdict is Verdict.IN_GROUP:
            return m.sign
        if m.verdict is Verdict.ANTICOMMUTES:
            return 0
        return None

    def classify(self, g: SignedPauli) -> AddOutcome:
        """What ``try_add(g)`` would do, without changing the tableau."""
        self._check(g.pauli)
        if g.pauli.is_identity:
            raise TableauError("the identity cannot be a stabilizer generator")
        if not g.is_hermitian:
            raise TableauError(f"generator {g} has an imaginary phase")
        m = self.membership(g.pauli)
        if m.verdict is Verdict.ANTICOMMUTES:
            return AddOutcome.REJECTED_ANTICOMMUTES
        if m.verdict is Verdict.IN_GROUP:
            if m.sign == g.sign:
                return AddOutcome.REDUNDANT_CONSISTENT
            return AddOutcome.REJECTED_CONTRADICTS
        return AddOutcome.ADDED

    def try_add(self, g: SignedPauli) -> AddOutcome:
        outcome = self.classify(g)
        if outcome is AddOutcome.ADDED:
            self._append(g)
        return outcome

    def with_generator(self, g: SignedPauli) -> "StabilizerTableau":
        new = self.copy()
        outcome = new.try_add(g)
        if outcome is not AddOutcome.ADDED:
            raise TableauError(f"cannot add generator {g}: {outcome.value}")
        return new

    def _append(self, g: SignedPauli) -> None:
        j = len(self._generators)
        self._generators.append(g)
        v, mask = self._reduce(g.pauli.symplectic())
        mask ^= 1 << j
        pivot = v.bit_length() - 1
        n = self.num_qubits
        rows = []
        for row in self._rows:
            if (row.vector >> pivot) & 1:
                vec, m = row.vector ^ v, row.mask ^ mask
                row = EchelonRow(vec, row.pivot, m, self._row_op(vec, m))
            rows.append(row)
        rows.append(EchelonRow(v, pivot, mask, self._row_op(v, mask)))
        rows.sort(key=lambda r: -r.pivot)
        self._rows = rows

    def _row_op(self, vec: int, mask: int) -> SignedPauli:
        op = _product(self._generators, mask, self.num_qubits)
        assert op.pauli.symplectic() == vec and op.is_hermitian
        return op

    def canonical_generators(self) -> list[SignedPauli]:
        """Signed echelon rows: a generating set that depends only on the group."""
        return [row.op for row in self._rows]

    def same_group(self, other: "StabilizerTableau") -> bool:
        return self.num_qubits == other.num_qubits and self.canonical_generators() == other.canonical_generators()

    def contains(self, g: SignedPauli | str) -> bool:
        if isinstance(g, str):
            g = parse_signed(g)
        m = self.membership(g.pauli)
        return m.in_group and m.sign == g.sign

    def centralizer_completion(self) -> list[PauliString]:
        """Unsigned Paulis that extend the group to a maximal one.

        Returns ``num_qubits - rank`` Paulis commuting with the generators and
        with each other, independent of the group, each reduced to its
        canonical representative modulo the group.
        """
        n, k = self.num_qubits, self.rank
        if k == n:
            raise TableauError("tableau is already complete")
        # Quotient of the centralizer by the group: reduce the standard basis
        # of centralizer vectors, then keep an independent set.
        basis = _centralizer_basis(n, [g.pauli.symplectic() for g in self._generators])
        reduced: list[int] = []
        echelon = [(row.pivot, row.vector) for row in self._rows]
        for v in basis:
            for piv, w in echelon:
                if (v >> piv) & 1:
                    v ^= w
            if v:
                echelon.append((v.bit_length() - 1, v))
                echelon.sort(key=lambda t: -t[0])
                reduced.append(v)
        # symplectic Gram-Schmidt on the 2(n-k)-dimensional quotient
        chosen: list[int] = []
        pool = reduced
        while pool:
            a = pool.pop(0)
            partner = next((i for i, w in enumerate(pool) if _sform(n, a, w)), None)
            if partner is None:
                # a is orthogonal to everything left; it is isotropic on its own
                chosen.append(a)
                continue
            b = pool.pop(partner)
            chosen.append(a)
            pool = [w ^ (b if _sform(n, w, a) else 0) ^ (a if _sform(n, w, b) else 0) for w in pool]
            pool = [w for w in pool if w]
        out = []
        for v in chosen[: n - k]:
            v, _ = self._reduce(v)
            out.append(PauliString.from_symplectic(n, v))
        if len(out) != n - k:
            raise TableauError("centralizer completion failed")  # unreachable for valid tableaus
        return out


def _sform(n: int, a: int, b: int) -> int:
    mask = (1 << n) - 1
    ax, az, bx, bz = a >> n, a & mask, b >> n, b & mask
    return (bin(ax & bz).count("1") + bin(az & bx).count("1")) & 1


def _centralizer_basis(n: int, vectors: list[int]) -> list[int]:
    """Basis of {v : sform(v, g) = 0 for all g} as packed 2n-bit ints."""
    # The condition sform(v, g) = 0 is linear in v with coefficient vector
    # swap(g) = (g.z << n | g.x).  Solve the homogeneous system by RREF.
    mask = (1 << n) - 1
    eqs = [((g & mask) << n) | (g >> n) for g in vectors]
    rows: list[int] = []
    pivots: list[int] = []
    for e in eqs:
        for r, p in zip(rows, pivots):
            if (e >> p) & 1:
                e ^= r
        if e:
            p = e.bit_length() - 1
            for i, r in enumerate(rows):
                if (r >> p) & 1:
                    rows[i] = r ^ e
            rows.append(e)
            pivots.append(p)
    free = [b for b in range(2 * n) if b not in pivots]
    basis = []
    for f in free:
        v = 1 << f
        for r, p in zip(rows, pivots):
            if (r >> f) & 1:
                v |= 1 << p
        basis.append(v)
    return basis
