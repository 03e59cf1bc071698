import pytest
from hypothesis import given
from hypothesis import strategies as st

from stabapprox import load_fixture
from stabapprox.hamiltonian import (
    HamiltonianParseError,
    QubitHamiltonian,
    parse_hamiltonian,
    sorted_terms,
    total_energy,
)
from stabapprox.pauli import format_label, parse_label

H2_EQ_TEXT = """\
-1.0534210769165204 * II
+ 0.39484436335590356 * IZ
- 0.39484436335590367 * ZI
+ 0.1812104620151969 * XX
- 0.011246157150821112 * ZZ
"""


def order_labels(h):
    return [format_label(h.terms[i][1]) for i in sorted_terms(h)]


class TestParse:
    def test_h2_listing(self):
        h = parse_hamiltonian(H2_EQ_TEXT)
        assert h.num_qubits == 2
        assert h.identity_offset == -1.0534210769165204
        assert len(h.terms) == 4
        assert h.coefficient("ZZ") == -0.011246157150821112
        assert h.nuclear_repulsion is None

    def test_exact_cancellation(self):
        h = parse_hamiltonian("1.0 * XX\n-1.0 * XX\n")
        assert h.terms == () and h.identity_offset == 0.0

    def test_four_qubit_fixture(self, h2_far_4q):
        assert h2_far_4q.num_qubits == 4
        assert len(h2_far_4q.terms) == 14
        assert h2_far_4q.identity_offset == -0.7340910665455848

    def test_headers_and_comments(self):
        h = parse_hamiltonian("# c\n\nlabel: H2 d=2.8\nnuclear_repulsion: 0.5\nnum_qubits: 2\n  0.25*XX  \n")
        assert h.label == "H2 d=2.8" and h.nuclear_repulsion == 0.5
        assert h.coefficient("XX") == 0.25

    def test_duplicates_merge(self):
        a = parse_hamiltonian("0.5 * XZ\n0.25 * XZ\n-1 * II\n2 * II\n")
        b = parse_hamiltonian("0.75 * XZ\n1 * II\n")
        assert a == b

    def test_magnitude_floor_off_by_default(self, h2_far):
        assert h2_far.coefficient("ZZ") == -0.0001469354633982234
        h = parse_hamiltonian("1 * XX\n1e-6 * ZZ\n", min_abs_coefficient=1e-3)
        assert h.coefficient("ZZ") == 0.0

    @pytest.mark.parametrize("text, match", [
        ("1 * XX\n1 * XXX\n", "line 2"),
        ("1 * XX\nabc * ZZ\n", "line 2: malformed real"),
        ("1 * XQ\n", "line 1"),
        ("1 * XX\nlabel: late\n", "line 2: header"),
        ("", "empty Hamiltonian"),
        ("# only a comment\n", "empty Hamiltonian"),
        ("num_qubits: 3\n1 * XX\n", "line 2"),
        ("what is this\n", "line 1"),
    ])
    def test_errors(self, text, match):
        with pytest.raises(HamiltonianParseError, match=match):
            parse_hamiltonian(text)

    def test_fixture_transcription(self, h2_far_4q):
        # spot values from the published listing
        assert h2_far_4q.coefficient("IXZX") == -0.07326078216819633
        assert h2_far_4q.coefficient("ZZII") == 0.03135780838465882
        assert h2_far_4q.coefficient("IIZZ") == 0.03135780838465877

    def test_truncated_fixtures_are_marked(self, lih_eq, lih_far):
        for h in (lih_eq, lih_far):
            assert h.label.startswith("truncated")
            assert h.num_qubits == 10 and len(h.terms) == 13


class TestSortedTerms:
    def test_two_qubit_far(self, h2_far):
        assert order_labels(h2_far) == ["XX", "IZ", "ZI", "ZZ"]

    def test_stable_ties(self):
        h = parse_hamiltonian("1 * ZZ\n-1 * XX\n1 * IZ\n-1 * ZI\n")
        assert order_labels(h) == ["ZZ", "XX", "IZ", "ZI"]

    def test_four_qubit_prefix(self, h2_far_4q):
        assert order_labels(h2_far_4q)[:4] == ["ZZZZ", "ZZIZ", "IZIZ", "IZZZ"]

    @given(st.lists(st.tuples(st.floats(-10, 10, allow_nan=False), st.text("IXYZ", min_size=3, max_size=3)),
                    min_size=1, max_size=30))
    def test_permutation_non_increasing(self, pairs):
        h = QubitHamiltonian.from_terms(pairs)
        order = sorted_terms(h)
        assert sorted(order) == list(range(len(h.terms)))
        mags = [abs(h.terms[i][0]) for i in order]
        assert all(a >= b for a, b in zip(mags, mags[1:]))


class TestTotalEnergy:
    def test_equilibrium(self):
        h = QubitHamiltonian(2, nuclear_repulsion=0.7151043)
        assert total_energy(h, -1.8318636) == pytest.approx(-1.1167593, abs=1e-12)

    def test_absent(self):
        assert total_energy(QubitHamiltonian(2), -1.5) == -1.5

    def test_stretched(self):
        h = QubitHamiltonian(2, nuclear_repulsion=0.1889919)
        assert total_energy(h, -1.1216577) == pytest.approx(-0.9326658, abs=1e-12)

    def test_fixture_headers(self, h2_eq, h2_far):
        assert h2_eq.nuclear_repulsion == pytest.approx(0.52917721 / 0.74, abs=1e-12)
        assert h2_far.nuclear_repulsion == pytest.approx(0.52917721 / 2.8, abs=1e-12)


coeffs = st.floats(-5, 5, allow_nan=False).filter(lambda c: c != 0)


@given(st.lists(st.tuples(coeffs, st.text("IXYZ", min_size=4, max_size=4)), min_size=1, max_size=20),
       st.one_of(st.none(), st.floats(0, 10)), st.one_of(st.none(), st.text("abc xyz=.0123", min_size=1).map(str.strip).filter(bool)))
def test_serialize_round_trip(pairs, nn, label):
    h = QubitHamiltonian.from_terms(pairs, nuclear_repulsion=nn, label=label)
    again = parse_hamiltonian(h.to_text())
    assert again.identity_offset == h.identity_offset
    assert sorted(again.terms, key=lambda t: t[1].symplectic()) == sorted(h.terms, key=lambda t: t[1].symplectic())
    assert (again.nuclear_repulsion, again.label, again.num_qubits) == (nn, label, h.num_qubits)


def test_load_fixture_names():
    assert load_fixture("h2_d0.74_2q").label.startswith("H2")
    assert parse_label("XX") in {p for _, p in load_fixture("h2_d2.8_2q").terms}
