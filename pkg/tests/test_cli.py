import json

import pytest

import stabapprox.cli as cli
from stabapprox import fixture_path
from stabapprox.states import StabilizerStateVector


def fx(name):
    return str(fixture_path(name))


def gens(name):
    from importlib import resources
    return str(resources.files("stabapprox") / "fixtures" / f"{name}.gens")


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestApprox:
    def test_equilibrium_text(self, capsys):
        code, out, _ = run_cli(capsys, "approx", fx("h2_d0.74_2q"))
        assert code == 0
        lines = out.splitlines()
        i = lines.index("generators:")
        assert lines[i + 1:i + 3] == ["+ZI", "-IZ"]
        assert "electronic_energy: -1.8318636" in lines
        assert "total_energy: -1.1167593" in lines
        assert lines[-1] == "|01>"

    def test_degenerate_json(self, capsys):
        code, out, _ = run_cli(capsys, "approx", fx("h2_d2.8_4q"), "--strategy", "closure", "--json")
        assert code == 0
        report = json.loads(out)
        assert report["degeneracy"] == 2
        assert sorted(report["kets"]) == ["(|0001> + |0100>)/sqrt(2)", "(|0001> - |0100>)/sqrt(2)"]
        assert list(report) == ["input", "num_qubits", "strategy", "generators", "free_rank", "degeneracy",
                                "weakly_fixed", "electronic_energy", "nuclear_repulsion", "total_energy",
                                "completions", "kets"]

    def test_json_stable(self, capsys):
        _, out, _ = run_cli(capsys, "approx", fx("h2_d2.8_2q"), "--json", "--trace")
        assert cli.dump_json(json.loads(out)) + "\n" == out

    def test_text_matches_json(self, capsys):
        _, text, _ = run_cli(capsys, "approx", fx("h2_d2.8_2q"))
        _, js, _ = run_cli(capsys, "approx", fx("h2_d2.8_2q"), "--json")
        report = json.loads(js)
        for key in ("electronic_energy", "nuclear_repulsion", "total_energy"):
            assert f"{key}: {report[key]:.7f}" in text.splitlines()
        assert report["total_energy"] == pytest.approx(report["electronic_energy"] + report["nuclear_repulsion"], abs=1e-12)
        assert "weakly_fixed: +ZZ" in text

    def test_nuclear_repulsion_override(self, capsys):
        _, out, _ = run_cli(capsys, "approx", fx("h2_d0.74_2q"), "--nuclear-repulsion", "0", "--json")
        r = json.loads(out)
        assert r["total_energy"] == r["electronic_energy"]

    def test_multiple_files_parallel(self, capsys):
        files = [fx("h2_d0.74_2q"), fx("h2_d2.8_2q"), fx("h2_d2.8_4q")]
        _, out, _ = run_cli(capsys, "approx", *files, "--json", "--jobs", "3")
        reports = json.loads(out)
        assert [r["num_qubits"] for r in reports] == [2, 2, 4]
        _, seq, _ = run_cli(capsys, "approx", *files, "--json")
        assert seq == out

    def test_no_states(self, capsys):
        _, out, _ = run_cli(capsys, "approx", fx("h2_d2.8_2q"), "--no-states", "--json")
        assert json.loads(out)["kets"] == []

    def test_empty_file(self, capsys, tmp_path):
        f = tmp_path / "empty.txt"
        f.write_text("")
        code, _, err = run_cli(capsys, "approx", str(f))
        assert code == 2 and "empty Hamiltonian" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = run_cli(capsys, "approx", str(tmp_path / "nope.txt"))
        assert code == 2

    def test_support_cap_is_capacity_error(self, capsys, tmp_path):
        f = tmp_path / "x.txt"
        f.write_text("-1 * XII\n-1 * IXI\n-1 * IIX\n")
        code, _, err = run_cli(capsys, "approx", str(f), "--support-cap", "2")
        assert code == 3 and "support" in err
        assert run_cli(capsys, "approx", str(f), "--support-cap", "2", "--no-states")[0] == 0


class TestExact:
    def test_equilibrium(self, capsys):
        code, out, _ = run_cli(capsys, "exact", fx("h2_d0.74_2q"), "--json")
        assert code == 0
        assert abs(json.loads(out)["total_energy"] - (-1.14)) <= 0.01

    def test_stretched(self, capsys):
        code, out, _ = run_cli(capsys, "exact", fx("h2_d2.8_2q"))
        total = float(next(l for l in out.splitlines() if l.startswith("total_energy")).split()[1])
        assert code == 0 and abs(total - (-0.93)) <= 0.01

    def test_too_many_qubits(self, capsys, tmp_path):
        f = tmp_path / "big.txt"
        f.write_text("1.0 * " + "Z" * 17 + "\n")
        code, _, err = run_cli(capsys, "exact", str(f))
        assert code == 3 and "16" in err


class TestVerify:
    def test_stretched(self, capsys):
        code, out, _ = run_cli(capsys, "verify", fx("h2_d2.8_2q"), "--json")
        r = json.loads(out)
        assert code == 0 and r["passed"]
        assert r["gap_to_exhaustive"] == 0.0
        assert 0 <= r["gap_to_exact"] < 0.01

    def test_equilibrium(self, capsys):
        code, out, _ = run_cli(capsys, "verify", fx("h2_d0.74_2q"), "--json")
        r = json.loads(out)
        assert code == 0 and r["gap_to_exhaustive"] == 0.0
        assert r["gap_to_exact"] == pytest.approx(0.02, abs=0.005)

    def test_degenerate_four_qubit(self, capsys):
        code, out, _ = run_cli(capsys, "verify", fx("h2_d2.8_4q"))
        assert code == 0 and out.count("PASS rayleigh") == 2

    def test_corrupted_state_fails(self, capsys, monkeypatch):
        def corrupt(s):
            return StabilizerStateVector(s.num_qubits, 0, {0: 0})
        monkeypatch.setattr(cli, "_state_hook", corrupt)
        code, out, _ = run_cli(capsys, "verify", fx("h2_d2.8_2q"))
        assert code == 4 and "FAIL rayleigh" in out


class TestKet:
    def test_beh2_equilibrium(self, capsys):
        code, out, _ = run_cli(capsys, "ket", gens("beh2_d1.32"))
        assert code == 0 and out.strip() == "|000010111101>"

    def test_beh2_far_minus(self, capsys):
        _, out, _ = run_cli(capsys, "ket", gens("beh2_d5.0_minus"))
        assert out.strip() == "(|000010111101> - |000110111001>)/sqrt(2)"

    def test_single_qubit(self, capsys, tmp_path):
        f = tmp_path / "g.txt"
        f.write_text("+Z\n")
        assert run_cli(capsys, "ket", str(f))[1].strip() == "|0>"

    @pytest.mark.parametrize("body, line", [
        ("+ZI\n+XI\n", "line 2"),      # anticommutes
        ("+ZI\n+IZ\n-ZZ\n", "line 3"),  # dependent
        ("+ZI\n+QZ\n", "line 2"),      # bad label
        ("+ZI\n", "incomplete"),
    ])
    def test_bad_generator_lists(self, capsys, tmp_path, body, line):
        f = tmp_path / "g.txt"
        f.write_text(body)
        code, _, err = run_cli(capsys, "ket", str(f))
        assert code == 2 and line in err
