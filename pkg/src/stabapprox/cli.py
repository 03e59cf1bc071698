"""Command-line interface: ``stabapprox {approx,exact,verify,ket}``.

Exit codes: 0 success (degenerate results included), 2 input error,
3 capacity exceeded, 4 failed internal cross-check.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .engine import SearchConfig, run
from .hamiltonian import HamiltonianParseError, load_hamiltonian, total_energy
from .oracles import MAX_EXACT_QUBITS, MAX_EXHAUSTIVE_QUBITS, CapacityError, exhaustive_stabilizer_min, ground_energy, pauli_matvec
from .pauli import PauliParseError, parse_signed
from .states import DEFAULT_SUPPORT_CAP, SupportCapError, format_ket, state_energy, synthesize
from .tableau import AddOutcome, StabilizerTableau, TableauError

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CAPACITY = 3
EXIT_CHECK = 4

CHECK_TOL = 1e-9

# test seam: called on each synthesized state before the verify cross-check
_state_hook = None


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _fmt(x: float | None) -> str:
    return "n/a" if x is None else f"{x:.7f}"


def _load(path: str, nuclear_repulsion: float | None, min_abs: float = 0.0):
    try:
        h = load_hamiltonian(path, min_abs_coefficient=min_abs)
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror or exc}", EXIT_INPUT) from None
    except (HamiltonianParseError, PauliParseError, ValueError) as exc:
        raise CliError(f"{path}: {exc}", EXIT_INPUT) from None
    if nuclear_repulsion is not None:
        h = h.with_nuclear_repulsion(nuclear_repulsion)
    return h


def _config(args, states: bool = True) -> SearchConfig:
    try:
        return SearchConfig(
            strategy=args.strategy,
            gain_epsilon=args.gain_epsilon,
            near_degenerate_threshold=args.near_degenerate_threshold,
            enumeration_cap=args.enumeration_cap,
            synthesize_states=states,
            support_cap=getattr(args, "support_cap", DEFAULT_SUPPORT_CAP),
        )
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INPUT) from None


def _run(h, cfg):
    try:
        return run(h, cfg)
    except SupportCapError as exc:
        raise CliError(f"{exc} (use --no-states)", EXIT_CAPACITY) from None
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INPUT) from None


def build_report(path: str, h, result, strategy: str, trace: bool) -> dict:
    """RunReport as an ordered dict; key order is part of the JSON format."""
    report = {
        "input": h.label if h.label is not None else Path(path).name,
        "num_qubits": h.num_qubits,
        "strategy": strategy,
        "generators": [str(g) for g in result.generators],
        "free_rank": result.free_rank,
        "degeneracy": result.degeneracy,
        "weakly_fixed": [str(g) for g in result.weakly_fixed],
        "electronic_energy": result.electronic_energy,
        "nuclear_repulsion": h.nuclear_repulsion or 0.0,
        "total_energy": result.total_energy,
        "completions": [
            {
                "generators": [str(g) for g in c.generators],
                "electronic_energy": c.electronic_energy,
                "ket": None if c.state is None else format_ket(c.state),
            }
            for c in result.completions
            if c.generators
        ],
        "kets": [format_ket(s) for s in result.states],
    }
    if trace:
        report["trace"] = [
            {"candidate": str(e.candidate), "outcome": e.outcome.value, "gain": e.gain}
            for e in result.trace
        ]
    return report


def render_report(report: dict) -> str:
    lines = [
        f"input: {report['input']}",
        f"num_qubits: {report['num_qubits']}",
        f"strategy: {report['strategy']}",
        "generators:",
        *report["generators"],
        f"free_rank: {report['free_rank']}",
        f"degeneracy: {report['degeneracy']}",
        "weakly_fixed: " + (" ".join(report["weakly_fixed"]) or "none"),
        f"electronic_energy: {_fmt(report['electronic_energy'])}",
        f"nuclear_repulsion: {_fmt(report['nuclear_repulsion'])}",
        f"total_energy: {_fmt(report['total_energy'])}",
    ]
    for c in report["completions"]:
        lines.append(f"completion: {' '.join(c['generators'])} electronic_energy: {_fmt(c['electronic_energy'])}")
    if report["kets"]:
        lines.append("kets:")
        lines.extend(report["kets"])
    for e in report.get("trace", []):
        g = "" if e["gain"] is None else f" {e['gain']:+.10f}"
        lines.append(f"trace: {e['candidate']} {e['outcome']}{g}")
    return "\n".join(lines)


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _approx_one(path, args):
    h = _load(path, args.nuclear_repulsion, args.min_abs_coefficient)
    result = _run(h, _config(args, states=not args.no_states))
    return build_report(path, h, result, args.strategy, args.trace)


def cmd_approx(args) -> int:
    if args.jobs > 1 and len(args.files) > 1:
        with ThreadPoolExecutor(args.jobs) as pool:
            futures = [pool.submit(_approx_one, f, args) for f in args.files]
            reports = [f.result() for f in futures]
    else:
        reports = [_approx_one(f, args) for f in args.files]
    if args.json:
        print(dump_json(reports[0] if len(reports) == 1 else reports))
    else:
        print("\n\n".join(render_report(r) for r in reports))
    return EXIT_OK


def _exact(h):
    try:
        return ground_energy(h)
    except CapacityError as exc:
        raise CliError(str(exc), EXIT_CAPACITY) from None


def cmd_exact(args) -> int:
    h = _load(args.file, args.nuclear_repulsion)
    energy, vec = _exact(h)
    residual = float(abs(pauli_matvec(h, vec) - energy * vec).max()) if h.num_qubits else 0.0
    report = {
        "input": h.label if h.label is not None else Path(args.file).name,
        "num_qubits": h.num_qubits,
        "electronic_energy": energy,
        "nuclear_repulsion": h.nuclear_repulsion or 0.0,
        "total_energy": total_energy(h, energy),
        "residual": residual,
    }
    if args.json:
        print(dump_json(report))
    else:
        print("\n".join([
            f"input: {report['input']}",
            f"num_qubits: {report['num_qubits']}",
            f"electronic_energy: {_fmt(energy)}",
            f"nuclear_repulsion: {_fmt(report['nuclear_repulsion'])}",
            f"total_energy: {_fmt(report['total_energy'])}",
            f"residual: {residual:.3e}",
        ]))
    return EXIT_OK


def verify(h, cfg) -> dict:
    """Approximate ``h`` and cross-check the result against the oracles."""
    result = _run(h, cfg)
    checks = []
    for c in result.completions:
        state = c.state if _state_hook is None else _state_hook(c.state)
        rq = state_energy(h, state)
        checks.append({
            "check": "rayleigh_vs_group_energy",
            "generators": [str(g) for g in c.tableau.generators],
            "difference": abs(rq - c.electronic_energy),
        })
    report = {
        "input": h.label,
        "num_qubits": h.num_qubits,
        "electronic_energy": result.electronic_energy,
        "total_energy": result.total_energy,
        "degeneracy": result.degeneracy,
        "exhaustive_minimum": None,
        "gap_to_exhaustive": None,
        "exact_energy": None,
        "gap_to_exact": None,
    }
    if h.num_qubits <= MAX_EXHAUSTIVE_QUBITS:
        ex = exhaustive_stabilizer_min(h)
        report["exhaustive_minimum"] = ex.minimum
        report["gap_to_exhaustive"] = result.electronic_energy - ex.minimum
        checks.append({"check": "greedy_not_below_exhaustive",
                       "difference": max(0.0, ex.minimum - result.electronic_energy)})
    if h.num_qubits <= MAX_EXACT_QUBITS:
        exact, _ = ground_energy(h)
        report["exact_energy"] = exact
        report["gap_to_exact"] = result.electronic_energy - exact
        floor = report["exhaustive_minimum"] if report["exhaustive_minimum"] is not None else result.electronic_energy
        checks.append({"check": "exact_not_above_stabilizer", "difference": max(0.0, exact - floor)})
    for c in checks:
        c["passed"] = c["difference"] <= CHECK_TOL
    report["checks"] = checks
    report["passed"] = all(c["passed"] for c in checks)
    return report


def cmd_verify(args) -> int:
    h = _load(args.file, args.nuclear_repulsion)
    report = verify(h, _config(args, states=True))
    if args.json:
        print(dump_json(report))
    else:
        lines = [
            f"input: {report['input'] or args.file}",
            f"electronic_energy: {_fmt(report['electronic_energy'])}",
            f"total_energy: {_fmt(report['total_energy'])}",
            f"degeneracy: {report['degeneracy']}",
            f"exhaustive_minimum: {_fmt(report['exhaustive_minimum'])}",
            f"gap_to_exhaustive: {_fmt(report['gap_to_exhaustive'])}",
            f"exact_energy: {_fmt(report['exact_energy'])}",
            f"gap_to_exact: {_fmt(report['gap_to_exact'])}",
        ]
        for c in report["checks"]:
            lines.append(f"{'PASS' if c['passed'] else 'FAIL'} {c['check']} {c['difference']:.3e}")
        print("\n".join(lines))
    return EXIT_OK if report["passed"] else EXIT_CHECK


def read_generators(path: str) -> StabilizerTableau:
    """Parse a ``<sign><label>`` per line file into a complete tableau."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror or exc}", EXIT_INPUT) from None
    tableau = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            g = parse_signed(line)
            if tableau is None:
                tableau = StabilizerTableau(g.num_qubits)
            outcome = tableau.try_add(g)
        except (PauliParseError, TableauError, ValueError) as exc:
            raise CliError(f"line {lineno}: {line}: {exc}", EXIT_INPUT) from None
        if outcome is not AddOutcome.ADDED:
            raise CliError(f"line {lineno}: {line}: {outcome.value}", EXIT_INPUT)
    if tableau is None:
        raise CliError(f"{path}: no generators", EXIT_INPUT)
    if not tableau.is_complete:
        raise CliError(
            f"{path}: incomplete generator set, rank {tableau.rank} < {tableau.num_qubits}", EXIT_INPUT
        )
    return tableau


def cmd_ket(args) -> int:
    tableau = read_generators(args.file)
    try:
        state = synthesize(tableau, args.support_cap)
    except SupportCapError as exc:
        raise CliError(str(exc), EXIT_CAPACITY) from None
    print(format_ket(state))
    return EXIT_OK


def _search_flags(p):
    p.add_argument("--strategy", choices=["closure", "term"], default="closure")
    p.add_argument("--gain-epsilon", type=float, default=1e-10)
    p.add_argument("--near-degenerate-threshold", type=float, default=1e-3)
    p.add_argument("--enumeration-cap", type=int, default=4)
    p.add_argument("--nuclear-repulsion", type=float, default=None,
                   help="override the file's nuclear_repulsion header (hartree)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stabapprox", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("approx", help="greedy stabilizer approximation")
    p.add_argument("files", nargs="+")
    _search_flags(p)
    p.add_argument("--min-abs-coefficient", type=float, default=0.0)
    p.add_argument("--no-states", action="store_true")
    p.add_argument("--support-cap", type=int, default=DEFAULT_SUPPORT_CAP,
                   help="largest log2 support of a synthesized state")
    p.add_argument("--json", action="store_true")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("exact", help="exact ground energy")
    p.add_argument("file")
    p.add_argument("--nuclear-repulsion", type=float, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("verify", help="approximate and cross-check against oracles")
    p.add_argument("file")
    _search_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ket", help="state of a complete generator list")
    p.add_argument("file")
    p.add_argument("--support-cap", type=int, default=DEFAULT_SUPPORT_CAP)
    p.set_defaults(func=cmd_ket)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
