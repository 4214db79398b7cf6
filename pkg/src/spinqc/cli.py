"""Command-line front end: batch runs, stepping, table reproduction, convergence.

Exit codes: 0 success, 1 parse/validation failure, 2 execution failure.
QCE_MAX_QUBITS in the environment overrides the default qubit cap.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import algolib, model, oracle
from . import program as prog
from .errors import ConfigError, EmulatorError, ProgramError, ValidationError
from .propagate import (
    CLOCK_MODES,
    EvolutionConfig,
    convergence_probe,
    default_delta,
)
from .state import new_ground


def _resolve_program(ident: str, library: dict) -> prog.QuantumProgram:
    if ident in library:
        return library[ident]
    path = Path(ident)
    if path.exists():
        return prog.load_program(path)
    raise ConfigError(f"unknown program {ident!r} (not a builtin, not a file)")


def _make_config(args) -> EvolutionConfig:
    return EvolutionConfig(clock=args.clock, delta_max=args.delta)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Subcommands.
# ---------------------------------------------------------------------------


def cmd_list_sets(args) -> int:
    doc = []
    for sid in model.BUILTIN_SET_IDS:
        iset = model.builtin_set(sid)
        doc.append({
            "name": iset.name,
            "num_qubits": iset.num_qubits,
            "instructions": list(iset.instructions),
        })
    if args.json:
        _emit(json.dumps({"sets": doc}, indent=2) + "\n", args.out)
    else:
        lines = []
        for entry in doc:
            lines.append(f"{entry['name']} ({entry['num_qubits']} qubits): "
                         + " ".join(entry["instructions"]))
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_show(args) -> int:
    doc = {}
    if args.set:
        doc["set"] = model.set_to_dict(model.resolve_set(args.set))
    if args.program:
        qp = _resolve_program(args.program, algolib.builtin_library())
        doc["program"] = prog.program_to_dict(qp)
    if not doc:
        raise ConfigError("show needs --set and/or --program")
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return 0


def cmd_run(args) -> int:
    iset = model.resolve_set(args.set)
    library = algolib.builtin_library()
    qp = _resolve_program(args.program, library)
    sess = prog.new_session(iset, qp, library, _make_config(args))
    prog.run(sess)
    while sess.status == prog.PAUSED:  # resume through breakpoints in batch mode
        prog.run(sess)
    if args.json:
        doc = {
            "set": iset.name, "program": qp.name, "clock": args.clock,
            "status": sess.status,
            "trace": [r.to_dict() for r in sess.trace],
        }
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        _emit(prog.format_results(sess), args.out)
    return 0


def cmd_step(args) -> int:
    iset = model.resolve_set(args.set)
    library = algolib.builtin_library()
    qp = _resolve_program(args.program, library)
    sess = prog.new_session(iset, qp, library, _make_config(args))
    for _ in range(args.count):
        if sess.status == prog.FINISHED:
            break
        prog.step(sess)
    lines = [f"status: {sess.status} pc: {sess.pc}/{len(sess.flat)}"]
    for rec in sess.trace:
        q = " ".join(
            f"Q{j + 1}z={qubit['z']:.6f}" for j, qubit in enumerate(rec.readouts)
        )
        lines.append(f"{rec.index} {rec.name} clock={rec.clock:.6f} {q}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_converge(args) -> int:
    iset = model.resolve_set(args.set)
    if args.mi not in iset:
        raise ConfigError(f"no instruction {args.mi!r} in set {iset.name}")
    mi = iset[args.mi]
    if args.deltas:
        deltas = [float(x) for x in args.deltas.split(",")]
    else:
        d0 = default_delta(mi, EvolutionConfig())
        deltas = [d0, d0 / 2, d0 / 4, d0 / 8, d0 / 64]
    state = new_ground(iset.num_qubits)
    cfg = EvolutionConfig(clock=args.clock)
    table = convergence_probe(mi, 0.0, state, deltas, cfg)
    lines = [f"# set: {iset.name} mi: {args.mi} clock: {args.clock}",
             "# delta distance ratio"]
    prev = None
    for d, err in table:
        ratio = "" if prev is None or err == 0 else f" {prev / err:.3f}"
        lines.append(f"{d:.9e} {err:.9e}{ratio}")
        prev = err
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_serve(args) -> int:
    from .service import serve

    serve(host=args.host, port=args.port)
    return 0


# ---------------------------------------------------------------------------
# tables: reproduce the study result tables with per-cell deviations.
# ---------------------------------------------------------------------------


def _final_z(sess) -> list[float]:
    return [qubit["z"] for qubit in sess.trace[-1].readouts]


def _run_program(iset, qp, library, clock) -> list[float]:
    sess = prog.new_session(iset, qp, library, EvolutionConfig(clock=clock))
    prog.run(sess)
    return _final_z(sess)


def gate_table_report() -> dict:
    """Closed-form action of the decision sequences on the four basis states."""
    expected = {
        # sequence index -> {input index: (output index, phase)}
        1: {n: (n, -1.0) for n in range(4)},
        2: {0: (2, 1j), 1: (3, 1j), 2: (0, 1j), 3: (1, 1j)},
        3: {0: (0, np.exp(-1j * np.pi / 4)), 1: (3, -np.exp(-1j * np.pi / 4)),
            2: (2, np.exp(-1j * np.pi / 4)), 3: (1, -np.exp(-1j * np.pi / 4))},
        4: {0: (2, -np.exp(1j * np.pi / 4)), 1: (1, np.exp(1j * np.pi / 4)),
            2: (0, -np.exp(1j * np.pi / 4)), 3: (3, np.exp(1j * np.pi / 4))},
    }
    cells = []
    worst = 0.0
    for k, seq in algolib.DJ_SEQUENCES.items():
        u = oracle.sequence_matrix(seq, 2)
        for n in range(4):
            out_index, phase = expected[k][n]
            target = np.zeros(4, dtype=complex)
            target[out_index] = phase
            dev = float(np.max(np.abs(u[:, n] - target)))
            worst = max(worst, dev)
            cells.append({"sequence": k, "basis": n, "deviation": dev})
    return {"cells": cells, "max_deviation": worst, "tolerance": 1e-12,
            "passed": worst <= 1e-12}


def study_report(set_ids, clocks=CLOCK_MODES) -> dict:
    """Run every builtin study on the requested sets under both conventions."""
    library = algolib.builtin_library()
    report: dict = {"sets": {}, "gate_algebra": gate_table_report()}
    for sid in set_ids:
        iset = model.resolve_set(sid)
        per_clock = {}
        for clock in clocks:
            studies = {}
            rows = []
            for k in range(1, 5):
                rows.append(_run_program(iset, library[f"d-j{k}"], library, clock))
            studies["dj"] = rows
            studies["ckh"] = [
                _run_program(iset, library[f"ckh{k}"], library, clock)[0]
                for k in range(1, 5)
            ]
            studies["grover"] = [
                _run_program(iset, library[f"grov{j}"], library, clock)
                for j in range(4)
            ]
            per_clock[clock] = studies
        report["sets"][iset.name] = per_clock
    _attach_deviations(report)
    return report


def _attach_deviations(report: dict) -> None:
    matching = {}
    for set_name, per_clock in report["sets"].items():
        tol = algolib.EXPECTED_TOL.get(set_name)
        refs = {
            "dj": algolib.DJ_EXPECTED.get(set_name),
            "ckh": algolib.CKH_EXPECTED.get(set_name),
            "grover": algolib.GROVER_EXPECTED.get(set_name),
        }
        if tol is None or all(v is None for v in refs.values()):
            continue
        per_clock_dev = {}
        for clock, studies in per_clock.items():
            worst = 0.0
            for study, ref in refs.items():
                if ref is None:
                    continue
                got = studies[study]
                for row_got, row_ref in zip(got, ref):
                    if isinstance(row_ref, tuple):
                        worst = max(
                            worst,
                            *(abs(g - r) for g, r in zip(row_got, row_ref)),
                        )
                    else:
                        worst = max(worst, abs(row_got[0] - row_ref)
                                    if isinstance(row_got, list) else
                                    abs(row_got - row_ref))
            per_clock_dev[clock] = worst
        best = min(per_clock_dev, key=per_clock_dev.get)
        matching[set_name] = {
            "deviations": per_clock_dev,
            "matching_clock": best if per_clock_dev[best] <= tol else None,
            "tolerance": tol,
        }
    report["reference_match"] = matching


def render_report(report: dict) -> str:
    lines = []
    ga = report["gate_algebra"]
    lines.append("gate-algebra check (decision sequences on the basis states):")
    lines.append(
        f"  16 cells, max deviation {ga['max_deviation']:.3e} "
        f"(tolerance {ga['tolerance']:.0e}) -> "
        + ("PASS" if ga["passed"] else "FAIL")
    )
    for set_name, per_clock in report["sets"].items():
        refs = {
            "dj": algolib.DJ_EXPECTED.get(set_name),
            "ckh": algolib.CKH_EXPECTED.get(set_name),
            "grover": algolib.GROVER_EXPECTED.get(set_name),
        }
        for clock, studies in per_clock.items():
            lines.append(f"\nset {set_name}, clock {clock}:")
            lines.append("  decision (two-qubit)      Q1     Q2     dQ1     dQ2")
            for k, row in enumerate(studies["dj"]):
                ref = refs["dj"][k] if refs["dj"] else None
                dev = ("  {:+.3f} {:+.3f}".format(row[0] - ref[0], row[1] - ref[1])
                       if ref else "")
                lines.append(f"    f{k + 1}: {row[0]:18.3f} {row[1]:6.3f}{dev}")
            lines.append("  decision (refined)        Q1            dQ1")
            for k, q1 in enumerate(studies["ckh"]):
                ref = refs["ckh"][k] if refs["ckh"] else None
                dev = f"  {q1 - ref:+.3f}" if ref is not None else ""
                lines.append(f"    f{k + 1}: {q1:18.3f}{dev}")
            lines.append("  search                    Q1     Q2     dQ1     dQ2")
            for j, row in enumerate(studies["grover"]):
                ref = refs["grover"][j] if refs["grover"] else None
                dev = ("  {:+.3f} {:+.3f}".format(row[0] - ref[0], row[1] - ref[1])
                       if ref else "")
                lines.append(f"    g{j}: {row[0]:18.3f} {row[1]:6.3f}{dev}")
    lines.append("")
    for set_name, info in report.get("reference_match", {}).items():
        devs = ", ".join(
            f"{clock}: {dev:.4f}" for clock, dev in info["deviations"].items()
        )
        if info["matching_clock"]:
            lines.append(
                f"reference rows for {set_name} matched under clock convention "
                f"'{info['matching_clock']}' (max deviation {devs}; "
                f"tolerance {info['tolerance']})"
            )
        else:
            lines.append(
                f"reference rows for {set_name}: NO convention matched "
                f"(deviations {devs}; tolerance {info['tolerance']})"
            )
    return "\n".join(lines) + "\n"


def cmd_tables(args) -> int:
    set_ids = [s.strip() for s in args.sets.split(",") if s.strip()]
    report = study_report(set_ids)
    if args.json:
        _emit(json.dumps(report, indent=2) + "\n", args.out)
    else:
        _emit(render_report(report), args.out)
    return 0


# ---------------------------------------------------------------------------
# Argument parsing.
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinqc",
        description="Emulator for spin-1/2 quantum computers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, set_required=False, program=False):
        p.add_argument("--set", required=set_required,
                       help="builtin set id (NMR, Ideal, NMR-Ideal) or a JSON file")
        if program:
            p.add_argument("--program", required=True,
                           help="builtin program name or a JSON file")
        p.add_argument("--clock", choices=CLOCK_MODES, default="global",
                       help="sinusoid clock convention (default: global)")
        p.add_argument("--delta", type=float, default=None,
                       help="override the integration step cap")
        p.add_argument("--out", default=None, help="write output to this file")
        p.add_argument("--json", action="store_true",
                       help="machine-readable JSON output")

    p = sub.add_parser("list-sets", help="list the builtin instruction sets")
    p.add_argument("--out", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_list_sets)

    p = sub.add_parser("show", help="print a set or program definition")
    p.add_argument("--set")
    p.add_argument("--program")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_show)

    p = sub.add_parser("run", help="execute a program and print the results")
    add_common(p, set_required=True, program=True)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("step", help="execute a bounded number of single steps")
    add_common(p, set_required=True, program=True)
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(func=cmd_step)

    p = sub.add_parser("tables",
                       help="reproduce the study tables with deviations")
    p.add_argument("--sets", default="Ideal,NMR,NMR-Ideal",
                   help="comma-separated set ids")
    p.add_argument("--out", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("converge", help="step-halving convergence probe")
    p.add_argument("--set", required=True)
    p.add_argument("--mi", required=True, help="micro-instruction name")
    p.add_argument("--deltas", default=None,
                   help="comma-separated step sizes, descending")
    p.add_argument("--clock", choices=CLOCK_MODES, default="global")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("serve", help="start the HTTP debug service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8750)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ProgramError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ConfigError, ValidationError, EmulatorError, OSError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
