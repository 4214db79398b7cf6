"""Quantum programs and their execution: nesting, breakpoints, stepping, export.

A program is an ordered list of references, each naming either a micro
instruction of the loaded set or another program in the library.  Programs
flatten depth-first to a plain MI list; of all initialize instructions in the
expansion only the first is kept, so programs remain usable as subroutines.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .errors import ProgramError, ValidationError
from .model import InstructionSet
from .propagate import EvolutionConfig, evolve
from .state import StateVector, new_ground, readout_all

MAX_NESTING_DEPTH = 64

READY = "ready"
RUNNING = "running"
PAUSED = "paused_at_breakpoint"
FINISHED = "finished"
ERROR = "error"


@dataclass(frozen=True)
class QuantumProgram:
    name: str
    steps: tuple

    def __init__(self, name: str, steps):
        if not name:
            raise ValidationError("program name must be non-empty")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "steps", tuple(steps))


def flatten(program: QuantumProgram, library: dict | None,
            iset: InstructionSet) -> list[str]:
    """Depth-first expansion into MI names; only the first Initialize survives."""
    library = library or {}
    expanded: list[str] = []

    def expand(prog: QuantumProgram, stack: tuple):
        if len(stack) > MAX_NESTING_DEPTH:
            raise ProgramError(
                f"program nesting deeper than {MAX_NESTING_DEPTH}: "
                + " -> ".join(stack)
            )
        for ref in prog.steps:
            if ref in iset:
                expanded.append(ref)
            elif ref in library:
                if ref in stack:
                    cycle = stack[stack.index(ref):] + (ref,)
                    raise ProgramError(
                        "cyclic program reference: " + " -> ".join(cycle)
                    )
                expand(library[ref], stack + (ref,))
            else:
                raise ProgramError(f"MI not found: {ref}")

    expand(program, (program.name,))
    out: list[str] = []
    seen_initialize = False
    for name in expanded:
        if iset[name].kind == "initialize":
            if seen_initialize:
                continue
            seen_initialize = True
        out.append(name)
    return out


@dataclass
class TraceRecord:
    index: int
    name: str
    clock: float                      # simulation time when the MI started
    readouts: list                    # per-qubit {x, y, z} after the MI

    def to_dict(self) -> dict:
        return {"index": self.index, "name": self.name, "clock": self.clock,
                "readouts": self.readouts}


@dataclass
class Session:
    """Executor state for one program on one instruction set."""

    iset: InstructionSet
    program: QuantumProgram
    library: dict = dc_field(default_factory=dict)
    config: EvolutionConfig = dc_field(default_factory=EvolutionConfig)
    flat: list = dc_field(default_factory=list)
    state: StateVector = None
    clock: float = 0.0
    pc: int = 0
    status: str = READY
    error: str | None = None
    trace: list = dc_field(default_factory=list)

    def __post_init__(self):
        if not self.flat:
            self.flat = flatten(self.program, self.library, self.iset)
        if self.state is None:
            self.state = new_ground(self.iset.num_qubits)


def new_session(iset: InstructionSet, program: QuantumProgram,
                library: dict | None = None,
                config: EvolutionConfig | None = None) -> Session:
    return Session(iset=iset, program=program, library=dict(library or {}),
                   config=config or EvolutionConfig())


def _execute_one(sess: Session) -> None:
    """Run the MI at pc, append its trace record, advance pc."""
    name = sess.flat[sess.pc]
    mi = sess.iset[name]
    start = sess.clock
    if mi.kind == "initialize":
        sess.state = new_ground(sess.iset.num_qubits)
        sess.clock = 0.0
        start = 0.0
    elif mi.kind == "breakpoint":
        sess.status = PAUSED
    else:
        sess.state, sess.clock = evolve(sess.state, mi, sess.clock, sess.config)
    sess.trace.append(
        TraceRecord(sess.pc, name, start, readout_all(sess.state))
    )
    sess.pc += 1
    if sess.pc >= len(sess.flat):
        sess.status = FINISHED


def _require_runnable(sess: Session) -> None:
    if sess.status not in (READY, PAUSED):
        raise ProgramError(
            f"cannot execute from status {sess.status!r}"
            + (f": {sess.error}" if sess.error else "")
        )


def step(sess: Session) -> Session:
    """Execute exactly one flattened MI; a no-op on a finished session."""
    if sess.status == FINISHED:
        return sess
    _require_runnable(sess)
    if sess.status == PAUSED:
        sess.status = READY
    try:
        _execute_one(sess)
    except Exception as exc:
        sess.status = ERROR
        sess.error = str(exc)
        raise
    return sess


def run(sess: Session) -> Session:
    """Execute until finished or the next breakpoint."""
    _require_runnable(sess)
    sess.status = RUNNING
    try:
        while True:
            _execute_one(sess)
            if sess.status in (FINISHED, PAUSED):
                return sess
    except Exception as exc:
        sess.status = ERROR
        sess.error = str(exc)
        raise


def reset(sess: Session) -> Session:
    """Back to the ready state: ground state, zero clock, empty trace."""
    sess.state = new_ground(sess.iset.num_qubits)
    sess.clock = 0.0
    sess.pc = 0
    sess.status = READY
    sess.error = None
    sess.trace = []
    return sess


# ---------------------------------------------------------------------------
# Result export: plain text, one line per executed MI, 6-decimal values.
# ---------------------------------------------------------------------------


def format_results(sess: Session) -> str:
    if not sess.trace:
        raise ProgramError("no executed steps to export")
    lines = [
        f"# set: {sess.iset.name}",
        f"# program: {sess.program.name}",
        f"# clock_convention: {sess.config.clock}",
    ]
    for rec in sess.trace:
        cells = [str(rec.index), rec.name, f"{rec.clock:.6f}"]
        for qubit in rec.readouts:
            cells += [f"{qubit[axis]:.6f}" for axis in ("x", "y", "z")]
        lines.append(" ".join(cells))
    return "\n".join(lines) + "\n"


def export_results(sess: Session, destination: str | Path) -> str:
    """Write the result document; returns the text that was written."""
    text = format_results(sess)
    Path(destination).write_text(text, encoding="utf-8")
    return text


def parse_results(text: str) -> dict:
    """Re-parse an exported result document."""
    header = {}
    records = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            header[key.strip()] = value.strip()
            continue
        cells = line.split()
        index, name, clock = int(cells[0]), cells[1], float(cells[2])
        values = [float(c) for c in cells[3:]]
        if len(values) % 3:
            raise ValidationError(f"malformed result line: {line!r}")
        readouts = [
            {"x": values[i], "y": values[i + 1], "z": values[i + 2]}
            for i in range(0, len(values), 3)
        ]
        records.append(TraceRecord(index, name, clock, readouts))
    return {"header": header, "records": records}


# ---------------------------------------------------------------------------
# Program files: JSON {name, steps:[string]}.
# ---------------------------------------------------------------------------


def program_to_dict(program: QuantumProgram) -> dict:
    return {"name": program.name, "steps": list(program.steps)}


def program_from_dict(d: dict) -> QuantumProgram:
    try:
        return QuantumProgram(d["name"], [str(s) for s in d["steps"]])
    except KeyError as exc:
        raise ValidationError(f"program is missing {exc.args[0]!r}") from exc


def load_program(path: str | Path) -> QuantumProgram:
    with open(path, encoding="utf-8") as fh:
        return program_from_dict(json.load(fh))


def save_program(program: QuantumProgram, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(program_to_dict(program), fh, indent=2)
        fh.write("\n")
