"""Hamiltonian parameterization: micro-instructions, instruction sets, builtins.

A micro-instruction (MI) holds the complete set of couplings and field
parameters that stay fixed while it acts, plus its duration.  Durations are
stored as tau/(2 pi) (the file and editor unit); frequencies are dimensionless
with 1 equal to the reference frequency (500 MHz for the NMR parameter set).

The Hamiltonian during one MI is

    H(t) = - sum_{j<k, a} J_{j,k,a} S_j^a S_k^a
           - sum_{j, a} (h_{j,a,0} + h_{j,a,1} sin(f_{j,a} t + phi_{j,a})) S_j^a

with hbar = 1.  Each coupling is stored once (j < k) and counted once.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

from .errors import ConfigError, ValidationError

TWO_PI = 2.0 * math.pi

AXES = ("x", "y", "z")
KINDS = ("normal", "initialize", "breakpoint")

BUILTIN_SET_IDS = ("NMR", "Ideal", "NMR-Ideal")


@dataclass(frozen=True)
class FieldParams:
    """Static amplitude h0 plus one sinusoid h1*sin(f*t + phi) per (qubit, axis)."""

    h0: float = 0.0
    h1: float = 0.0
    f: float = 0.0
    phi: float = 0.0

    def at(self, t: float) -> float:
        """Instantaneous field g(t) = h0 + h1 sin(f t + phi)."""
        if self.h1 == 0.0:
            return self.h0
        return self.h0 + self.h1 * math.sin(self.f * t + self.phi)

    @property
    def is_static(self) -> bool:
        return self.h1 == 0.0

    @property
    def is_zero(self) -> bool:
        return self.h0 == 0.0 and self.h1 == 0.0


@dataclass(frozen=True)
class MicroInstruction:
    """Smallest unit of operation: fixed parameters applied for duration tau."""

    name: str
    kind: str = "normal"
    tau_over_2pi: float = 0.0
    couplings: dict = field(default_factory=dict)  # (j, k, axis) -> J, j < k
    fields: dict = field(default_factory=dict)     # (j, axis) -> FieldParams

    @property
    def tau(self) -> float:
        return self.tau_over_2pi * TWO_PI

    def field_params(self, j: int, axis: str) -> FieldParams:
        return self.fields.get((j, axis), FieldParams())

    def axis_active(self, axis: str) -> bool:
        """True if this MI has any coupling or field on the given axis."""
        return any(a == axis and v != 0.0 for (_, _, a), v in self.couplings.items()) or any(
            a == axis and not fp.is_zero for (_, a), fp in self.fields.items()
        )

    def axis_time_dependent(self, axis: str) -> bool:
        return any(a == axis and fp.h1 != 0.0 for (_, a), fp in self.fields.items())

    def is_static_diagonal(self) -> bool:
        """Only z-axis terms, all static: the exponential is exact in one step."""
        return (
            not self.axis_active("x")
            and not self.axis_active("y")
            and not self.axis_time_dependent("z")
        )

    def max_qubit(self) -> int:
        qubits = [k for (_, k, _) in self.couplings]
        qubits += [j for (j, _, _) in self.couplings]
        qubits += [j for (j, _) in self.fields]
        return max(qubits, default=0)


@dataclass(frozen=True)
class AxisCoefficients:
    """Instantaneous single-axis Hamiltonian data: H_a = -(couplings + fields)."""

    couplings: dict  # (j, k) -> J
    fields: dict     # j -> g_j(t)


def axis_hamiltonian(mi: MicroInstruction, axis: str, t: float) -> AxisCoefficients:
    """Pair couplings and instantaneous per-qubit fields for one axis at time t."""
    if axis not in AXES:
        raise ConfigError(f"unknown axis {axis!r}")
    couplings = {
        (j, k): v for (j, k, a), v in mi.couplings.items() if a == axis and v != 0.0
    }
    fields = {}
    for (j, a), fp in mi.fields.items():
        if a != axis or fp.is_zero:
            continue
        fields[j] = fp.at(t)
    return AxisCoefficients(couplings, fields)


@dataclass(frozen=True)
class InstructionSet:
    """Named collection of MIs defining one hardware model."""

    name: str
    num_qubits: int
    instructions: dict  # name -> MicroInstruction, insertion-ordered

    def __getitem__(self, name: str) -> MicroInstruction:
        return self.instructions[name]

    def __contains__(self, name: str) -> bool:
        return name in self.instructions

    def _single_kind(self, kind: str) -> str | None:
        names = [n for n, mi in self.instructions.items() if mi.kind == kind]
        return names[0] if len(names) == 1 else None

    @property
    def initialize_name(self) -> str | None:
        return self._single_kind("initialize")

    @property
    def breakpoint_name(self) -> str | None:
        return self._single_kind("breakpoint")


def validate_set(iset: InstructionSet) -> list[str]:
    """Diagnostics for every violated invariant; empty list means valid."""
    diags = []
    if iset.num_qubits < 1:
        diags.append(f"num_qubits must be >= 1, got {iset.num_qubits}")
    for kind in ("initialize", "breakpoint"):
        count = sum(1 for mi in iset.instructions.values() if mi.kind == kind)
        if count != 1:
            diags.append(f"expected exactly one {kind} instruction, found {count}")
    for name, mi in iset.instructions.items():
        if mi.name != name:
            diags.append(f"{name}: key does not match instruction name {mi.name!r}")
        if mi.kind not in KINDS:
            diags.append(f"{name}: unknown kind {mi.kind!r}")
        if mi.tau_over_2pi < 0 or not math.isfinite(mi.tau_over_2pi):
            diags.append(f"{name}: tau must be finite and >= 0")
        if mi.kind == "breakpoint" and (
            mi.tau_over_2pi != 0 or mi.couplings or mi.fields
        ):
            diags.append(f"{name}: breakpoint must have tau = 0 and no parameters")
        for (j, k, axis), v in mi.couplings.items():
            if axis not in AXES:
                diags.append(f"{name}: coupling ({j},{k}) has unknown axis {axis!r}")
            if not j < k:
                diags.append(f"{name}: coupling ({j},{k},{axis}) must have j < k")
            if k > iset.num_qubits or j < 1:
                diags.append(
                    f"{name}: coupling ({j},{k},{axis}) references a qubit outside "
                    f"1..{iset.num_qubits}"
                )
            if not math.isfinite(v):
                diags.append(f"{name}: coupling ({j},{k},{axis}) is not finite")
        for (j, axis), fp in mi.fields.items():
            if axis not in AXES:
                diags.append(f"{name}: field on qubit {j} has unknown axis {axis!r}")
            if not 1 <= j <= iset.num_qubits:
                diags.append(
                    f"{name}: field references qubit {j} outside 1..{iset.num_qubits}"
                )
            for attr in ("h0", "h1", "f", "phi"):
                if not math.isfinite(getattr(fp, attr)):
                    diags.append(f"{name}: field ({j},{axis}).{attr} is not finite")
    return diags


# ---------------------------------------------------------------------------
# Builtin sets.
#
# The two-qubit NMR model: static z fields 1 and 0.25 (resonance frequencies of
# the two spins), z-z coupling -1e-6.  A rotation about x (y) is driven by an
# RF pulse along y (x) at the resonant spin's frequency; the pulse power
# tau * |h1| = pi yields a pi/2 rotation.  The off-resonant spin sees the same
# pulse at one quarter amplitude.  Inverses reverse the sign of the driving
# amplitude h1 (Ideal set: of the static amplitude h0).
# ---------------------------------------------------------------------------

_NMR_J = {(1, 2, "z"): -1e-6}
_NMR_STATIC = {(1, "z"): FieldParams(h0=1.0), (2, "z"): FieldParams(h0=0.25)}
# rotation name -> (pulse axis, driven qubit, sign of h1 on the driven qubit)
_NMR_ROTATIONS = {
    "X1": ("y", 1, -1.0),
    "Xb1": ("y", 1, +1.0),
    "X2": ("y", 2, -1.0),
    "Xb2": ("y", 2, +1.0),
    "Y1": ("x", 1, +1.0),
    "Yb1": ("x", 1, -1.0),
    "Y2": ("x", 2, +1.0),
    "Yb2": ("x", 2, -1.0),
}
_NMR_PULSE_AMP = {1: 0.05, 2: 0.0125}
_NMR_RESONANCE = {1: 1.0, 2: 0.25}
_NMR_TAU = {1: 10.0, 2: 40.0}

_IDEAL_ROTATIONS = {
    "X1": ("x", 1, +1.0),
    "Xb1": ("x", 1, -1.0),
    "X2": ("x", 2, +1.0),
    "Xb2": ("x", 2, -1.0),
    "Y1": ("y", 1, +1.0),
    "Yb1": ("y", 1, -1.0),
    "Y2": ("y", 2, +1.0),
    "Yb2": ("y", 2, -1.0),
}

_ROTATION_ORDER = ("X1", "Xb1", "X2", "Xb2", "Y1", "Yb1", "Y2", "Yb2")


def _reserved() -> list[MicroInstruction]:
    return [
        MicroInstruction("Initialize", kind="initialize"),
        MicroInstruction("Breakpoint", kind="breakpoint"),
    ]


def _nmr_set(crosstalk: bool) -> InstructionSet:
    mis = []
    for name in _ROTATION_ORDER:
        axis, target, sign = _NMR_ROTATIONS[name]
        f = _NMR_RESONANCE[target]
        fields = dict(_NMR_STATIC)
        for j in (1, 2):
            if j != target and not crosstalk:
                continue
            fields[(j, axis)] = FieldParams(h1=sign * _NMR_PULSE_AMP[j], f=f)
        mis.append(
            MicroInstruction(name, tau_over_2pi=_NMR_TAU[target],
                             couplings=dict(_NMR_J), fields=fields)
        )
    for name, tau in (("I(pi/2)", 25e4), ("I(pi)", 50e4)):
        mis.append(
            MicroInstruction(name, tau_over_2pi=tau, couplings=dict(_NMR_J),
                             fields=dict(_NMR_STATIC))
        )
    mis += _reserved()
    label = "NMR" if crosstalk else "NMR-Ideal"
    return InstructionSet(label, 2, {mi.name: mi for mi in mis})


def _ideal_set() -> InstructionSet:
    mis = []
    for name in _ROTATION_ORDER:
        axis, target, sign = _IDEAL_ROTATIONS[name]
        mis.append(
            MicroInstruction(name, tau_over_2pi=0.25,
                             fields={(target, axis): FieldParams(h0=sign)})
        )
    for name, tau in (("I(pi/2)", 25e4), ("I(pi)", 50e4)):
        mis.append(
            MicroInstruction(name, tau_over_2pi=tau, couplings=dict(_NMR_J))
        )
    mis += _reserved()
    return InstructionSet("Ideal", 2, {mi.name: mi for mi in mis})


def builtin_set(set_id: str) -> InstructionSet:
    """One of the shipped hardware models: NMR, Ideal, or NMR-Ideal."""
    if set_id == "NMR":
        return _nmr_set(crosstalk=True)
    if set_id == "NMR-Ideal":
        return _nmr_set(crosstalk=False)
    if set_id == "Ideal":
        return _ideal_set()
    raise ConfigError(
        f"unknown instruction set {set_id!r}; builtins are {', '.join(BUILTIN_SET_IDS)}"
    )


# ---------------------------------------------------------------------------
# JSON serialization.  Unspecified parameters default to 0.
# ---------------------------------------------------------------------------


def mi_to_dict(mi: MicroInstruction) -> dict:
    return {
        "name": mi.name,
        "kind": mi.kind,
        "tau_over_2pi": mi.tau_over_2pi,
        "J": [
            {"j": j, "k": k, "axis": axis, "value": v}
            for (j, k, axis), v in mi.couplings.items()
        ],
        "fields": [
            {"qubit": j, "axis": axis, "h0": fp.h0, "h1": fp.h1,
             "f": fp.f, "phi": fp.phi}
            for (j, axis), fp in mi.fields.items()
        ],
    }


def mi_from_dict(d: dict) -> MicroInstruction:
    try:
        name = d["name"]
    except KeyError as exc:
        raise ValidationError("instruction is missing a name") from exc
    couplings = {}
    for entry in d.get("J", []):
        key = (int(entry["j"]), int(entry["k"]), entry["axis"])
        if key in couplings:
            raise ValidationError(f"{name}: duplicate coupling {key}")
        couplings[key] = float(entry["value"])
    fields = {}
    for entry in d.get("fields", []):
        key = (int(entry["qubit"]), entry["axis"])
        if key in fields:
            raise ValidationError(f"{name}: duplicate field {key}")
        fields[key] = FieldParams(
            h0=float(entry.get("h0", 0.0)),
            h1=float(entry.get("h1", 0.0)),
            f=float(entry.get("f", 0.0)),
            phi=float(entry.get("phi", 0.0)),
        )
    return MicroInstruction(
        name=name,
        kind=d.get("kind", "normal"),
        tau_over_2pi=float(d.get("tau_over_2pi", 0.0)),
        couplings=couplings,
        fields=fields,
    )


def set_to_dict(iset: InstructionSet) -> dict:
    return {
        "name": iset.name,
        "num_qubits": iset.num_qubits,
        "instructions": [mi_to_dict(mi) for mi in iset.instructions.values()],
    }


def set_from_dict(d: dict) -> InstructionSet:
    instructions = {}
    for entry in d.get("instructions", []):
        mi = mi_from_dict(entry)
        if mi.name in instructions:
            raise ValidationError(f"duplicate instruction name {mi.name!r}")
        instructions[mi.name] = mi
    try:
        iset = InstructionSet(d["name"], int(d["num_qubits"]), instructions)
    except KeyError as exc:
        raise ValidationError(f"instruction set is missing {exc.args[0]!r}") from exc
    diags = validate_set(iset)
    if diags:
        raise ValidationError("invalid instruction set: " + "; ".join(diags))
    return iset


def load_set(path: str | Path) -> InstructionSet:
    with open(path, encoding="utf-8") as fh:
        return set_from_dict(json.load(fh))


def save_set(iset: InstructionSet, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(set_to_dict(iset), fh, indent=2)
        fh.write("\n")


def packaged_set(set_id: str) -> InstructionSet:
    """Load one of the shipped data files (same content as builtin_set)."""
    fname = set_id.lower().replace("-", "_") + ".json"
    ref = resources.files("spinqc").joinpath("data", "sets", fname)
    with ref.open(encoding="utf-8") as fh:
        return set_from_dict(json.load(fh))


def resolve_set(ident: str) -> InstructionSet:
    """Builtin id or a path to a set file."""
    if ident in BUILTIN_SET_IDS:
        return builtin_set(ident)
    path = Path(ident)
    if path.exists():
        return load_set(path)
    raise ConfigError(f"unknown instruction set {ident!r} (not a builtin, not a file)")


def with_inverted_drive(mi: MicroInstruction) -> MicroInstruction:
    """Inverse rotation: reverse the sign of every nonzero driving amplitude.

    Sinusoidally driven MIs flip h1; purely static ones flip h0.
    """
    driven = any(fp.h1 != 0.0 for fp in mi.fields.values())
    fields = {}
    for key, fp in mi.fields.items():
        if driven and fp.h1 != 0.0:
            fields[key] = replace(fp, h1=-fp.h1)
        elif not driven and fp.h0 != 0.0 and key[1] != "z":
            fields[key] = replace(fp, h0=-fp.h0)
        else:
            fields[key] = fp
    return replace(mi, fields=fields)
