import json
import math

import pytest

from spinqc.errors import ConfigError, ValidationError
from spinqc.model import (
    BUILTIN_SET_IDS,
    FieldParams,
    InstructionSet,
    MicroInstruction,
    axis_hamiltonian,
    builtin_set,
    mi_from_dict,
    mi_to_dict,
    packaged_set,
    resolve_set,
    set_from_dict,
    set_to_dict,
    validate_set,
    with_inverted_drive,
)

TWO_PI = 2 * math.pi


class TestBuiltinParameters:
    def test_nmr_x1(self, nmr_set):
        mi = nmr_set["X1"]
        assert mi.tau_over_2pi == 10
        assert mi.couplings == {(1, 2, "z"): -1e-6}
        assert mi.field_params(1, "z") == FieldParams(h0=1.0)
        assert mi.field_params(2, "z") == FieldParams(h0=0.25)
        assert mi.field_params(1, "y") == FieldParams(h1=-0.05, f=1.0)
        assert mi.field_params(2, "y") == FieldParams(h1=-0.0125, f=1.0)
        assert mi.field_params(1, "x").is_zero

    def test_nmr_qubit2_pulses(self, nmr_set):
        mi = nmr_set["Xb2"]
        assert mi.tau_over_2pi == 40
        assert mi.field_params(1, "y") == FieldParams(h1=0.05, f=0.25)
        assert mi.field_params(2, "y") == FieldParams(h1=0.0125, f=0.25)
        mi = nmr_set["Yb2"]
        assert mi.field_params(1, "x") == FieldParams(h1=-0.05, f=0.25)
        assert mi.field_params(2, "x") == FieldParams(h1=-0.0125, f=0.25)

    def test_ideal_x1(self, ideal_set):
        mi = ideal_set["X1"]
        assert mi.tau_over_2pi == 0.25
        assert mi.couplings == {}
        assert mi.fields == {(1, "x"): FieldParams(h0=1.0)}

    def test_ideal_interaction_instructions(self, ideal_set):
        for name, tau in (("I(pi/2)", 25e4), ("I(pi)", 50e4)):
            mi = ideal_set[name]
            assert mi.tau_over_2pi == tau
            assert mi.couplings == {(1, 2, "z"): -1e-6}
            assert mi.fields == {}

    def test_nmr_ideal_drops_off_resonant_drive(self, nmr_ideal_set, nmr_set):
        mi = nmr_ideal_set["X1"]
        assert mi.field_params(2, "y").is_zero
        assert mi.field_params(1, "y") == nmr_set["X1"].field_params(1, "y")
        mi = nmr_ideal_set["Xb2"]
        assert mi.field_params(1, "y").is_zero
        assert mi.field_params(2, "y") == nmr_set["Xb2"].field_params(2, "y")

    def test_unknown_set(self):
        with pytest.raises(ConfigError):
            builtin_set("bogus")

    def test_inverse_by_sign_reversal(self, nmr_set, ideal_set):
        assert with_inverted_drive(nmr_set["X1"]).fields == nmr_set["Xb1"].fields
        assert with_inverted_drive(nmr_set["Yb2"]).fields == nmr_set["Y2"].fields
        assert with_inverted_drive(ideal_set["X1"]).fields == ideal_set["Xb1"].fields


class TestPulseIdentities:
    def test_pulse_power(self, nmr_set):
        # every rotation pulse has power tau * |h1| = pi on its driven qubit
        for name in ("X1", "Xb1", "X2", "Xb2", "Y1", "Yb1", "Y2", "Yb2"):
            mi = nmr_set[name]
            target = int(name[-1])
            axis = "y" if name[0] == "X" else "x"
            h1 = mi.field_params(target, axis).h1
            assert mi.tau * abs(h1) == pytest.approx(math.pi, rel=1e-12)

    def test_ideal_rotation_closure(self, ideal_set):
        # static rotations: tau * |h0| = pi/2
        for name in ("X1", "Xb1", "X2", "Xb2", "Y1", "Yb1", "Y2", "Yb2"):
            mi = ideal_set[name]
            (h0,) = [fp.h0 for fp in mi.fields.values()]
            assert mi.tau * abs(h0) == pytest.approx(math.pi / 2, rel=1e-12)

    def test_interaction_durations(self, nmr_set):
        j = abs(nmr_set["I(pi/2)"].couplings[(1, 2, "z")])
        assert j * nmr_set["I(pi/2)"].tau == pytest.approx(math.pi / 2, rel=1e-12)
        assert j * nmr_set["I(pi)"].tau == pytest.approx(math.pi, rel=1e-12)

    def test_resonant_frequencies(self, nmr_set):
        # each pulse is tuned to its target's static z field
        for name, f in (("X1", 1.0), ("X2", 0.25), ("Y1", 1.0), ("Yb2", 0.25)):
            mi = nmr_set[name]
            target = int(name[-1])
            assert mi.field_params(target, "z").h0 == f
            axis = "y" if name[0] == "X" else "x"
            assert mi.field_params(target, axis).f == f


class TestAxisHamiltonian:
    def test_nmr_x1_z_axis(self, nmr_set):
        coeffs = axis_hamiltonian(nmr_set["X1"], "z", t=3.7)
        assert coeffs.couplings == {(1, 2): -1e-6}
        assert coeffs.fields == {1: 1.0, 2: 0.25}

    def test_all_zero_mi(self):
        mi = MicroInstruction("nop", tau_over_2pi=1.0)
        for axis in ("x", "y", "z"):
            coeffs = axis_hamiltonian(mi, axis, t=0.0)
            assert coeffs.couplings == {} and coeffs.fields == {}

    def test_sine_evaluation(self, nmr_set):
        coeffs = axis_hamiltonian(nmr_set["X1"], "y", t=math.pi / 2)
        assert coeffs.fields[1] == pytest.approx(-0.05, rel=1e-12)
        assert coeffs.fields[2] == pytest.approx(-0.0125, rel=1e-12)

    def test_unknown_axis(self, nmr_set):
        with pytest.raises(ConfigError):
            axis_hamiltonian(nmr_set["X1"], "w", 0.0)


class TestValidation:
    def test_builtins_valid(self):
        for sid in BUILTIN_SET_IDS:
            assert validate_set(builtin_set(sid)) == []

    def test_missing_initialize(self, nmr_set):
        instructions = {
            n: mi for n, mi in nmr_set.instructions.items() if mi.kind != "initialize"
        }
        diags = validate_set(InstructionSet("broken", 2, instructions))
        assert len(diags) == 1 and "initialize" in diags[0]

    def test_unordered_coupling(self):
        mi = MicroInstruction("bad", tau_over_2pi=1.0, couplings={(2, 1, "z"): 0.5})
        iset = InstructionSet("s", 2, {
            "bad": mi,
            "Initialize": MicroInstruction("Initialize", kind="initialize"),
            "Breakpoint": MicroInstruction("Breakpoint", kind="breakpoint"),
        })
        diags = validate_set(iset)
        assert len(diags) == 1 and "j < k" in diags[0]

    def test_breakpoint_with_duration(self):
        iset = InstructionSet("s", 1, {
            "Initialize": MicroInstruction("Initialize", kind="initialize"),
            "Breakpoint": MicroInstruction("Breakpoint", kind="breakpoint",
                                           tau_over_2pi=1.0),
        })
        diags = validate_set(iset)
        assert len(diags) == 1 and "Breakpoint" in diags[0]


class TestSerialization:
    def test_mi_round_trip(self, nmr_set):
        for mi in nmr_set.instructions.values():
            assert mi_from_dict(mi_to_dict(mi)) == mi

    def test_set_round_trip(self, nmr_set):
        assert set_from_dict(set_to_dict(nmr_set)) == nmr_set

    def test_packaged_files_match_builtins(self):
        for sid in BUILTIN_SET_IDS:
            assert packaged_set(sid) == builtin_set(sid)

    def test_defaults_to_zero(self):
        mi = mi_from_dict({
            "name": "partial",
            "fields": [{"qubit": 1, "axis": "z", "h0": 0.5}],
        })
        assert mi.tau_over_2pi == 0.0
        assert mi.field_params(1, "z") == FieldParams(h0=0.5)

    def test_duplicate_instruction_rejected(self, nmr_set):
        doc = set_to_dict(nmr_set)
        doc["instructions"].append(doc["instructions"][0])
        with pytest.raises(ValidationError):
            set_from_dict(doc)

    def test_resolve_set_path(self, tmp_path, ideal_set):
        path = tmp_path / "ideal.json"
        path.write_text(json.dumps(set_to_dict(ideal_set)))
        assert resolve_set(str(path)) == ideal_set

    def test_resolve_unknown(self):
        with pytest.raises(ConfigError):
            resolve_set("no-such-set")
