import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinqc.errors import ConfigError, ValidationError
from spinqc.model import FieldParams, MicroInstruction
from spinqc.oracle import dense_propagator, expm_factor, hamiltonian_matrix
from spinqc.propagate import (
    EvolutionConfig,
    apply_axis_exponential,
    convergence_probe,
    default_delta,
    evolve,
    global_rotation,
)
from spinqc.state import StateVector, fidelity, new_ground

SQ = 1 / math.sqrt(2)
TWO_PI = 2 * math.pi


def random_state(num_qubits: int, seed: int) -> StateVector:
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=2**num_qubits) + 1j * rng.normal(size=2**num_qubits)
    return StateVector(num_qubits, amps / np.linalg.norm(amps))


def random_mi(num_qubits: int, seed: int, driven: bool = True) -> MicroInstruction:
    rng = np.random.default_rng(seed)
    couplings = {}
    for j in range(1, num_qubits + 1):
        for k in range(j + 1, num_qubits + 1):
            for axis in ("x", "y", "z"):
                if rng.random() < 0.5:
                    couplings[(j, k, axis)] = rng.uniform(-1, 1)
    fields = {}
    for j in range(1, num_qubits + 1):
        for axis in ("x", "y", "z"):
            if rng.random() < 0.5:
                fields[(j, axis)] = FieldParams(
                    h0=rng.uniform(-1, 1),
                    h1=rng.uniform(-1, 1) if driven and rng.random() < 0.7 else 0.0,
                    f=rng.uniform(0.1, 2.0),
                    phi=rng.uniform(0, TWO_PI),
                )
    return MicroInstruction(
        f"rand{seed}", tau_over_2pi=rng.uniform(0.05, 0.25),
        couplings=couplings, fields=fields,
    )


class TestGlobalRotation:
    def test_x_plus_on_ground(self):
        out = global_rotation(new_ground(1), "x", "+")
        assert np.allclose(out.amplitudes, SQ * np.array([1, 1j]), atol=1e-12)

    def test_plus_minus_is_identity(self):
        s = random_state(3, 5)
        out = global_rotation(global_rotation(s, "x", "+"), "x", "-")
        assert np.max(np.abs(out.amplitudes - s.amplitudes)) < 1e-12

    def test_y_plus_on_excited(self):
        s = StateVector(1, np.array([0, 1], dtype=complex))
        out = global_rotation(s, "y", "+")
        assert np.allclose(out.amplitudes, SQ * np.array([1, 1]), atol=1e-12)

    def test_rejects_z(self):
        with pytest.raises(ConfigError):
            global_rotation(new_ground(1), "z", "+")


class TestAxisExponential:
    def test_z_coupling_phases(self):
        # pure z-z coupling: |00> and |11> gain e^(+i theta J/4), the
        # antialigned states e^(-i theta J/4)
        mi = MicroInstruction("zz", tau_over_2pi=1.0,
                              couplings={(1, 2, "z"): 0.8})
        theta = 0.37
        s = StateVector(2, 0.5 * np.ones(4, dtype=complex))
        out = apply_axis_exponential(s, mi, "z", 0.0, theta)
        expected = 0.5 * np.exp(1j * theta * 0.8 * 0.25
                                * np.array([1, -1, -1, 1]))
        assert np.max(np.abs(out.amplitudes - expected)) < 1e-12

    @pytest.mark.parametrize("axis", ["x", "y", "z"])
    def test_matches_dense_exponential(self, axis, nmr_set):
        # conjugated phase form == directly exponentiated axis Hamiltonian
        rng = np.random.default_rng(42)
        mi = random_mi(2, 7)
        t_mid = rng.uniform(0, 10)
        theta = rng.uniform(0.01, 0.4)
        s = random_state(2, 21)
        got = apply_axis_exponential(s, mi, axis, t_mid, theta)
        only_axis = MicroInstruction(
            "axis-only", tau_over_2pi=mi.tau_over_2pi,
            couplings={k: v for k, v in mi.couplings.items() if k[2] == axis},
            fields={k: v for k, v in mi.fields.items() if k[1] == axis},
        )
        h = hamiltonian_matrix(only_axis, 2, t_mid)
        expected = expm_factor(h, theta) @ s.amplitudes
        assert np.max(np.abs(got.amplitudes - expected)) < 1e-12

    def test_interaction_pi_phases_on_uniform(self, nmr_set):
        # the pi interaction pulse applied as a single diagonal z step
        mi = nmr_set["I(pi)"]
        s = StateVector(2, 0.5 * np.ones(4, dtype=complex))
        out = apply_axis_exponential(s, mi, "z", 0.0, mi.tau)
        phases = np.angle(out.amplitudes / s.amplitudes)
        # coupling contribution: -pi/4 for aligned, +pi/4 for antialigned
        # (on top of the static-field phases, which we remove here)
        static = mi.tau * (1.0 * np.array([0.5, -0.5, 0.5, -0.5])
                           + 0.25 * np.array([0.5, 0.5, -0.5, -0.5]))
        residual = np.angle(np.exp(1j * (phases - static)))
        expected = np.pi / 4 * np.array([-1, 1, 1, -1])
        # tolerance set by double rounding of the ~3e6 rad static phases
        assert np.max(np.abs(residual - expected)) < 1e-8

    def test_conjugation_identity_y(self):
        # y-axis factor equals Xall diag Xall^dagger computed independently
        mi = random_mi(3, 11)
        s = random_state(3, 31)
        theta = 0.23
        got = apply_axis_exponential(s, mi, "y", 1.7, theta)
        y_only = MicroInstruction(
            "y-only", tau_over_2pi=mi.tau_over_2pi,
            couplings={k: v for k, v in mi.couplings.items() if k[2] == "y"},
            fields={k: v for k, v in mi.fields.items() if k[1] == "y"},
        )
        z_twin = MicroInstruction(
            "z-twin", tau_over_2pi=y_only.tau_over_2pi,
            couplings={(j, k, "z"): v for (j, k, _), v in y_only.couplings.items()},
            fields={(j, "z"): fp for (j, _), fp in y_only.fields.items()},
        )
        diag = expm_factor(hamiltonian_matrix(z_twin, 3, 1.7), theta)
        inner = diag @ global_rotation(s, "x", "-").amplitudes
        expected = global_rotation(StateVector(3, inner), "x", "+")
        assert np.max(np.abs(got.amplitudes - expected.amplitudes)) < 1e-12


class TestEvolve:
    def test_zero_hamiltonian_any_tau(self):
        mi = MicroInstruction("nop", tau_over_2pi=7.0)
        s = random_state(2, 3)
        out, t1 = evolve(s, mi, 0.0)
        assert np.array_equal(out.amplitudes, s.amplitudes)
        assert t1 == mi.tau

    def test_ideal_x1_closed_form(self, ideal_set):
        out, _ = evolve(new_ground(2), ideal_set["X1"], 0.0)
        expected = StateVector(2, SQ * np.array([1, 1j, 0, 0]))
        assert fidelity(out, expected) >= 1 - 1e-10

    def test_nmr_x1_vs_dense_oracle(self, nmr_set):
        mi = nmr_set["X1"]
        cfg = EvolutionConfig()
        out, _ = evolve(new_ground(2), mi, 0.0, cfg)
        delta_ref = default_delta(mi, cfg) / 100
        u = dense_propagator(mi, 0.0, num_qubits=2, delta_ref=delta_ref)
        expected = StateVector(2, u @ new_ground(2).amplitudes)
        assert fidelity(out, expected) >= 1 - 1e-8

    def test_rejects_reserved_kind(self, nmr_set):
        with pytest.raises(ValidationError):
            evolve(new_ground(2), nmr_set["Initialize"], 0.0)

    def test_rejects_negative_duration(self):
        mi = MicroInstruction("bad", tau_over_2pi=-1.0)
        with pytest.raises(ValidationError):
            evolve(new_ground(1), mi, 0.0)

    def test_clock_convention(self, nmr_set):
        # per-instruction: sinusoid phases restart, so a later start time
        # reproduces the t0 = 0 evolution; global: it does not
        mi = nmr_set["X1"]
        s = random_state(2, 17)
        base, _ = evolve(s, mi, 0.0, EvolutionConfig(clock="global"))
        shifted_per, t1 = evolve(
            s, mi, 1.234, EvolutionConfig(clock="per_instruction")
        )
        assert t1 == pytest.approx(1.234 + mi.tau)
        assert np.max(np.abs(shifted_per.amplitudes - base.amplitudes)) < 1e-12
        shifted_global, _ = evolve(s, mi, 1.234, EvolutionConfig(clock="global"))
        assert fidelity(shifted_global, base) < 1 - 1e-6

    def test_norm_drift_all_builtin_mis(self, nmr_set, ideal_set, nmr_ideal_set):
        for iset in (nmr_set, ideal_set, nmr_ideal_set):
            for mi in iset.instructions.values():
                if mi.kind != "normal":
                    continue
                s = random_state(2, hash(mi.name) % 1000)
                out, _ = evolve(s, mi, 0.0)
                assert abs(out.norm() - 1.0) <= 1e-12, (iset.name, mi.name)


class TestExactDiagonalShortcut:
    def test_shortcut_matches_stepping(self):
        mi = MicroInstruction(
            "diag", tau_over_2pi=5.0,
            couplings={(1, 2, "z"): -0.4},
            fields={(1, "z"): FieldParams(h0=0.9), (2, "z"): FieldParams(h0=0.3)},
        )
        s = random_state(2, 8)
        fast, _ = evolve(s, mi, 0.0, EvolutionConfig(exact_diagonal_shortcut=True))
        slow, _ = evolve(s, mi, 0.0, EvolutionConfig(exact_diagonal_shortcut=False))
        assert np.max(np.abs(fast.amplitudes - slow.amplitudes)) < 1e-12

    def test_shortcut_matches_dense_any_tau(self):
        for tau in (0.3, 4.0, 50.0):
            mi = MicroInstruction(
                "diag", tau_over_2pi=tau,
                couplings={(1, 2, "z"): 0.7},
                fields={(1, "z"): FieldParams(h0=-0.6)},
            )
            s = random_state(2, 9)
            fast, _ = evolve(s, mi, 0.0)
            u = dense_propagator(mi, 0.0, num_qubits=2, delta_ref=mi.tau)
            assert np.max(np.abs(fast.amplitudes - u @ s.amplitudes)) < 1e-12

    def test_driven_z_not_shortcut(self):
        # a sinusoidal z field must be integrated, not collapsed to one step
        mi = MicroInstruction(
            "driven-z", tau_over_2pi=2.0,
            fields={(1, "z"): FieldParams(h1=0.5, f=1.0)},
        )
        assert not mi.is_static_diagonal()
        s = random_state(1, 10)
        out, _ = evolve(s, mi, 0.0)
        u = dense_propagator(mi, 0.0, num_qubits=1, delta_ref=mi.tau / 20000)
        assert fidelity(out, StateVector(1, u @ s.amplitudes)) >= 1 - 1e-8


class TestConvergenceProbe:
    def test_nmr_x1_second_order_ratio(self, nmr_set):
        mi = nmr_set["X1"]
        d0 = TWO_PI / 64
        deltas = [d0, d0 / 2, d0 / 4, d0 / 32]
        table = convergence_probe(mi, 0.0, new_ground(2), deltas)
        errs = [e for _, e in table]
        assert 3.5 <= errs[0] / errs[1] <= 4.5
        assert 3.5 <= errs[1] / errs[2] <= 4.5

    def test_static_diagonal_error_free(self):
        mi = MicroInstruction("diag", tau_over_2pi=1.0,
                              couplings={(1, 2, "z"): 0.3})
        table = convergence_probe(mi, 0.0, new_ground(2),
                                  [0.5, 0.25, 0.125])
        assert all(err < 1e-13 for _, err in table)

    def test_requires_three_entries(self, nmr_set):
        with pytest.raises(ConfigError):
            convergence_probe(nmr_set["X1"], 0.0, new_ground(2), [0.1])

    def test_requires_descending(self, nmr_set):
        with pytest.raises(ConfigError):
            convergence_probe(nmr_set["X1"], 0.0, new_ground(2),
                              [0.1, 0.2, 0.05])


class TestOracleEquivalence:
    @pytest.mark.parametrize("num_qubits", [2, 3])
    def test_random_mis_match_dense(self, num_qubits):
        cfg = EvolutionConfig()
        for seed in range(8):
            mi = random_mi(num_qubits, seed * 13 + num_qubits)
            s = random_state(num_qubits, seed)
            out, _ = evolve(s, mi, 0.0, cfg)
            delta_ref = default_delta(mi, cfg) / 100
            u = dense_propagator(mi, 0.0, num_qubits=num_qubits,
                                 delta_ref=delta_ref)
            expected = StateVector(num_qubits, u @ s.amplitudes)
            assert fidelity(out, expected) >= 1 - 1e-8, (num_qubits, seed)


@given(st.integers(0, 10_000), st.integers(1, 3))
@settings(max_examples=20, deadline=None)
def test_evolve_preserves_norm(seed, num_qubits):
    mi = random_mi(num_qubits, seed)
    s = random_state(num_qubits, seed + 1)
    out, _ = evolve(s, mi, 0.0)
    assert abs(out.norm() - 1.0) < 1e-12
