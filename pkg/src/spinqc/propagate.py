"""Time integration of one micro-instruction with the symmetrized product formula.

One time step of size delta applies

    U_step = e^(-i delta Hz/2) e^(-i delta Hy/2) e^(-i delta Hx) e^(-i delta Hy/2) e^(-i delta Hz/2)

with every axis Hamiltonian evaluated at the step midpoint.  The step is
unitary by construction (unconditionally stable) and the global error is
second order in delta.

Each single-axis exponential reduces to a diagonal phase in the S^z product
basis: H_z is already diagonal, and the y (x) exponential is the z-form built
from the y (x) parameters conjugated by a global pi/2 rotation of all spins
about the x (y) axis.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .errors import ConfigError, ValidationError
from .model import AXES, TWO_PI, MicroInstruction
from .state import StateVector, apply_diagonal_phase, fidelity, spin_z_table

DEFAULT_SAMPLES_PER_PERIOD = 64

CLOCK_MODES = ("global", "per_instruction")


@dataclass(frozen=True)
class EvolutionConfig:
    """Step-size policy and clock convention for evolve().

    samples_per_period fixes delta = T_min / samples_per_period where T_min is
    the shortest period among the MI's active frequency scales; delta_max, if
    set, overrides that policy as a hard cap.  clock selects whether sinusoid
    arguments use the running global time or restart at zero for each MI.
    """

    samples_per_period: int = DEFAULT_SAMPLES_PER_PERIOD
    clock: str = "global"
    exact_diagonal_shortcut: bool = True
    delta_max: float | None = None

    def __post_init__(self):
        if self.samples_per_period < 1:
            raise ConfigError("samples_per_period must be >= 1")
        if self.clock not in CLOCK_MODES:
            raise ConfigError(f"clock must be one of {CLOCK_MODES}")
        if self.delta_max is not None and not self.delta_max > 0:
            raise ConfigError("delta_max must be positive")


# 2x2 rotations by pi/2 about x and y (hbar = 1): R = exp(+-i pi S^axis / 2)
_SQ = 1.0 / math.sqrt(2.0)
_ROT_2x2 = {
    ("x", +1): _SQ * np.array([[1, 1j], [1j, 1]]),
    ("x", -1): _SQ * np.array([[1, -1j], [-1j, 1]]),
    ("y", +1): _SQ * np.array([[1, 1], [-1, 1]]),
    ("y", -1): _SQ * np.array([[1, -1], [1, 1]]),
}


@lru_cache(maxsize=64)
def _global_rotation_matrix(num_qubits: int, axis: str, sign: int) -> np.ndarray:
    m = _ROT_2x2[(axis, sign)]
    out = m
    for _ in range(num_qubits - 1):
        out = np.kron(out, m)
    # re-unitarize: removes the rounding bias of the kron products, which
    # would otherwise scale the state norm systematically over many steps
    u, _, vt = np.linalg.svd(out)
    out = u @ vt
    out.setflags(write=False)
    return out


def global_rotation(state: StateVector, axis: str, direction: str) -> StateVector:
    """exp(+-i pi S_j^axis / 2) applied to every qubit."""
    if axis not in ("x", "y"):
        raise ConfigError(f"global rotation axis must be x or y, got {axis!r}")
    if direction not in ("+", "-"):
        raise ConfigError(f"direction must be '+' or '-', got {direction!r}")
    sign = 1 if direction == "+" else -1
    rot = _global_rotation_matrix(state.num_qubits, axis, sign)
    return StateVector(state.num_qubits, rot @ state.amplitudes)


class _AxisTerms:
    """Per-axis phase data for one MI: base (J + static fields) plus sinusoids."""

    __slots__ = ("base", "driven", "static_cache", "qubit_fields")

    def __init__(self, mi: MicroInstruction, num_qubits: int, axis: str):
        spins = spin_z_table(num_qubits)
        base = np.zeros(2**num_qubits)
        coupled = False
        for (j, k, a), v in mi.couplings.items():
            if a == axis and v != 0.0:
                base = base + v * spins[j - 1] * spins[k - 1]
                coupled = True
        driven = []
        qubit_fields = []
        for (j, a), fp in mi.fields.items():
            if a != axis or fp.is_zero:
                continue
            qubit_fields.append((j, fp))
            if fp.h0 != 0.0:
                base = base + fp.h0 * spins[j - 1]
            if fp.h1 != 0.0:
                driven.append((spins[j - 1], fp.h1, fp.f, fp.phi))
        self.base = base
        self.driven = driven
        # without couplings the axis exponential factorizes into independent
        # single-qubit rotations; None marks the coupled (conjugated) path
        self.qubit_fields = None if coupled else qubit_fields
        self.static_cache: dict[float, np.ndarray] = {}

    def phase_factor(self, theta: float, t: float) -> np.ndarray:
        """exp(+i theta (J s s + g(t) s)) per basis state; H is the negated sum."""
        if not self.driven:
            cached = self.static_cache.get(theta)
            if cached is None:
                cached = np.exp(1j * theta * self.base)
                # a cached factor is reused every step: cancel its sub-ulp
                # modulus error or the norm drifts systematically
                cached /= np.abs(cached)
                self.static_cache[theta] = cached
            return cached
        vec = self.base
        for svec, h1, f, phi in self.driven:
            vec = vec + (h1 * math.sin(f * t + phi)) * svec
        return np.exp(1j * theta * vec)


def _rotate_single(amps: np.ndarray, j: int, axis: str, phi: float) -> np.ndarray:
    """exp(+i phi S_j^axis) on qubit j for axis x or y."""
    c = math.cos(0.5 * phi)
    s = math.sin(0.5 * phi)
    lo = 1 << (j - 1)
    view = amps.reshape(-1, 2, lo)
    out = np.empty_like(view)
    if axis == "x":
        out[:, 0, :] = c * view[:, 0, :] + (1j * s) * view[:, 1, :]
        out[:, 1, :] = (1j * s) * view[:, 0, :] + c * view[:, 1, :]
    else:
        out[:, 0, :] = c * view[:, 0, :] + s * view[:, 1, :]
        out[:, 1, :] = c * view[:, 1, :] - s * view[:, 0, :]
    return out.reshape(-1)


def _apply_axis(amps: np.ndarray, axis: str, terms: _AxisTerms, theta: float,
                t: float, num_qubits: int) -> np.ndarray:
    if axis == "z":
        return amps * terms.phase_factor(theta, t)
    if terms.qubit_fields is not None:
        # coupling-free axis: independent single-qubit rotations, with fresh
        # trigonometric factors each step (no reused rounded matrix)
        for j, fp in terms.qubit_fields:
            amps = _rotate_single(amps, j, axis, theta * fp.at(t))
        return amps
    pf = terms.phase_factor(theta, t)
    if axis == "y":
        # e^(-i theta Hy) = Xall diag Xall^dagger
        amps = _global_rotation_matrix(num_qubits, "x", -1) @ amps
        amps = amps * pf
        return _global_rotation_matrix(num_qubits, "x", +1) @ amps
    # e^(-i theta Hx) = Yall^dagger diag Yall
    amps = _global_rotation_matrix(num_qubits, "y", +1) @ amps
    amps = amps * pf
    return _global_rotation_matrix(num_qubits, "y", -1) @ amps


def apply_axis_exponential(state: StateVector, mi: MicroInstruction, axis: str,
                           t_mid: float, theta: float) -> StateVector:
    """Single product-formula factor e^(-i theta H_axis(t_mid))."""
    if axis not in AXES:
        raise ConfigError(f"unknown axis {axis!r}")
    terms = _AxisTerms(mi, state.num_qubits, axis)
    amps = _apply_axis(state.amplitudes, axis, terms, theta, t_mid, state.num_qubits)
    return StateVector(state.num_qubits, amps)


def _check_parameters(mi: MicroInstruction) -> None:
    values = [mi.tau_over_2pi]
    values += list(mi.couplings.values())
    for fp in mi.fields.values():
        values += [fp.h0, fp.h1, fp.f, fp.phi]
    if not all(math.isfinite(v) for v in values):
        raise ValidationError(f"{mi.name}: non-finite parameter")
    if mi.tau < 0:
        raise ValidationError(f"{mi.name}: negative duration")


def default_delta(mi: MicroInstruction, cfg: EvolutionConfig) -> float:
    """Step-size policy: delta = min(tau, T_min / samples_per_period).

    T_min = 2 pi / Omega with Omega the larger of the fastest sinusoid
    frequency and the summed magnitude of all couplings and field amplitudes
    (a bound on the Hamiltonian's energy scale, which controls the splitting
    error when several axes are active at once).
    """
    tau = mi.tau
    if cfg.delta_max is not None:
        return min(tau, cfg.delta_max)
    energy = sum(abs(v) for v in mi.couplings.values())
    f_max = 0.0
    for fp in mi.fields.values():
        energy += abs(fp.h0) + abs(fp.h1)
        if fp.h1 != 0.0:
            f_max = max(f_max, abs(fp.f))
    omega = max(energy, f_max)
    if omega == 0.0:
        return tau
    return min(tau, TWO_PI / omega / cfg.samples_per_period)


_STEP_TEMPLATE = (("z", 0.5), ("y", 0.5), ("x", 1.0), ("y", 0.5), ("z", 0.5))


def evolve(state: StateVector, mi: MicroInstruction, t0: float,
           cfg: EvolutionConfig | None = None) -> tuple[StateVector, float]:
    """Integrate the state across one MI; returns (new state, t0 + tau)."""
    cfg = cfg or EvolutionConfig()
    if mi.kind != "normal":
        raise ValidationError(f"cannot evolve reserved instruction {mi.name!r}")
    _check_parameters(mi)
    if mi.max_qubit() > state.num_qubits:
        raise ValidationError(
            f"{mi.name}: references qubit {mi.max_qubit()} beyond state size "
            f"{state.num_qubits}"
        )
    tau = mi.tau
    if tau == 0.0:
        return state, t0
    num_qubits = state.num_qubits
    tbase = t0 if cfg.clock == "global" else 0.0

    terms = {axis: _AxisTerms(mi, num_qubits, axis)
             for axis in AXES if mi.axis_active(axis)}
    if not terms:
        return state, t0 + tau

    if cfg.exact_diagonal_shortcut and mi.is_static_diagonal():
        z = terms["z"]
        return apply_diagonal_phase(state, tau * z.base), t0 + tau

    delta0 = default_delta(mi, cfg)
    m = max(1, math.ceil(tau / delta0))
    delta = tau / m

    # per-step factor sequence, inactive axes dropped, adjacent duplicates merged
    plan: list[tuple[str, float]] = []
    for axis, w in _STEP_TEMPLATE:
        if axis not in terms:
            continue
        if plan and plan[-1][0] == axis:
            plan[-1] = (axis, plan[-1][1] + w)
        else:
            plan.append((axis, w))

    # when the boundary factor is time-independent, fuse the trailing half of
    # one step with the leading half of the next (exact, and fewer roundings)
    boundary = None
    if len(plan) > 1 and plan[0][0] == plan[-1][0]:
        axis, w = plan[0]
        if not terms[axis].driven and w == plan[-1][1]:
            boundary = (axis, w)
            plan = plan[1:-1]

    amps = state.amplitudes.copy()
    if boundary is None:
        for n in range(m):
            t_mid = tbase + (n + 0.5) * delta
            for axis, w in plan:
                amps = _apply_axis(amps, axis, terms[axis], w * delta, t_mid,
                                   num_qubits)
    else:
        b_axis, b_w = boundary
        b_terms = terms[b_axis]
        amps = _apply_axis(amps, b_axis, b_terms, b_w * delta, tbase, num_qubits)
        for n in range(m):
            t_mid = tbase + (n + 0.5) * delta
            for axis, w in plan:
                amps = _apply_axis(amps, axis, terms[axis], w * delta, t_mid,
                                   num_qubits)
            if n + 1 < m:
                amps = _apply_axis(amps, b_axis, b_terms, 2 * b_w * delta,
                                   tbase, num_qubits)
        amps = _apply_axis(amps, b_axis, b_terms, b_w * delta, tbase, num_qubits)
    return StateVector(num_qubits, amps), t0 + tau


def convergence_probe(mi: MicroInstruction, t0: float, state: StateVector,
                      deltas, cfg: EvolutionConfig | None = None):
    """Distance of each delta's result to the finest-delta reference.

    deltas must be sorted strictly descending with at least 3 entries; returns
    [(delta, distance)] where distance = sqrt(1 - fidelity) to the reference,
    which scales as delta^2 for this second-order scheme.
    """
    deltas = list(deltas)
    if len(deltas) < 3:
        raise ConfigError("convergence probe needs at least 3 delta values")
    if any(d <= 0 for d in deltas):
        raise ConfigError("delta values must be positive")
    if any(a <= b for a, b in zip(deltas, deltas[1:])):
        raise ConfigError("delta values must be sorted strictly descending")
    cfg = cfg or EvolutionConfig()
    results = []
    for d in deltas:
        run_cfg = replace(cfg, delta_max=d, exact_diagonal_shortcut=False)
        evolved, _ = evolve(state, mi, t0, run_cfg)
        results.append(evolved)
    reference = results[-1]
    return [
        (d, math.sqrt(max(0.0, 1.0 - fidelity(res, reference))))
        for d, res in zip(deltas, results)
    ]
