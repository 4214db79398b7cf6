"""State vectors over the S^z product basis, gate/phase kernels, qubit readout.

Basis convention: amplitude index n encodes |x_1 x_2 ... x_L> with qubit 1 in
the least significant bit (n = sum_j x_j 2^(j-1)).  Bit value 0 is spin up
(|0> = |up>, S^z eigenvalue +1/2), so index 0 is the all-up ground state and
the integer answer of a search program is readable directly off the index.
"""
from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

from .errors import ConfigError, ValidationError

DEFAULT_MAX_QUBITS = 8
NORM_TOL = 1e-10
UNITARY_TOL = 1e-10

AXES = ("x", "y", "z")


def max_qubits() -> int:
    """Configured qubit cap; QCE_MAX_QUBITS overrides the default of 8."""
    raw = os.environ.get("QCE_MAX_QUBITS")
    if raw is None:
        return DEFAULT_MAX_QUBITS
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigError(f"QCE_MAX_QUBITS is not an integer: {raw!r}") from exc
    if value < 1:
        raise ConfigError(f"QCE_MAX_QUBITS must be >= 1, got {value}")
    return value


class StateVector:
    """2^L complex amplitudes; a value object, never mutated in place."""

    __slots__ = ("num_qubits", "amplitudes")

    def __init__(self, num_qubits: int, amplitudes: np.ndarray):
        if len(amplitudes) != 2**num_qubits:
            raise ValidationError(
                f"expected 2^{num_qubits} amplitudes, got {len(amplitudes)}"
            )
        self.num_qubits = num_qubits
        self.amplitudes = np.asarray(amplitudes, dtype=np.complex128)

    @property
    def dim(self) -> int:
        return 2**self.num_qubits

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def __repr__(self) -> str:
        return f"StateVector(L={self.num_qubits}, amplitudes={self.amplitudes!r})"


def new_ground(num_qubits: int) -> StateVector:
    """All-spins-up state |00...0>."""
    cap = max_qubits()
    if not 1 <= num_qubits <= cap:
        raise ConfigError(
            f"qubit count {num_qubits} outside [1, {cap}] "
            "(set QCE_MAX_QUBITS to raise the cap)"
        )
    amps = np.zeros(2**num_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(num_qubits, amps)


def basis_state(num_qubits: int, index: int) -> StateVector:
    """Computational basis state |x_1...x_L> with x_j = bit j-1 of index."""
    if not 0 <= index < 2**num_qubits:
        raise ConfigError(f"basis index {index} outside [0, 2^{num_qubits})")
    amps = np.zeros(2**num_qubits, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(num_qubits, amps)


@lru_cache(maxsize=32)
def spin_z_table(num_qubits: int) -> np.ndarray:
    """(L, 2^L) array: row j-1 holds the S^z eigenvalue (+-1/2) of qubit j."""
    dim = 2**num_qubits
    n = np.arange(dim)
    table = np.empty((num_qubits, dim))
    for j in range(num_qubits):
        table[j] = 0.5 - ((n >> j) & 1)
    table.setflags(write=False)
    return table


def _check_qubit(state: StateVector, j: int) -> None:
    if not 1 <= j <= state.num_qubits:
        raise ConfigError(f"qubit index {j} outside [1, {state.num_qubits}]")


def expectation(state: StateVector, j: int, axis: str) -> float:
    """<S_j^axis> for the given qubit (hbar = 1, so values lie in [-1/2, 1/2])."""
    _check_qubit(state, j)
    a = state.amplitudes
    if axis == "z":
        return float(np.sum(np.abs(a) ** 2 * spin_z_table(state.num_qubits)[j - 1]))
    mask = 1 << (j - 1)
    n = np.arange(state.dim)
    lo = n[(n & mask) == 0]
    cross = np.vdot(a[lo], a[lo | mask])  # sum conj(a_up) * a_down over pairs
    if axis == "x":
        return float(cross.real)
    if axis == "y":
        return float(cross.imag)
    raise ConfigError(f"unknown axis {axis!r}")


def readout(state: StateVector, j: int, axis: str) -> float:
    """Displayed qubit value Q_j^axis = 1/2 - <S_j^axis>, in [0, 1].

    Clamped at the boundary: rounding can push the raw value a few ulp
    outside, which would otherwise surface as -0.000000 in exports.
    """
    return min(1.0, max(0.0, 0.5 - expectation(state, j, axis)))


def readout_all(state: StateVector) -> list[dict[str, float]]:
    """Per-qubit {x, y, z} readouts, qubit 1 first."""
    return [
        {axis: readout(state, j, axis) for axis in AXES}
        for j in range(1, state.num_qubits + 1)
    ]


def apply_single_qubit(state: StateVector, j: int, u: np.ndarray) -> StateVector:
    """Apply a 2x2 unitary to qubit j (identity on the rest)."""
    _check_qubit(state, j)
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (2, 2):
        raise ValidationError(f"expected a 2x2 matrix, got shape {u.shape}")
    if np.max(np.abs(u.conj().T @ u - np.eye(2))) > UNITARY_TOL:
        raise ValidationError("matrix is not unitary within 1e-10")
    # reshape so qubit j's bit becomes the middle axis
    low = 2 ** (j - 1)
    a = state.amplitudes.reshape(-1, 2, low)
    out = np.einsum("ab,nbl->nal", u, a).reshape(-1)
    return StateVector(state.num_qubits, out)


def apply_diagonal_phase(state: StateVector, theta: np.ndarray) -> StateVector:
    """a_n <- exp(i theta_n) a_n; norm preserved exactly."""
    theta = np.asarray(theta, dtype=np.float64)
    if theta.shape != (state.dim,):
        raise ValidationError(
            f"phase array length {theta.shape} does not match dimension {state.dim}"
        )
    if not np.all(np.isfinite(theta)):
        raise ValidationError("phase array contains non-finite entries")
    return StateVector(state.num_qubits, state.amplitudes * np.exp(1j * theta))


def rotating_frame_view(state: StateVector, t: float, zfields) -> StateVector:
    """Lab-frame view exp(+i t sum_j h_j S_j^z)|psi>; z-readouts unchanged.

    zfields maps qubit index (1-based) to the static z field h_{j,z,0};
    sequences are accepted positionally for convenience.
    """
    if not isinstance(zfields, dict):
        zfields = {j + 1: h for j, h in enumerate(zfields)}
    spins = spin_z_table(state.num_qubits)
    theta = np.zeros(state.dim)
    for j, h in zfields.items():
        _check_qubit(state, j)
        theta += t * h * spins[j - 1]
    return apply_diagonal_phase(state, theta)


def fidelity(a: StateVector, b: StateVector) -> float:
    """|<a|b>|^2 between unit rays; insensitive to global phase.

    Normalized by both norms so sub-ulp norm drift cannot masquerade as
    infidelity when comparing long evolutions.
    """
    if a.num_qubits != b.num_qubits:
        raise ValidationError(
            f"qubit count mismatch: {a.num_qubits} vs {b.num_qubits}"
        )
    overlap = abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2
    return float(overlap / ((a.norm() ** 2) * (b.norm() ** 2)))
