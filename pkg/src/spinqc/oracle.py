"""Independent brute-force verification: dense propagators and closed-form gates.

Everything here is deliberately separate from the production kernels: full
2^L x 2^L matrices, exponentials by Hermitian eigendecomposition, gate algebra
from the closed forms.  Intended for desk-scale checks (L <= 4), not speed.
"""
from __future__ import annotations

import math
import re
from functools import lru_cache

import numpy as np

from .errors import ConfigError, ValidationError
from .model import MicroInstruction

MAX_DENSE_QUBITS = 4
UNITARY_TOL = 1e-10

SX = 0.5 * np.array([[0, 1], [1, 0]], dtype=complex)
SY = 0.5 * np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = 0.5 * np.array([[1, 0], [0, -1]], dtype=complex)
SPIN = {"x": SX, "y": SY, "z": SZ}
ID2 = np.eye(2, dtype=complex)

# pi/2 rotations about x and y, the Walsh-Hadamard transform, and inverses
SQ = 1.0 / math.sqrt(2.0)
GATE_X = SQ * np.array([[1, 1j], [1j, 1]])
GATE_Y = SQ * np.array([[1, 1], [-1, 1]])
GATE_XB = GATE_X.conj().T
GATE_YB = GATE_Y.conj().T
GATE_W = (1j * SQ) * np.array([[1, 1], [1, -1]])
SINGLE_QUBIT_GATES = {
    "X": GATE_X, "Xb": GATE_XB, "Y": GATE_Y, "Yb": GATE_YB, "W": GATE_W,
}


def is_unitary(u: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    u = np.asarray(u)
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(len(u)))) <= tol)


@lru_cache(maxsize=256)
def spin_operator(num_qubits: int, j: int, axis: str) -> np.ndarray:
    """S_j^axis embedded in the 2^L-dimensional product space (qubit 1 = LSB)."""
    if not 1 <= j <= num_qubits:
        raise ConfigError(f"qubit {j} outside 1..{num_qubits}")
    out = np.eye(1, dtype=complex)
    for q in range(num_qubits, 0, -1):
        out = np.kron(out, SPIN[axis] if q == j else ID2)
    out.setflags(write=False)
    return out


def embed_gate(u: np.ndarray, j: int, num_qubits: int) -> np.ndarray:
    """2x2 gate on qubit j, identity elsewhere."""
    out = np.eye(1, dtype=complex)
    for q in range(num_qubits, 0, -1):
        out = np.kron(out, u if q == j else ID2)
    return out


def hamiltonian_matrix(mi: MicroInstruction, num_qubits: int, t: float) -> np.ndarray:
    """Full H(t) for one MI (negated sums of couplings and fields)."""
    dim = 2**num_qubits
    h = np.zeros((dim, dim), dtype=complex)
    for (j, k, axis), v in mi.couplings.items():
        if v != 0.0:
            h -= v * (spin_operator(num_qubits, j, axis)
                      @ spin_operator(num_qubits, k, axis))
    for (j, axis), fp in mi.fields.items():
        g = fp.at(t)
        if g != 0.0:
            h -= g * spin_operator(num_qubits, j, axis)
    return h


def expm_factor(h: np.ndarray, dt: float) -> np.ndarray:
    """exp(-i dt H) for Hermitian H via eigendecomposition (exactly unitary)."""
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * dt * w)) @ v.conj().T


def _constant_and_driven(mi: MicroInstruction, num_qubits: int):
    hc = np.zeros((2**num_qubits, 2**num_qubits), dtype=complex)
    for (j, k, axis), v in mi.couplings.items():
        if v != 0.0:
            hc -= v * (spin_operator(num_qubits, j, axis)
                       @ spin_operator(num_qubits, k, axis))
    driven = []
    for (j, axis), fp in mi.fields.items():
        op = spin_operator(num_qubits, j, axis)
        if fp.h0 != 0.0:
            hc -= fp.h0 * op
        if fp.h1 != 0.0:
            driven.append((op, fp.h1, fp.f, fp.phi))
    return hc, driven


def dense_propagator(mi: MicroInstruction, t0: float, num_qubits: int,
                     delta_ref: float, tau: float | None = None) -> np.ndarray:
    """Midpoint product of exact matrix exponentials over [t0, t0 + tau]."""
    if num_qubits > MAX_DENSE_QUBITS:
        raise ConfigError(
            f"dense propagator limited to {MAX_DENSE_QUBITS} qubits, got {num_qubits}"
        )
    if delta_ref <= 0:
        raise ConfigError("delta_ref must be positive")
    tau = mi.tau if tau is None else tau
    dim = 2**num_qubits
    if tau == 0.0:
        return np.eye(dim, dtype=complex)
    hc, driven = _constant_and_driven(mi, num_qubits)
    if not driven:
        return expm_factor(hc, tau)
    m = max(1, math.ceil(tau / delta_ref))
    delta = tau / m
    u = np.eye(dim, dtype=complex)
    for n in range(m):
        t_mid = t0 + (n + 0.5) * delta
        h = hc
        for op, h1, f, phi in driven:
            h = h - (h1 * math.sin(f * t_mid + phi)) * op
        u = expm_factor(h, delta) @ u
    return u


# ---------------------------------------------------------------------------
# Closed-form gate algebra.
# ---------------------------------------------------------------------------


def interaction_gate(a: float, num_qubits: int = 2) -> np.ndarray:
    """I(a) = exp(-i a S_1^z S_2^z)."""
    if num_qubits < 2:
        raise ConfigError("I(a) needs at least two qubits")
    op = spin_operator(num_qubits, 1, "z") @ spin_operator(num_qubits, 2, "z")
    return expm_factor(op, a)


def ideal_gate(symbol: str, qubit: int | None = None, num_qubits: int = 1,
               a: float | None = None) -> np.ndarray:
    """Exact closed-form gate embedded on the given qubit.

    Symbols: X, Xb, Y, Yb, W (single-qubit, need qubit) and I (two-qubit,
    needs the angle a).
    """
    if symbol == "I":
        if a is None:
            raise ConfigError("I gate requires the angle a")
        return interaction_gate(a, max(num_qubits, 2))
    if symbol not in SINGLE_QUBIT_GATES:
        raise ConfigError(f"unknown gate symbol {symbol!r}")
    if a is not None:
        raise ConfigError(f"gate {symbol} takes no angle")
    if qubit is None:
        raise ConfigError(f"gate {symbol} requires a qubit index")
    return embed_gate(SINGLE_QUBIT_GATES[symbol], qubit, num_qubits)


_TOKEN_RE = re.compile(r"^([XYW])(b?)(\d+)$")
_I_TOKEN_RE = re.compile(r"^I\((.+)\)$")
_ANGLES = {"pi": math.pi, "pi/2": math.pi / 2}


def parse_token(token: str):
    """Gate token -> (symbol, qubit, angle); matches the builtin MI names."""
    m = _TOKEN_RE.match(token)
    if m:
        sym, bar, qubit = m.groups()
        return sym + ("b" if bar else ""), int(qubit), None
    m = _I_TOKEN_RE.match(token)
    if m:
        raw = m.group(1)
        angle = _ANGLES.get(raw)
        if angle is None:
            try:
                angle = float(raw)
            except ValueError as exc:
                raise ValidationError(f"bad angle in token {token!r}") from exc
        return "I", None, angle
    raise ValidationError(f"unrecognized gate token {token!r}")


def sequence_matrix(tokens, num_qubits: int) -> np.ndarray:
    """Right-to-left product of a written gate sequence (rightmost acts first)."""
    u = np.eye(2**num_qubits, dtype=complex)
    for token in reversed(list(tokens)):  # rightmost acts first
        sym, qubit, angle = parse_token(token)
        g = ideal_gate(sym, qubit=qubit, num_qubits=num_qubits, a=angle)
        u = g @ u
    return u


def phase_aligned_distance(u: np.ndarray, v: np.ndarray) -> float:
    """max |u - e^(i phi) v| with the global phase phi chosen optimally."""
    overlap = np.trace(v.conj().T @ u)
    if abs(overlap) < 1e-300:
        return float(np.max(np.abs(u - v)))
    phase = overlap / abs(overlap)
    return float(np.max(np.abs(u - phase * v)))


# ---------------------------------------------------------------------------
# Search-operator checks: inversion about the mean.
# ---------------------------------------------------------------------------

# conditional phase shift: written form Y1 Xb1 Yb1 Y2 Xb2 Yb2 I(pi)
PHASE_SHIFT_SEQ = ("Y1", "Xb1", "Yb1", "Y2", "Xb2", "Yb2", "I(pi)")


def inversion_matrix() -> np.ndarray:
    """Explicit inversion-about-the-mean operator for two qubits."""
    return 0.5 * np.ones((4, 4), dtype=complex) - np.eye(4, dtype=complex)


def inversion_about_mean_check() -> dict:
    """Verify the gate-sequence construction of the inversion operator.

    Builds D from W1 W2 P W1 W2 (P the conditional phase shift) and compares
    with the explicit matrix up to global phase; then follows the iterated
    search for item 2.  D itself is an involution (D @ D = 1), so repeating
    the inversion alone just oscillates; each search iteration re-applies the
    query oracle before inverting, and the chain of iterates from the uniform
    state visits the answer, minus the marked superposition, and minus the
    uniform state, giving the answer again at iterations 1, 4, 7, ...
    """
    d_explicit = inversion_matrix()
    p = sequence_matrix(PHASE_SHIFT_SEQ, 2)
    w12 = sequence_matrix(("W1", "W2"), 2)
    d_seq = w12 @ p @ w12
    seq_dev = phase_aligned_distance(d_seq, d_explicit)

    oracle_2 = np.diag(np.array([1, 1, -1, 1], dtype=complex))  # marks item 2
    psi = 0.5 * np.array([1, 1, -1, 1], dtype=complex)          # oracle_2 @ uniform
    item2 = np.array([0, 0, 1, 0], dtype=complex)
    uniform = 0.5 * np.ones(4, dtype=complex)

    it1 = d_explicit @ psi                      # = D |Psi>
    it2 = d_explicit @ (oracle_2 @ it1)         # re-query, invert again
    it3 = d_explicit @ (oracle_2 @ it2)
    involution_dev = float(np.max(np.abs(d_explicit @ d_explicit - np.eye(4))))
    checks = {
        "sequence_vs_explicit": seq_dev,
        "iter1_vs_item2": float(np.max(np.abs(it1 - item2))),
        "iter2_vs_minus_psi": float(np.max(np.abs(it2 + psi))),
        "iter3_vs_minus_uniform": float(np.max(np.abs(it3 + uniform))),
        "involution_identity": involution_dev,
    }
    checks["passed"] = bool(all(v <= 1e-12 for v in checks.values()))
    return checks


# ---------------------------------------------------------------------------
# Single-spin RF pulse in the rotating-wave approximation.
# ---------------------------------------------------------------------------


def rwa_pulse(h0: float, h1: float, tau: float,
              initial: np.ndarray | None = None):
    """Predicted action of a resonant RF pulse of duration tau on one spin.

    Returns (final state, {x, y, z} spin expectations) for the approximate
    propagator exp(i tau h0 S^z) exp(i tau h1 S^y / 2).  A pulse of power
    tau*h1 = pi rotates the spin by pi/2; the residual static-field phase
    rotates the transverse components.
    """
    if initial is None:
        initial = np.array([1, 0], dtype=complex)
    initial = np.asarray(initial, dtype=complex)
    u = expm_factor(SZ, -tau * h0) @ expm_factor(SY, -tau * h1 / 2.0)
    final = u @ initial
    expect = {
        axis: float(np.real(final.conj() @ (SPIN[axis] @ final)))
        for axis in ("x", "y", "z")
    }
    return final, expect
