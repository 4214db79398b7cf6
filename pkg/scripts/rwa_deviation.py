"""How closely does a real resonant pulse implement an ideal rotation?

Sweeps the drive-to-static field ratio for a single spin and compares the
full lab-frame dynamics (fine-step dense propagator) against the
rotating-wave prediction exp(i tau h0 Sz) exp(i tau h1 Sy / 2) at constant
pulse power tau * h1 = pi.  The infidelity grows with the drive ratio: a
pulse is only approximately a rotation, which is the whole reason the
full-pulse instruction set gives softer readouts than the idealized one.

    python3 scripts/rwa_deviation.py
"""
import math

import numpy as np

from spinqc.model import FieldParams, MicroInstruction
from spinqc.oracle import dense_propagator, rwa_pulse

KET0 = np.array([1, 0], dtype=complex)

if __name__ == "__main__":
    print("drive ratio h1/h0   pulse infidelity vs ideal rotation")
    for ratio in (0.0125, 0.025, 0.05, 0.1, 0.2):
        tau = math.pi / ratio  # constant pulse power
        mi = MicroInstruction("pulse", tau_over_2pi=tau / (2 * math.pi), fields={
            (1, "z"): FieldParams(h0=1.0),
            (1, "x"): FieldParams(h1=ratio, f=1.0),
        })
        u = dense_propagator(mi, 0.0, num_qubits=1, delta_ref=mi.tau / 20000)
        full = u @ KET0
        pred, _ = rwa_pulse(1.0, ratio, tau)
        infidelity = 1 - abs(np.vdot(full, pred)) ** 2
        print(f"{ratio:18.4f}   {infidelity:.6e}")
