"""spinqc: emulator for spin-1/2 based quantum computers.

Simulates the physical operation of pulse-level quantum hardware by
integrating the time-dependent Schroedinger equation with a second-order
product-formula scheme, executes micro-instruction programs on idealized and
NMR-style instruction sets, and exposes a step/break debugger over HTTP.
"""
from .errors import ConfigError, EmulatorError, ProgramError, ValidationError
from .model import (
    FieldParams,
    InstructionSet,
    MicroInstruction,
    axis_hamiltonian,
    builtin_set,
    load_set,
    resolve_set,
    validate_set,
)
from .program import (
    QuantumProgram,
    Session,
    export_results,
    flatten,
    load_program,
    new_session,
    reset,
    run,
    step,
)
from .propagate import EvolutionConfig, convergence_probe, evolve, global_rotation
from .state import (
    StateVector,
    apply_diagonal_phase,
    apply_single_qubit,
    fidelity,
    new_ground,
    readout,
    readout_all,
    rotating_frame_view,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError", "EmulatorError", "ProgramError", "ValidationError",
    "FieldParams", "InstructionSet", "MicroInstruction", "axis_hamiltonian",
    "builtin_set", "load_set", "resolve_set", "validate_set",
    "QuantumProgram", "Session", "export_results", "flatten", "load_program",
    "new_session", "reset", "run", "step",
    "EvolutionConfig", "convergence_probe", "evolve", "global_rotation",
    "StateVector", "apply_diagonal_phase", "apply_single_qubit", "fidelity",
    "new_ground", "readout", "readout_all", "rotating_frame_view",
    "__version__",
]
