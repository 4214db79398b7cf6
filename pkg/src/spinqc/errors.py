"""Exception types shared across the emulator."""


class EmulatorError(Exception):
    """Base class for all spinqc errors."""


class ConfigError(EmulatorError):
    """Out-of-range or inconsistent configuration (qubit count, step policy)."""


class ValidationError(EmulatorError):
    """Malformed input: non-unitary matrix, bad instruction set or program."""


class ProgramError(EmulatorError):
    """Execution failure: unresolvable reference, cycle, bad state transition."""
