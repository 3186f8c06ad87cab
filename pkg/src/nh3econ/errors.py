"""Exception types shared across the toolkit.

The CLI maps InputError to exit code 2 and SolverError to exit code 3.
"""


class Nh3EconError(Exception):
    """Base class for all toolkit errors."""


class InputError(Nh3EconError):
    """Invalid user input: bad values, malformed files, unknown keys."""


class DimensionError(InputError):
    """Attempted unit conversion between incompatible dimensions."""

    def __init__(self, source_unit: str, target_unit: str):
        self.source_unit = source_unit
        self.target_unit = target_unit
        super().__init__(
            f"cannot convert {source_unit!r} to {target_unit!r}: incompatible dimensions"
        )


class SolverError(Nh3EconError):
    """The LP solver failed to terminate normally."""
