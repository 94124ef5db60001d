"""Exception hierarchy shared by all fnclass modules.

The CLI maps these onto its exit codes: usage problems -> 1, data/file
problems -> 2, numeric/domain problems -> 3.
"""


class FnclassError(Exception):
    """Base class for all errors raised by fnclass."""


class DimensionError(FnclassError):
    """Mismatched lengths or grids (e.g. trajectories on different grids)."""


class RangeError(FnclassError):
    """A requested point lies outside the supported range (extrapolation)."""


class DomainError(FnclassError):
    """A numeric argument is outside its mathematical domain."""


class InsufficientDataError(FnclassError):
    """Too few observations for the requested computation."""


class SpecError(FnclassError):
    """An invalid model, transform or config choice."""


class ParseError(FnclassError):
    """Malformed input file; message carries line/field context."""


class ClassDepletionError(FnclassError):
    """A random split left a cohort without the required class counts."""

    def __init__(self, cohort: str, label: int, needed: int, got: int):
        self.cohort = cohort
        self.label = label
        self.needed = needed
        self.got = got
        super().__init__(
            f"{cohort} cohort has {got} trajectories with label {label}, needs {needed}"
        )
