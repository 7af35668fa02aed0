"""Exception hierarchy shared across the package."""

from __future__ import annotations


class EndotubeError(Exception):
    """Base class for all package errors."""


class StructuralDataError(EndotubeError):
    """Malformed input data: unknown labels, negative counts, bad shapes.

    Distinct from an axiom violation, which is reported by the validators
    instead of raised.
    """


class ValidationFailure(EndotubeError):
    """Raised when a validator is asked to enforce and finds violations."""

    def __init__(self, report):
        self.report = report
        super().__init__(str(report))


class IncompletenessError(EndotubeError):
    """A required F- or L-block is missing or singular."""


class UnsupportedStructureError(EndotubeError):
    """An operation needing unitary structure was called on non-unitary data."""


class DataInconsistencyError(EndotubeError):
    """Numerical data contradicts a structural requirement (e.g. no positive
    dimension vector, non-positive norm in a supposedly unitary algebra)."""


class DecomposableModuleError(EndotubeError):
    """The module category is decomposable; the pipeline requires an
    indecomposable module."""


class SolveError(EndotubeError):
    """A computation stage failed; carries the stage name and offending index."""

    def __init__(self, stage, message, where=None):
        self.stage = stage
        self.where = where
        loc = f" at {where}" if where is not None else ""
        super().__init__(f"[{stage}] {message}{loc}")
