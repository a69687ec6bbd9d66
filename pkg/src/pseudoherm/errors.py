"""Exception hierarchy.

Errors are grouped by the pipeline stage that raises them so the command
line front end can map each group onto its own exit code.
"""


class PseudoHermError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(PseudoHermError, ValueError):
    pass


# -- parsing ------------------------------------------------------------------

class ParseError(PseudoHermError, ValueError):
    """Malformed matrix file. ``location`` names the offending line or field."""

    def __init__(self, message, location=None):
        self.location = location
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)


class NonSquare(ParseError):
    pass


# -- spectral -----------------------------------------------------------------

class SpectralError(PseudoHermError):
    pass


class NonDiagonalizable(SpectralError):
    pass


class DegenerateSpectrum(NonDiagonalizable):
    pass


class NoConvergence(SpectralError):
    pass


class SingularD(SpectralError):
    pass


class BiorthogonalityViolation(SpectralError):
    pass


# -- metric -------------------------------------------------------------------

class MetricError(PseudoHermError):
    pass


class ZeroEtaNorm(MetricError):
    pass


class NonRealEtaNorm(MetricError):
    pass


class SingularMetric(MetricError):
    pass


class MixedSpectrum(MetricError):
    pass


class OddDimension(MetricError):
    pass


# -- symmetry / products ------------------------------------------------------

class SymmetryError(PseudoHermError):
    pass


class CompletenessViolation(SymmetryError):
    pass


class SuiteInvalid(SymmetryError):
    def __init__(self, message, failures=None):
        self.failures = dict(failures or {})
        super().__init__(message)


class NotASymmetry(SymmetryError):
    pass
