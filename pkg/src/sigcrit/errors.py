"""Exception hierarchy for the sigcrit package."""


class SigcritError(Exception):
    """Base class for all sigcrit errors."""


class PlanningError(SigcritError):
    """Grid planning failed (e.g. the signal tails do not decay)."""


class AliasingError(SigcritError):
    """Spectral differentiation would amplify content at the Nyquist edge."""


class SymmetryError(SigcritError):
    """A spectrum expected to be conjugate symmetric is not."""


class ConventionError(SigcritError):
    """An operation requires a spectrum phase-referenced to absolute t = 0."""


class BracketError(SigcritError):
    """A root bracket could not be established or is ill-conditioned."""


class LandscapeError(SigcritError):
    """The weighted spectrum is not unimodal where unimodality is assumed."""


class GammaPoleError(SigcritError):
    """Gamma function evaluated at a nonpositive integer."""


class GammaRangeError(SigcritError):
    """Argument outside the supported strip of the Gamma implementation."""


class ConfigError(SigcritError):
    """Invalid run configuration."""
