"""Exception types shared across the package."""


class ShallowWellError(Exception):
    """Base class for all package-specific errors."""


class TailNotDecayed(ShallowWellError):
    """No candidate support radius satisfies the tail bound."""


class InvalidGridSpec(ShallowWellError):
    """Quadrature grid parameters out of range."""


class LengthMismatch(ShallowWellError):
    """Grid function length does not match the grid."""


class UnsupportedChain(ShallowWellError):
    """Chain length or link power outside the supported range."""


class NonPathComponent(ShallowWellError):
    """Absolute-value links of a term branch or form a cycle."""


class DegenerateShift(ShallowWellError):
    """Resolvent shift gamma = 0 where the closed form is singular."""


class BracketFailure(ShallowWellError):
    """No sign change found when bracketing a bound-state energy."""


class NoConvergence(ShallowWellError):
    """Iteration budget exhausted without meeting tolerance."""


class SingularPade(ShallowWellError):
    """Pade linear system is rank deficient."""


class PoleAtEvaluation(ShallowWellError):
    """Pade denominator vanishes at the evaluation point."""


class NonNormalizable(ShallowWellError):
    """Trial wavefunction norm underflows on the grid."""


class OptimizerStalled(ShallowWellError):
    """Simplex minimization failed to make progress."""


class ConfigError(ShallowWellError):
    """Run configuration is missing, malformed, or out of range."""
