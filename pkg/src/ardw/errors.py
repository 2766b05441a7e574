"""Exception hierarchy shared across the package."""


class ArdwError(Exception):
    """Base class for all package-specific errors."""


class UnstableTheta(ArdwError):
    """1-norm of the autoregressive coefficient vector is >= 1."""


class UnstableRho(ArdwError):
    """Serial correlation parameter has modulus >= 1."""


class ZeroTheta(ArdwError):
    """Autoregressive coefficient vector is identically zero."""


class BadVariance(ArdwError):
    """Noise variance is not strictly positive."""


class SingularB(ArdwError):
    """The (p+2)-order autocovariance system matrix is numerically singular."""


class NotPositiveDefinite(ArdwError):
    """A Toeplitz autocovariance matrix failed its positive definiteness check."""


class NoConvergence(ArdwError):
    """Fixed-point iteration failed to converge within the iteration cap."""


class SingularDesign(ArdwError):
    """Least squares design matrix is numerically singular."""


class SingularToeplitz(ArdwError):
    """Sample Toeplitz autocovariance matrix is numerically singular."""


class DegenerateResiduals(ArdwError):
    """Residual series has zero energy where a ratio requires it."""


class NearZeroThetaP(ArdwError):
    """Estimated p-th autoregressive coefficient is numerically zero."""


class InapplicableH(ArdwError):
    """Durbin's h-statistic is undefined (nonpositive radicand)."""


class SingularAuxiliaryRegression(ArdwError):
    """Auxiliary regression of the Breusch-Godfrey test is singular."""


class DomainError(ArdwError):
    """Argument outside the mathematical domain of a distribution utility."""
