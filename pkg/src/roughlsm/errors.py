"""Exception taxonomy shared across the package.

ConfigurationError maps to CLI exit code 2, NumericalError (and its
subclasses) to exit code 3.
"""


class RoughLSMError(Exception):
    """Base class for all package-specific errors."""


class ConfigurationError(RoughLSMError):
    """Invalid scenario, config file, or incompatible inputs."""


class FingerprintMismatchError(ConfigurationError):
    """Dataset fingerprint does not match the requested scenario."""


class NumericalError(RoughLSMError):
    """A numerical procedure failed to meet its contract."""


class DomainError(RoughLSMError, ValueError):
    """Argument outside the domain of a special function."""


class SingularityError(RoughLSMError, ValueError):
    """Evaluation requested at (or too close to) a kernel singularity."""


class AccuracyError(NumericalError):
    """Quadrature failed to converge; carries the achieved error estimate."""

    def __init__(self, message, achieved=None, requested=None):
        super().__init__(message)
        self.achieved = achieved
        self.requested = requested


class IllConditionedError(NumericalError):
    """Linear system condition estimate beyond the trust threshold."""


class EmptyMeshError(NumericalError):
    """Volume mesh came out empty for a non-flat profile."""


class DiscrepancyUnreachableError(NumericalError):
    """Morozov target discrepancy is not attainable for this right-hand side."""
