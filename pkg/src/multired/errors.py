"""Exception types raised across the package."""


class InvalidSubsystemError(ValueError):
    """A subsystem index set is empty where forbidden or out of range."""


class ShapeError(ValueError):
    """Matrix shape does not agree with the declared subsystem dimensions."""


class HermiticityError(ValueError):
    """Operator is not Hermitian within tolerance."""


class NotADensityMatrixError(ValueError):
    """Operator fails the unit-trace or positivity check."""


class ResourceError(RuntimeError):
    """Requested construction exceeds the configured dimension cap."""


class InvalidParameterError(ValueError):
    """Werner family parameters lie outside the validity region."""


class UnsupportedParityError(ValueError):
    """Marginal compatibility test requested for an even number of parties."""


class IncompleteInputError(ValueError):
    """A marginal set is missing one or more proper subsystems."""
