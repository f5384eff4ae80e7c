"""Exception types shared across the library."""


class RegSweepError(Exception):
    """Base class for library-specific errors."""


class OutOfReachError(RegSweepError, ValueError):
    """Raised when a proximal projection is requested outside the reach tube.

    The nearest point of an r-prox-regular set is only guaranteed to be
    unique for query points at distance strictly less than r.
    """

    def __init__(self, distance, radius, point=None):
        self.distance = float(distance)
        self.radius = float(radius)
        self.point = point
        super().__init__(
            f"projection undefined: distance {self.distance:.6g} >= reach {self.radius:.6g}"
        )


class ApproximationError(RegSweepError, ValueError):
    """Raised when a step approximation cannot be certified at the requested accuracy."""


class HypothesisError(RegSweepError, ValueError):
    """Raised when the hypothesis of a verified inequality does not hold.

    Distinct from a conclusion failure, which would indicate a library bug
    and is reported through the returned verdict instead.
    """


class JumpAdmissibilityError(RegSweepError, ValueError):
    """Raised when input jumps exceed the admissible fraction of the prox radius."""


class ConfigError(RegSweepError, ValueError):
    """Raised on scenario configuration parse or validation failures."""

    def __init__(self, message, field=None):
        self.field = field
        if field:
            message = f"{field}: {message}"
        super().__init__(message)
