"""Exception types raised across the toolkit."""


class PhMotionError(Exception):
    """Base class for all toolkit errors."""


class DegenerateDirection(PhMotionError):
    """A direction vector is too short to normalise."""


class NearAntipodal(PhMotionError):
    """A direction points almost exactly along the negative reference axis,
    where the quaternion square-root construction blows up."""


class ResidualTooLarge(PhMotionError):
    """Endpoint self-validation of a solved segment failed."""


class DegenerateSpeed(PhMotionError):
    """Curve speed vanishes (cusp); curvature is undefined."""


class UndefinedTorsion(PhMotionError):
    """Torsion requested on a straight or inflection region."""


class UndefinedNormal(PhMotionError):
    """Frenet normal requested where curvature vanishes."""


class DegenerateGeometry(PhMotionError):
    """Point set is too small, collinear, or coincident for alignment."""


class SizeMismatch(PhMotionError):
    """Matched point sets have different lengths."""


class NonMonotonicTimestamp(PhMotionError):
    """A measurement arrived with a timestamp earlier than the filter state."""


class EmptyStream(PhMotionError):
    """A pose stream has too few poses for the requested operation."""


class NonMonotonicStream(PhMotionError):
    """Pose timestamps are not strictly increasing."""


class ParseError(PhMotionError):
    """A trajectory file line could not be parsed."""

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class NoAssociations(PhMotionError):
    """No estimate/ground-truth sample pairs within the association window."""


class TooFewSamples(PhMotionError):
    """Not enough samples for the requested finite-difference report."""


class EmptyTrajectory(PhMotionError):
    """Metric requested on a trajectory with no segments."""
