"""Exception types. The CLI maps each to a process exit code."""


class RellocError(Exception):
    exit_code = 1


class ConfigError(RellocError, ValueError):
    exit_code = 2


class NumericalFloorError(RellocError, ArithmeticError):
    exit_code = 3


class BoxEdgeError(RellocError, ValueError):
    exit_code = 4


class RepresentationError(RellocError, ValueError):
    """Field passed in the wrong (position/momentum) representation."""


class NegativeFrequencyError(RellocError, ValueError):
    """Initial data pair carries negative-frequency content."""
