"""Exception hierarchy for detic_cr."""


class DeticError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(DeticError, ValueError):
    """Invalid channel gains, dimensions or labels."""


class RegionError(DeticError, ValueError):
    """A set of inequalities does not describe a bounded rate region."""


class RegimeError(DeticError, ValueError):
    """A constructor was called outside the parameter regime it covers."""


class CapError(DeticError, ValueError):
    """An enumeration would exceed its configured size cap."""
