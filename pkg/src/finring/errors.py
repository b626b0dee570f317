"""Exception types shared across the package."""


class FinringError(Exception):
    """Base class for all package-specific errors."""


class CapacityExceeded(FinringError):
    """An enumeration would exceed its configured cap."""


class NotAHomomorphism(FinringError):
    """A proposed map does not respect the ring operations."""


class NotACover(FinringError):
    """A family of idempotents does not generate the unit ideal."""


class GluingFailed(FinringError):
    """Local solutions admit no annihilating idempotent or do not patch."""


class NotEDR(FinringError):
    """The ring is not an elementary divisor ring."""


class NotAChainRing(FinringError):
    """The ring's ideals are not totally ordered."""


class NotArithmetical(FinringError):
    """The ring is not arithmetical."""


class UndefinedForZeroOrUnitIdeal(FinringError):
    """The operation needs a proper nonzero ideal."""


class SamePoint(FinringError):
    """Two distinct points were required."""


class NotInAnnihilator(FinringError):
    """A proposed generator does not annihilate the given element."""
