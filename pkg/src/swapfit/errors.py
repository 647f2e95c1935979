"""Exception hierarchy shared across the package."""


class SwapfitError(Exception):
    """Base class for all package-specific errors."""


# -- data ingest -------------------------------------------------------------

class ParseError(SwapfitError):
    def __init__(self, row: int, reason: str):
        super().__init__(f"row {row}: {reason}")
        self.row = row
        self.reason = reason


class DuplicateQuarterError(SwapfitError):
    pass


class NonFiniteValueError(SwapfitError):
    def __init__(self, row: int):
        super().__init__(f"non-finite value at row {row}")
        self.row = row


class EmptyIntersectionError(SwapfitError):
    pass


class NonPositiveFactorError(SwapfitError):
    pass


# -- model family ------------------------------------------------------------

class InverseDomainError(SwapfitError):
    def __init__(self, y: float):
        super().__init__(f"inverse undefined at y={y!r}")
        self.y = y


class DegenerateDesignError(SwapfitError):
    pass


class NonMonotoneFitError(SwapfitError):
    pass


class TrustRegionExhaustedError(SwapfitError):
    pass


# -- swap core ---------------------------------------------------------------

class AllRestartsFailedError(SwapfitError):
    pass


# -- densities / beta gof ----------------------------------------------------

class NonPositiveSampleError(SwapfitError):
    pass


class DomainError(SwapfitError):
    pass


class AllOneSidedError(SwapfitError):
    pass


# -- causality ---------------------------------------------------------------

class InsufficientDataError(SwapfitError):
    pass


class SingularDesignError(SwapfitError):
    pass


# -- oracles -----------------------------------------------------------------

class TooLargeError(SwapfitError):
    pass


class RangeExhaustedError(SwapfitError):
    pass


# -- reporting ---------------------------------------------------------------

class LengthMismatchError(SwapfitError):
    pass


class MissingFitError(SwapfitError):
    pass
