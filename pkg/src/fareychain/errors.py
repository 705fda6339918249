"""Exception types shared across the package."""


class FareyChainError(Exception):
    """Base class for package-specific failures."""


class EnumerationCapExceededError(FareyChainError):
    """Chain length would require enumerating more states than the cap allows.

    The model has no known importance-sampling measure, so the tools refuse
    rather than silently subsample.
    """

    def __init__(self, n, cap):
        super().__init__(
            f"chain length {n} exceeds the enumeration cap {cap}; "
            f"pass a larger cap (or set FAREYCHAIN_ENUM_CAP) to force the 2^{n} state sum"
        )
        self.n = n
        self.cap = cap


class ExactIntegerOverflowError(FareyChainError, OverflowError):
    """Exact integer work would overflow the fixed-width kernel arithmetic."""


class PoleError(FareyChainError, ValueError):
    """The marginal-coupling flow hit its pole (1 + x*u0*ell <= 0)."""


class NoRealRootError(FareyChainError, ValueError):
    """A boundary/continuity equation has no real solution."""


class DegenerateFitError(FareyChainError, ValueError):
    """A least-squares fit has no usable spread in the abscissa."""
