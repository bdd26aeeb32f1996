"""Exception types shared across the package.

The CLI maps these onto its exit-code contract (argument error -> 2,
unsupported characteristic -> 3), so library code should raise the most
specific class that applies.
"""


class CymodError(Exception):
    """Base class for all package errors."""


class ArgumentError(CymodError, ValueError):
    """Invalid argument (non-prime modulus, malformed twist name, ...)."""


class BadPrimeError(ArgumentError):
    """The requested prime lies in the twist's bad-reduction set."""

    def __init__(self, p, bad):
        self.p = p
        self.bad = sorted(bad)
        super().__init__(f"p={p} is a prime of bad reduction (bad set: {self.bad})")


class UnsupportedCharacteristicError(CymodError):
    """Counting in this characteristic is not modelled (p = 2 throughout)."""


class DegenerateReductionError(CymodError):
    """A twist matrix becomes singular after reduction mod p."""


class DegenerateCubicError(CymodError):
    """Leading coefficient of a cubic vanishes mod p; pick another prime."""


class InsufficientLimitError(CymodError):
    """A prime scan exhausted its limit before covering every sign vector."""


class IncompleteFixtureError(CymodError):
    """A newform fixture lacks a coefficient required by the computation."""

    def __init__(self, level, missing):
        self.level = level
        self.missing = sorted(missing)
        super().__init__(
            f"level-{level} fixture has no coefficient for primes {self.missing}"
        )
