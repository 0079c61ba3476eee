"""Domain errors raised across the package.

Every error here maps to CLI exit code 1; usage errors are left to argparse.
"""


class DomainError(ValueError):
    """Base class for all domain errors."""


class NotADiscriminant(DomainError):
    """Value is not a negative discriminant (D < 0 and D = 0 or 1 mod 4)."""


class DiscriminantMismatch(DomainError):
    """Form coefficients do not realize the claimed discriminant."""


class NotPrimitive(DomainError):
    """Form is not primitive: gcd(a, b, c) > 1."""


class CapExceeded(DomainError):
    """Requested computation exceeds the configured brute-force cap."""


class ConductorNotCoprime(DomainError):
    """Tower requires gcd(conductor, ell) = 1."""


class NoCoprimeRepresentation(DomainError):
    """No represented value coprime to the target modulus was found."""


class HypothesisViolation(DomainError):
    """Inputs do not satisfy the hypotheses of the requested criterion."""


class WrongRamification(DomainError):
    """Ramification type of ell in the field does not match the request."""


class NotSplit(DomainError):
    """Prime is not split in the field, or divides the relevant data."""


class PrimeEqualsEll(DomainError):
    """The sampled prime coincides with the isogeny degree ell."""


# field characteristic equal to the isogeny degree: same failure, graph-side name
EllEqualsP = PrimeEqualsEll


class UnsupportedEll(DomainError):
    """No embedded modular polynomial for this ell."""


class NotPrime(DomainError):
    """Argument expected to be prime is not."""
