"""Exception hierarchy.

Every domain failure derives from :class:`LarmorError` so callers (the CLI in
particular) can separate physics/guard errors from usage mistakes.
"""


class LarmorError(Exception):
    """Base class for all domain errors raised by this package."""


class NonFiniteInput(LarmorError, ValueError):
    pass


class MasslessConversion(LarmorError, ValueError):
    """Natural units are undefined for a massless particle."""


class NonPositiveMass(LarmorError, ValueError):
    pass


class UnknownParticle(LarmorError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown particle"


class MalformedRegistry(LarmorError, ValueError):
    pass


class SingularPoint(LarmorError, ZeroDivisionError):
    """A closed-form expression has a vanishing denominator."""


class SingularExpansion(SingularPoint):
    """An asymptotic expansion is evaluated where its denominator vanishes."""


class OutsideExpansionDomain(LarmorError, ValueError):
    pass


class SuperluminalVelocity(LarmorError, ValueError):
    pass


class NotHermitian(LarmorError, ValueError):
    pass


class NoConvergence(LarmorError, RuntimeError):
    pass


class AmbiguousLabeling(LarmorError, RuntimeError):
    pass


class ValidationMismatch(LarmorError, AssertionError):
    """Oracle and closed form disagree beyond tolerance during a sweep."""
