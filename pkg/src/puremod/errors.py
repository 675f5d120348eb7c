"""Exception hierarchy shared by every puremod module."""


class PuremodError(Exception):
    """Base class; the CLI maps every subclass to exit code 2."""


class InvalidSpec(PuremodError):
    pass


class NonPrimeModulus(InvalidSpec):
    pass


class OrderNotDividing(InvalidSpec):
    pass


class SizeLimitExceeded(PuremodError):
    pass


class UnknownPredicate(PuremodError):
    pass


class NotAnIdeal(PuremodError):
    pass


class NotASubmodule(PuremodError):
    pass


class UnknownSuite(PuremodError):
    pass


class NonUnique(PuremodError):
    """Raised by purification when the minimal pure oversets form an antichain."""

    def __init__(self, antichain):
        self.antichain = list(antichain)
        super().__init__(
            f"no unique minimal pure overset ({len(self.antichain)} minimal candidates)"
        )
