class DiscordLabError(Exception):
    """Base exception for every error raised by the package"""
    pass


class ValidationError(DiscordLabError, ValueError):
    """Bad input: wrong shape, broken invariant, invalid parameter"""
    pass


class NumericalError(DiscordLabError, ArithmeticError):
    """A computation could not produce a trustworthy result"""
    pass
