"""Exception types shared across the package."""


class GuardExceeded(RuntimeError):
    """An enumeration would exceed a configured size limit."""


class ComplexError(ValueError):
    """A complex violates the involutive panel structure axioms."""


class ColoringError(ValueError):
    """A coloring does not fit the complex it is applied to."""


class LinearIndependenceError(ColoringError):
    """Reflexive panels meeting at a face carry linearly dependent colors."""


class DisconnectedBaseError(ValueError):
    """The quotient of the complex by its duplicate relation is disconnected."""


class NotPseudomanifoldError(ValueError):
    """Some codimension-one cell does not have exactly two cofaces."""
