"""Exception taxonomy shared by all moorecat modules."""


class MoorecatError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(MoorecatError, ValueError):
    """An input violates a structural invariant; the message names it."""


class DomainError(MoorecatError):
    """A point lies outside the domain interval of a map."""


class CompositionError(MoorecatError):
    """Codomain/domain lengths of two maps do not match."""


class SplitError(MoorecatError):
    """A requested codomain split does not partition the interval."""


class ActionError(MoorecatError):
    """A restriction map does not end at the length of the value acted on."""


class MorphismError(MoorecatError):
    """A generator assignment is inconsistent with its source or target."""


class RepresentativeError(MoorecatError):
    """A raw tensor representative has inconsistent lengths or factors."""


class CollapseError(MoorecatError):
    """Map shapes do not match the collapse pattern."""


class BraidError(MoorecatError):
    """Input shape does not admit the requested braiding operation."""


class TransposeError(MoorecatError):
    """The adjunction transpose is unsupported for this generator kind."""


class SuiteError(MoorecatError):
    """Unknown law-suite name."""
