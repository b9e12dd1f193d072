"""Exception hierarchy shared by every orbirad module."""


class OrbiradError(ValueError):
    """Base class for math-layer errors."""


class InvalidTriangle(OrbiradError):
    pass


class IdealVertex(OrbiradError):
    pass


class DegenerateTriangle(OrbiradError):
    pass


class NonPositiveLength(OrbiradError):
    pass


class NegativeDistance(OrbiradError):
    pass


class OffModel(OrbiradError):
    """A point does not lie on the hyperboloid within tolerance."""


class OutsideTriangle(OrbiradError):
    pass


class DomainError(OrbiradError):
    pass


class NoSignChange(OrbiradError):
    pass


class MultipleRoots(OrbiradError):
    pass


class InconsistentSolution(OrbiradError):
    pass


class NonHyperbolic(OrbiradError):
    pass


class WrongSignature(OrbiradError):
    pass
