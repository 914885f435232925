"""Exception types raised across the package."""


class MixedLandauError(ValueError):
    """Base class for all errors raised by :mod:`mixedlandau`."""


class ExponentMismatch(MixedLandauError):
    """Two Wick functions with different Gaussian exponents were combined linearly."""


class EvaluationOverflow(MixedLandauError, OverflowError):
    """Evaluation requested far outside the Gaussian envelope."""


class NonUnimodular(MixedLandauError):
    pass


class NotAffine(MixedLandauError):
    """Operation needs a closed-form (affine) equivariant pair."""


class NotConstant(MixedLandauError):
    """The magnetic field of a generic pair varies over the plane."""


class NonPositiveField(MixedLandauError):
    pass


class QuadratureUnderresolved(MixedLandauError):
    pass


class InconsistentCocycle(MixedLandauError):
    """The lattice multiplier is not a pseudo-character, so no nonzero forms exist."""


class GridTooCoarse(MixedLandauError):
    pass
