"""Spectral theory of the magnetic Schrodinger operator on planar mixed automorphic forms.

Exact operator identities on Wick-form functions, complex Hermite eigenfunctions,
eigenprojector kernels, lattice cocycles and numerical eigenspace dimensions.
"""

from .errors import (
    EvaluationOverflow,
    ExponentMismatch,
    GridTooCoarse,
    InconsistentCocycle,
    MixedLandauError,
    NonPositiveField,
    NonUnimodular,
    NotAffine,
    NotConstant,
    QuadratureUnderresolved,
)
from .lattice import Lattice, lattice_points, truncation_radius
from .model import (
    ConjugateAffine,
    Generic,
    GroupElement,
    InnerAffine,
    ModelParams,
    gauge_phi,
    magnetic_field,
    s_affine,
    s_function,
)
from .wick import WickFunction

__version__ = "0.1.0"
