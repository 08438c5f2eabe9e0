"""Lerch partial zeta functions, Dirichlet L-values and equivariant characteristic classes.

Arbitrary-precision evaluation and exact verification of the identities that tie
Lerch series at roots of unity to Gamma values, L-functions and periods.
"""

from .cyclotomic import Cyclotomic
from .dirichlet import DirichletCharacter, characters, character_from_label, l_function, l_function_ds
from .lerch import RootOfUnityAngle, lerch_cos_sin, lerch_ds, lerch_zeta, r_series
from .numeric import DomainError, PoleError, ConvergenceError, precision_bits
from .report import IdentityReport

__version__ = "0.1.0"

__all__ = [
    "Cyclotomic",
    "DirichletCharacter",
    "characters",
    "character_from_label",
    "l_function",
    "l_function_ds",
    "RootOfUnityAngle",
    "lerch_cos_sin",
    "lerch_ds",
    "lerch_zeta",
    "r_series",
    "DomainError",
    "PoleError",
    "ConvergenceError",
    "precision_bits",
    "IdentityReport",
]
