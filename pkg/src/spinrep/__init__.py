"""Majorana stellar representation of mixed spin states.

Operators on spin ``s`` are converted between dense matrices, bihomogeneous
Majorana polynomials, the T-representation (radii plus antipodal star
classes) and the S-representation. Every polynomial-side operation can be
checked against a brute-force multiqubit oracle in :mod:`spinrep.states`.
"""

from .angular import (clebsch_gordan, parse_spin, format_spin, rotate_operator,
                      rotation_matrix, tensor_operator, wigner_D)
from .constellation import (SubconstellationClass, constellation_of_ket, extract_class,
                            mobius_rotate, stereographic, inverse_stereographic)
from .errors import (ClassExtractionError, InputError, NumericalError, PairingError,
                     SpinrepError, ValidationError)
from .polynomial import (MajoranaPoly, PureMajoranaPoly, anticoherence_order, expectation,
                         operator_from_poly, partial_trace_L, poly_from_operator, product,
                         pure_poly, trace, trace_product)
from .quasiprob import husimi, p_function, sphere_grid
from .srep import s_operator, srep_coefficients, t_in_s_expansion, reduction_factor
from .states import coherent_state, named_state, pure_from_stars
from .trep import TRep, cat_radii, decompose, reconstruct, reduce

__version__ = "0.1.0"

__all__ = [
    "clebsch_gordan", "parse_spin", "format_spin", "rotate_operator", "rotation_matrix",
    "tensor_operator", "wigner_D",
    "SubconstellationClass", "constellation_of_ket", "extract_class", "mobius_rotate",
    "stereographic", "inverse_stereographic",
    "ClassExtractionError", "InputError", "NumericalError", "PairingError", "SpinrepError",
    "ValidationError",
    "MajoranaPoly", "PureMajoranaPoly", "anticoherence_order", "expectation",
    "operator_from_poly", "partial_trace_L", "poly_from_operator", "product", "pure_poly",
    "trace", "trace_product",
    "husimi", "p_function", "sphere_grid",
    "s_operator", "srep_coefficients", "t_in_s_expansion", "reduction_factor",
    "coherent_state", "named_state", "pure_from_stars",
    "TRep", "cat_radii", "decompose", "reconstruct", "reduce",
]
