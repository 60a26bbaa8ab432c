"""Bott-Samelson rings of Coxeter words: presentations, certificates and Hodge checks."""

from .coxeter import CoxeterMatrix, CoxeterWord
from .kernels import IMPLEMENTATION
from .numeric import RATIONAL, float_backend, get_backend
from .ring import build_presentation, mul, normal_form, pairing_matrix
from .tensor import TensorOracle, oracle_structure_constants

__version__ = "0.1.0"

__all__ = [
    "CoxeterMatrix", "CoxeterWord", "IMPLEMENTATION", "RATIONAL", "float_backend", "get_backend",
    "build_presentation", "mul", "normal_form", "pairing_matrix", "TensorOracle",
    "oracle_structure_constants",
]
