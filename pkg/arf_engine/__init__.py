"""
arf-engine: GF(2) 上的二次型, 正交群与四重点不变量
"""

from .errors import ArfEngineError
from .gf2 import BitMatrix, BitVector
from .mcg import MappingClass, Psi, SurfacePinkallForm, evaluate_word, quadruple_point_invariant
from .orthogroup import OrthogonalMap, decompose, psi, recompose
from .quadform import QuadraticForm, arf

__version__ = "0.1.0"

__all__ = [
    "ArfEngineError",
    "BitMatrix",
    "BitVector",
    "MappingClass",
    "OrthogonalMap",
    "Psi",
    "QuadraticForm",
    "SurfacePinkallForm",
    "arf",
    "decompose",
    "evaluate_word",
    "psi",
    "quadruple_point_invariant",
    "recompose",
]
