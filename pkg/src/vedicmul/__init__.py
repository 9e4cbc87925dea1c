"""Nikhilam squaring and multiplication for arbitrary-precision naturals.

The hot kernels live in a compiled extension when it is available; see
:mod:`vedicmul.backend`.
"""
from .backend import NAME as BACKEND
from .counts import OpCounts
from .errors import AlgorithmError, CrossCheckError, DomainError, ParseError, UnderflowError
from .karatsuba import BaseCase, HybridConfig, karatsuba_mul, split
from .natural import (Natural, Ordering, SignedInt, abs_diff, add, bit, bit_length, cmp,
                      from_text, is_zero, shl, shr, sub, to_text)
from .nikhilam import (SquaringTrace, TraceStep, near_base_mul, near_base_steps, nearest_base,
                       nik_mul, nik_square, nik_square_traced)
from .schoolbook import school_mul

__version__ = "0.1.0"

__all__ = [
    "AlgorithmError", "BACKEND", "BaseCase", "CrossCheckError", "DomainError", "HybridConfig",
    "Natural", "OpCounts", "Ordering", "ParseError", "SignedInt", "SquaringTrace", "TraceStep",
    "UnderflowError", "abs_diff", "add", "bit", "bit_length", "cmp", "from_text", "is_zero",
    "karatsuba_mul", "near_base_mul", "near_base_steps", "nearest_base", "nik_mul",
    "nik_square", "nik_square_traced", "school_mul", "shl", "shr", "split", "sub", "to_text",
]
