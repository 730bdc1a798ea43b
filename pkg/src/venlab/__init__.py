"""Exact symbolic checks for Venereau-type polynomials.

The core types are :class:`MultiPoly` (sparse rational polynomials, Laurent
in x), :class:`PolyMap` (ring endomorphisms by generator images) and
:class:`Derivation`.  Named constructions live in :mod:`venlab.venereau` and
:mod:`venlab.stable`; every certifier returns a :class:`Certificate`.
"""

from .arith import (VARS, MultiPoly, VenlabError, const, evaluate, exact_divide,
                    is_integral, partial, reduce_mod_x, render, substitute, var,
                    x_valuation)
from .certificate import Certificate
from .derivations import Derivation, apply_derivation, exp_derivation, jacobian_derivation
from .maps import (STANDARD_FRAME, ZERO_FRAME, Frame, PolyMap, apply, compose,
                   extend_from_frame, jacobian_det, verify_inverse_pair)
from .parser import ParseError, parse_expr

__version__ = "0.1.0"

__all__ = [
    "VARS", "MultiPoly", "VenlabError", "const", "evaluate", "exact_divide",
    "is_integral", "partial", "reduce_mod_x", "render", "substitute", "var",
    "x_valuation", "Certificate", "Derivation", "apply_derivation",
    "exp_derivation", "jacobian_derivation", "STANDARD_FRAME", "ZERO_FRAME",
    "Frame", "PolyMap", "apply", "compose", "extend_from_frame", "jacobian_det",
    "verify_inverse_pair", "ParseError", "parse_expr",
]
