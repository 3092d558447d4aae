"""Exact-arithmetic toolkit for braids with double lines.

Braid words with double-line generators present links in S_g x S^1.  The
package provides the word calculus and dl-Markov moves, the affine Hecke
algebra image in Bernstein normal form, combinatorial closed diagrams with
Gauss data and the braiding process, and the Kauffman bracket trace with its
Chebyshev/torsion normal form.  All arithmetic is exact over Laurent rings.
"""

from .braid import BraidWord, Letter, MarkovMove, SearchBounds, markov_search, parse_word, rho, sigma, tau
from .diagram import DlDiagram, GaussData, braid_from_diagram, closure_diagram, gauss_data, gauss_isomorphic
from .hecke import HeckeElement, HeckeKey, mul, phi, t_inverse
from .ring import DELTA, Laurent, QScalar, SkeinValue, VScalar, v_to_q
from .skein import (
    HPNormalForm,
    XPoly,
    bracket,
    chebyshev_coeffs,
    chebyshev_expand,
    hp_reduce,
    resolve_multiwinding,
    stabilization_factor,
    trace,
)

__all__ = [
    "BraidWord",
    "Letter",
    "MarkovMove",
    "SearchBounds",
    "markov_search",
    "parse_word",
    "rho",
    "sigma",
    "tau",
    "DlDiagram",
    "GaussData",
    "braid_from_diagram",
    "closure_diagram",
    "gauss_data",
    "gauss_isomorphic",
    "HeckeElement",
    "HeckeKey",
    "mul",
    "phi",
    "t_inverse",
    "DELTA",
    "Laurent",
    "QScalar",
    "SkeinValue",
    "VScalar",
    "v_to_q",
    "HPNormalForm",
    "XPoly",
    "bracket",
    "chebyshev_coeffs",
    "chebyshev_expand",
    "hp_reduce",
    "resolve_multiwinding",
    "stabilization_factor",
    "trace",
]

__version__ = "0.1.0"
