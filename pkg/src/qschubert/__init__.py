"""Exact computations for quantum Schubert cells, quantum groups and their torus-invariant spectra."""

from .lattices import IntLattice, big_L, kappa_lattice, ltilde, ltilde_red, m_of_w
from .ncengine import PBWContext, PBWVector, build_context, ls_relation, quantum_group
from .normalia import classify_normals, find_central, find_normal
from .qarith import LaurentPoly, RatFunc, qbinom, qnum, qpow
from .rootsys import CartanDatum, Weight, WeylElement, cartan_datum, parse_word, word_to_element
from .spectra import pair_report, stabilizer, theorem1_generators

__version__ = "0.1.0"

__all__ = [
    "CartanDatum",
    "IntLattice",
    "LaurentPoly",
    "PBWContext",
    "PBWVector",
    "RatFunc",
    "Weight",
    "WeylElement",
    "big_L",
    "build_context",
    "cartan_datum",
    "classify_normals",
    "find_central",
    "find_normal",
    "kappa_lattice",
    "ls_relation",
    "ltilde",
    "ltilde_red",
    "m_of_w",
    "pair_report",
    "parse_word",
    "qbinom",
    "qnum",
    "qpow",
    "quantum_group",
    "stabilizer",
    "theorem1_generators",
    "word_to_element",
]
