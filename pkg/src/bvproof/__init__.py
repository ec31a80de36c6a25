"""Workbench for a deep-inference proof system mixing one self-dual
non-commutative connective with the two multiplicative commutative ones.

Submodules:

    core      canonical structures, negation, contexts, decompositions
    syntax    parser and canonical printer
    webs      relation webs, axioms s1-s7, reconstruction, energy order
    merge     merge sets (recursive and semantic definitions)
    rules     rule registry, matching, derivation certificates, expansions
    search    provability, derivability, splitting, up-fragment elimination
    mll       multiplicative sequent oracle and the two translations
    universe  exhaustive structure enumeration for small-scope checks
    suite     acceptance criteria as callable checks
    cli       command-line interface
"""

from .core import (
    UNIT,
    Atom,
    Copar,
    Par,
    Seq,
    Structure,
    atom,
    canonicalize,
    copar,
    decompositions,
    equivalent,
    fill,
    negate,
    occurrences,
    par,
    seq,
    size,
)
from .syntax import ParseError, format_structure, parse_context, parse_structure

__all__ = [
    "UNIT",
    "Atom",
    "Copar",
    "Par",
    "Seq",
    "Structure",
    "atom",
    "canonicalize",
    "copar",
    "decompositions",
    "equivalent",
    "fill",
    "negate",
    "occurrences",
    "par",
    "seq",
    "size",
    "ParseError",
    "format_structure",
    "parse_context",
    "parse_structure",
]
