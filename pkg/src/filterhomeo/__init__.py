"""Executable homeomorphisms between filters on omega and their squares.

Points of the Cantor space are eventually periodic subsets of omega held in
exact canonical form (:class:`EvPeriodicSet`) or lazy membership oracles
(:class:`OraclePoint`).  :func:`square_homeo` builds the map carrying
``F x F`` onto ``F`` for a non-principal zoo filter.
"""

from .cantor_core import (EMPTY, EVENS, ODDS, OMEGA, EvPeriodicSet, GroundSet, OraclePoint,
                          TernaryStream)
from .errors import (DomainError, FilterHomeoError, GenerationError, MalformedInputError,
                     ShapeError, UnsupportedCaseError, WitnessError)
from .filter_zoo import (FilterSpec, PrefilterSpec, SemifilterSpec, dyadic_chain, frechet,
                         principal, semifilter_T)
from .homeo import (DisjointPair, Homeo, compose, invert, main_pair_homeo, parallel,
                    power_homeo, prefilter_normalize, principal_classify, product_homeo,
                    restriction_homeo, square_homeo)

__version__ = "0.1.0"

__all__ = [
    "EMPTY", "EVENS", "ODDS", "OMEGA", "EvPeriodicSet", "GroundSet", "OraclePoint", "TernaryStream",
    "DomainError", "FilterHomeoError", "GenerationError", "MalformedInputError", "ShapeError",
    "UnsupportedCaseError", "WitnessError",
    "FilterSpec", "PrefilterSpec", "SemifilterSpec", "dyadic_chain", "frechet", "principal",
    "semifilter_T",
    "DisjointPair", "Homeo", "compose", "invert", "main_pair_homeo", "parallel", "power_homeo",
    "prefilter_normalize", "principal_classify", "product_homeo", "restriction_homeo",
    "square_homeo",
]
