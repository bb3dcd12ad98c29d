"""Symmetric spectra of mixed graphs under theta-Hermitian adjacency matrices.

Exact decisions live in :mod:`mixedspec.charpoly` (Laurent and cyclotomic
arithmetic from :mod:`mixedspec.rings`); floating-point spectra in
:mod:`mixedspec.numeric`; the graph families in
:mod:`mixedspec.constructions`; bounded searches over oriented book graphs in
:mod:`mixedspec.search`.
"""

from mixedspec.errors import (
    ComputationError,
    ContractError,
    GraphFormatError,
    InputError,
    MixedSpecError,
)
from mixedspec.graph import Cycle, MixedGraph, UndirectedGraph
from mixedspec.rings import CosPoly, CyclotomicElement, LaurentPoly

__all__ = [
    "ComputationError",
    "ContractError",
    "CosPoly",
    "Cycle",
    "CyclotomicElement",
    "GraphFormatError",
    "InputError",
    "LaurentPoly",
    "MixedGraph",
    "MixedSpecError",
    "UndirectedGraph",
]

__version__ = "0.1.0"
