"""Long cycles through a given edge via shortest colourful cycles over GF(2^kappa)."""

from .colourful import ColourfulResult, SieveConfig, algorithm_A, berkowitz_det, build_matrix, shortest_colourful_cycle
from .errors import InvalidInputError, LongCycleError, ParseError, SizeRefusal
from .gf2k import FieldCtx, field_for_order
from .graph import ColouredGraph, Edge, LongCycleInstance, all_unique_colouring, make_graph, parse_graph

__version__ = "0.1.0"
