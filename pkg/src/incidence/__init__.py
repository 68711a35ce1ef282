"""Scoring positional games on coloured hypergraphs, centred on Incidence."""
from .core import (BoardError, Color, Convention, Edge, EdgeColor, Hypergraph, IllegalMoveError, NotTerminalError,
                   Player, Position, VertexId, build_hypergraph, constant, disjoint_sum, fresh, graph, negate,
                   score_of, terminal_score)
from .generators import generate
from .io import BoardParseError, ResultRecord, parse_board, serialize_board
from .solver import (CanonicalKey, Engine, ScorePair, SearchBudgetExceeded, SolveOptions, SolveResult,
                     canonical_key, dominates, milnor_equivalent, score_pair, solve, twin_reduce)

__version__ = "0.1.0"
