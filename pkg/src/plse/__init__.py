"""Partial Latin square extension solver.

Instances are PLS sets of (row, column, symbol) triples; solving works on
the equivalent maximum-independent-set instance over the still-assignable
triples.  See the demos/ directory for worked examples of each capability.
"""

from .core import (
    GenScheme,
    PlsError,
    PlsInstance,
    Triple,
    are_compatible,
    cyclic_latin_square,
    generate_qc,
    generate_qwh,
    hamming_distance,
    is_pls_set,
    parse_instance,
    random_latin_square,
    serialize_instance,
)
from .ils import IlsConfig, IlsStats, greedy_init, kick
from .ils import run as run_ils
from .matching import BipartiteGraph, hopcroft_karp
from .mis import MisInstance, transform, validate_extension
from .neighborhoods import (
    LsLevel,
    Move,
    apply_move,
    local_search,
    maximalize,
    search_swap1,
    search_swap2,
    search_swap3,
    search_trellis,
)
from .state import SolutionState, rebuild_from_scratch, states_equivalent

__version__ = "0.1.0"

__all__ = [
    "BipartiteGraph",
    "GenScheme",
    "IlsConfig",
    "IlsStats",
    "LsLevel",
    "MisInstance",
    "Move",
    "PlsError",
    "PlsInstance",
    "SolutionState",
    "Triple",
    "apply_move",
    "are_compatible",
    "cyclic_latin_square",
    "generate_qc",
    "generate_qwh",
    "greedy_init",
    "hamming_distance",
    "hopcroft_karp",
    "is_pls_set",
    "kick",
    "local_search",
    "maximalize",
    "parse_instance",
    "random_latin_square",
    "rebuild_from_scratch",
    "run_ils",
    "search_swap1",
    "search_swap2",
    "search_swap3",
    "search_trellis",
    "serialize_instance",
    "states_equivalent",
    "transform",
    "validate_extension",
]
