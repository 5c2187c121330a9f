"""Workbench for hypercube circuit codes: verification, constructions and lower-bound tables."""

from .bounds import (
    BoundEntry,
    BoundTable,
    explain,
    propagate,
    seed_exact,
    seed_formula,
    seed_table,
    singleton_k4_baseline,
    theorem2_bound,
    transformations,
)
from .constructions import (
    ConstructionReport,
    construct7,
    construct7_params,
    klee_padding,
    naive_insertion,
    project_vertex,
)
from .corpus import CorpusEntry, corpus, lookup
from .fileformat import export_table, format_code_file, parse_code_file
from .model import (
    CircuitCode,
    SpreadVerdict,
    TransitionSequence,
    Vertex,
    Witness,
    check_consecutive_distinct,
    cycle_distance,
    has_spread,
    hypercube_distance,
    is_simple_cycle,
    max_spread,
    vertices_of,
)

__all__ = [
    "BoundEntry",
    "BoundTable",
    "explain",
    "propagate",
    "seed_exact",
    "seed_formula",
    "seed_table",
    "singleton_k4_baseline",
    "theorem2_bound",
    "transformations",
    "ConstructionReport",
    "construct7",
    "construct7_params",
    "klee_padding",
    "naive_insertion",
    "project_vertex",
    "CorpusEntry",
    "corpus",
    "lookup",
    "export_table",
    "format_code_file",
    "parse_code_file",
    "CircuitCode",
    "SpreadVerdict",
    "TransitionSequence",
    "Vertex",
    "Witness",
    "check_consecutive_distinct",
    "cycle_distance",
    "has_spread",
    "hypercube_distance",
    "is_simple_cycle",
    "max_spread",
    "vertices_of",
]

__version__ = "0.1.0"
