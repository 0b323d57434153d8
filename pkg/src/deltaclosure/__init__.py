"""Closed itemsets, passkey levels and Δ-measures of binary datasets."""
from .concepts import Concept, ConceptGraph, build_graph, delta_closure, delta_of_itemset, enumerate_closed, mine_graph
from .context import FormalContext, closure, derive_attributes, derive_objects, load_context, parse_csv, parse_fimi
from .delta import (DeltaAnnotation, DeltaPartition, LevelDistribution, annotate_all, compute_partition,
                    compute_pk_deltas, delta_key_value, is_delta_free, is_delta_key, level_distribution)
from .errors import DeltaClosureError, IntegrityError, ParseError, ResourceCapError
from .levels import ClosureStructure, closure_index, enumerate_levels, level_histogram

__all__ = [
    "Concept", "ConceptGraph", "build_graph", "delta_closure", "delta_of_itemset", "enumerate_closed", "mine_graph",
    "FormalContext", "closure", "derive_attributes", "derive_objects", "load_context", "parse_csv", "parse_fimi",
    "DeltaAnnotation", "DeltaPartition", "LevelDistribution", "annotate_all", "compute_partition",
    "compute_pk_deltas", "delta_key_value", "is_delta_free", "is_delta_key", "level_distribution",
    "DeltaClosureError", "IntegrityError", "ParseError", "ResourceCapError",
    "ClosureStructure", "closure_index", "enumerate_levels", "level_histogram",
]
