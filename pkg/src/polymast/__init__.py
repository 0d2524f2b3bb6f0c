"""Minimum average stretch spanning trees and cycle bases of polygonal 2-trees."""
from .cycles import (
    Cycle,
    InducedCycleSet,
    basis_size,
    induced_cycles,
    minimum_cycle_basis,
    verify_cycle_basis,
)
from .decomposition import (
    Ear,
    NiceEarDecomposition,
    NotPolygonalError,
    RecognitionOutcome,
    recognize,
    verify_nice,
)
from .bench import BenchRecord, run_bench, summarize
from .generator import GenSpec, GenTrace, cycle_graph, generate, generate_kgonal
from .graph import (
    EdgeSet,
    Graph,
    GraphError,
    bfs_distances,
    biconnected_components,
    bridges,
    build_graph,
)
from .io import FormatError, format_edge_list, parse_edge_list, read_edge_list, write_edge_list
from .mast import MastResult, MastState, distortion, run_mast, support
from .oracle import (
    OracleGuardError,
    OracleReport,
    brute_force_mast,
    horton_mcb,
    oracle_recognizer,
)
from .stretch import average_stretch, fundamental_cycles, total_stretch

__version__ = "0.1.0"
