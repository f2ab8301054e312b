"""Exact determinants of corridor-glued walking-cat graphs and arrangement chamber graphs."""

from .arrangements import (
    Arrangement,
    Face,
    Hyperplane,
    chamber_graph,
    chambers,
    enumerate_faces,
    face_multiplicity,
    face_weight,
    indirectly_acyclic,
    verify_ledi,
    verify_prop_acyclic,
    verify_prop_acyclic_corridor,
    verify_prop_arrangement_corridor,
    verify_varchenko,
)
from .corridor import (
    BlockGlueSpec,
    CorridorPartition,
    CorridorSet,
    build_Mq,
    corridor_partition,
    glue_graphs,
    glue_system,
    multi_corridor_partition,
)
from .errors import CorridorDetError
from .factorization import (
    FactorizationReport,
    th2_binomial_identity,
    verify_lemat,
    verify_th1,
    verify_th2,
    verify_thmat,
)
from .graph import (
    DISTANCE,
    PROBABILISTIC,
    LabeledDigraph,
    extended_kernel,
    kernel_matrix,
    minimal_sequences,
    validate_axioms,
)
from .matrix import SquareMatrix, det, det_bareiss, det_division_free, det_laplace
from .poly import Polynomial, parse_poly

__version__ = "0.1.0"

__all__ = [
    "Arrangement",
    "BlockGlueSpec",
    "CorridorDetError",
    "CorridorPartition",
    "CorridorSet",
    "DISTANCE",
    "Face",
    "FactorizationReport",
    "Hyperplane",
    "LabeledDigraph",
    "PROBABILISTIC",
    "Polynomial",
    "SquareMatrix",
    "build_Mq",
    "chamber_graph",
    "chambers",
    "corridor_partition",
    "det",
    "det_bareiss",
    "det_division_free",
    "det_laplace",
    "enumerate_faces",
    "extended_kernel",
    "face_multiplicity",
    "face_weight",
    "glue_graphs",
    "glue_system",
    "indirectly_acyclic",
    "kernel_matrix",
    "minimal_sequences",
    "multi_corridor_partition",
    "parse_poly",
    "th2_binomial_identity",
    "validate_axioms",
    "verify_lemat",
    "verify_ledi",
    "verify_prop_acyclic",
    "verify_prop_acyclic_corridor",
    "verify_prop_arrangement_corridor",
    "verify_th1",
    "verify_th2",
    "verify_thmat",
    "verify_varchenko",
]
