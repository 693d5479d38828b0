"""Maximum induced forests and rooted-forest moments in G(n, p)."""

from .coding import PrueferCode, decode_tree_with_independent_set, encode_tree_with_independent_set
from .counting import ForestShape, forest_extension_count
from .errors import ConstraintError, ParameterError, StructureError
from .graph import Graph, GnpParams, sample_gnp
from .moments import Window, expected_Xk_exact, expected_Xk_log, second_moment_exact, window
from .solver import RootedForest, SolveResult, max_induced_forest

__version__ = "0.1.0"

__all__ = [
    "ConstraintError", "ForestShape", "GnpParams", "Graph", "ParameterError", "PrueferCode",
    "RootedForest", "SolveResult", "StructureError", "Window", "decode_tree_with_independent_set",
    "encode_tree_with_independent_set", "expected_Xk_exact", "expected_Xk_log",
    "forest_extension_count", "max_induced_forest", "sample_gnp", "second_moment_exact", "window",
]
