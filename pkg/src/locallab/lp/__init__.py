from .decomposition import Decomposition, check_decomposition, ls_decompose, ls_decompose_many, selection_bound
from .mds import mds_pipeline, mds_run
from .model import (
    CanonicalLP,
    LpNetwork,
    build_lp_network,
    dominating_set_lp,
    lp_from_dict,
    lp_to_dict,
    random_covering_lp,
    read_lp,
    vertex_cover_lp,
    write_lp,
)
from .rounding import round_covering, round_packing
from .solver import LPParams, LocalLPResult, solve_lp_local, theorem_params

__all__ = [
    "CanonicalLP",
    "Decomposition",
    "LPParams",
    "LocalLPResult",
    "LpNetwork",
    "build_lp_network",
    "check_decomposition",
    "dominating_set_lp",
    "lp_from_dict",
    "lp_to_dict",
    "ls_decompose",
    "ls_decompose_many",
    "mds_pipeline",
    "mds_run",
    "random_covering_lp",
    "read_lp",
    "round_covering",
    "round_packing",
    "selection_bound",
    "solve_lp_local",
    "theorem_params",
    "vertex_cover_lp",
    "write_lp",
]
