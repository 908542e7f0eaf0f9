"""Generalised weighted surface algebras, their lifts and silting bijections."""

from __future__ import annotations

from .algebra import PathAlgebra, SCAlgebra, cartan_matrix, centre
from .combinatorics import Quiver2Reg, brauer_graph, build_quiver, quiver_K, quiver_tree2
from .errors import ArtifactError, CheckFailure, InputError, ResourceCap
from .gwsa import GWSAData, make_gwsa, make_twisted_bga, preset, validate_gwsa, verify_hom
from .homotopy import ProjComplex, decompose, hom_dim, is_presilting, minimize, two_term
from .orders import (
    TruncOrder,
    central_z,
    decomposition_matrix,
    lift_central_xi,
    make_gamma0,
    make_ribbon_order,
    reduce_mod,
    verify_reduction,
)
from .silting import (
    SiltingPoset,
    certify_silting,
    compare_posets,
    enumerate_two_term,
    irreducible_mutation,
    lift_complex,
    transport,
)
from .textformat import load, parse, serialize

__all__ = [
    "ArtifactError", "CheckFailure", "InputError", "ResourceCap",
    "GWSAData", "PathAlgebra", "ProjComplex", "Quiver2Reg", "SCAlgebra", "SiltingPoset", "TruncOrder",
    "brauer_graph", "build_quiver", "cartan_matrix", "central_z", "centre", "certify_silting",
    "compare_posets", "decompose", "decomposition_matrix", "enumerate_two_term", "hom_dim",
    "irreducible_mutation", "is_presilting", "lift_central_xi", "lift_complex", "load",
    "make_gamma0", "make_gwsa", "make_ribbon_order", "make_twisted_bga", "minimize", "parse",
    "preset", "quiver_K", "quiver_tree2", "reduce_mod", "serialize", "transport", "two_term",
    "validate_gwsa", "verify_hom", "verify_reduction",
]
