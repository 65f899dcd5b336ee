"""Combinatorial models of cluster categories, surface triangulations, braid
actions on arcs, a six-chamber groupoid and flux-decorated fibrations."""
from __future__ import annotations

from .braids import (
    Arc,
    BraidWord,
    apply_to_arc,
    arc_eq,
    artin_apply,
    braid_eq,
    braid_twist,
    endpoints,
    forget_strand,
    hf_rank_class,
    in_kernel,
    interior_intersection,
    permutation,
)
from .errors import (
    ArgumentError,
    FlipUndefinedError,
    GeometryError,
    MonosplitError,
    NotMatchingError,
    ResourceError,
)
from .polygon import (
    NAngulation,
    NDiagonal,
    d_param,
    enumerate_n_angulations,
    enumerate_n_diagonals,
    exchange_graph,
    rotate,
)
from .quiver import QuiverWithPotential, mutate
from .surface import (
    IdealTriangulation,
    MarkedSurface,
    build_surface,
    dual_quiver_with_potential,
    expected_counts,
    flip,
    seed_triangulation,
    triangulation_graph,
    validate_triangulation,
)

__version__ = "0.1.0"
