"""Exact Gale duality, complete simplicial fans and Nef cones of toric varieties."""

__version__ = "0.1.0"

from .cone import Cone, cone_from_generators, cone_from_inequalities, contains, intersect, is_face
from .exactmat import (
    FanMatrix,
    IntMatrix,
    WeightMatrix,
    gale_dual,
    hnf_rows,
    kernel_lattice_basis,
    lattice_equal,
    submatrix,
)
from .fan import Fan, enumerate_fans, facet_neighbor, is_complete_fan
from .gale import Bunch, adjacent_swap, bunch_of, same_side_certificate
from .nefsec import (
    Classification,
    anticanonical_class,
    bunch_permute,
    classify_all,
    effective_cone,
    is_cartier,
    is_projective,
    moving_cone,
    nef_cone,
    nef_rank2_walk,
    secondary_chambers,
)
