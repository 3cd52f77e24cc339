"""Exact heights, proximity functions and symmetric-power transport on P^1 over Q."""

from .algebraic import (
    AlgPoint,
    HeightExpr,
    alg_height,
    conjugates,
    hyperplane_of_point,
    prox_alg,
    psi,
    sigma,
    transport_defect,
)
from .configs import LineConfig, TypeTag, classify_type, restrict_to_plane, subgeneral_position, triple_points
from .exact_core import LogVal, Ordering, Place, PlaceSet, RealEnclosure, compare_scaled, norm_at
from .exceptional import IndexPair, Rat1Map, enumerate_phi, phi_from_index, pullback_profile, rem_witness, z_member
from .experiments import (
    ScanRecord,
    UnitProfile,
    enumerate_points,
    ratio_scan,
    sharp_family,
    tbor_family,
    td3b_family,
    zariski_density_check,
)
from .heights import Divisor1, Form, ProjPoint, global_height, local_height, pair_height, prox

__version__ = "0.1.0"

__all__ = [
    "AlgPoint", "HeightExpr", "alg_height", "conjugates", "hyperplane_of_point", "prox_alg",
    "psi", "sigma", "transport_defect", "LineConfig", "TypeTag", "classify_type",
    "restrict_to_plane", "subgeneral_position", "triple_points", "LogVal", "Ordering", "Place",
    "PlaceSet", "RealEnclosure", "compare_scaled", "norm_at", "IndexPair", "Rat1Map",
    "enumerate_phi", "phi_from_index", "pullback_profile", "rem_witness", "z_member",
    "ScanRecord", "UnitProfile", "enumerate_points", "ratio_scan", "sharp_family",
    "tbor_family", "td3b_family", "zariski_density_check", "Divisor1", "Form", "ProjPoint",
    "global_height", "local_height", "pair_height", "prox",
]
