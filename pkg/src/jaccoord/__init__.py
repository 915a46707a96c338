"""Exact-rational tools for recognizing coordinates of the affine plane.

The package decides whether a bivariate polynomial over Q is a coordinate,
certifies the answer (automorphism witness + complementary Jacobian partner,
or a checked obstruction), and audits fibre invariants: absolute factor
count, genus, branches at infinity, and the relation 2g = 1 - h.
"""

from ._ratback import BACKEND, Rat, rat, rat_str
from .qpoly import (
    BiPoly,
    PolyParseError,
    UniPoly,
    ZeroPolynomialError,
    jacobian_det,
    parse_poly,
    squarefree_part,
    substitute,
)
from .newton import (
    FaceForm,
    LatticePolygon,
    TriangleFace,
    edge_faces,
    face_binomial_power,
    lattice_counts,
    newton_polygon,
    triangle_face,
)
from .coordinate import (
    Coordinate,
    CoordinateVerdict,
    InternalVerificationFailure,
    Linear,
    NotCoordinate,
    TriangularX,
    TriangularY,
    Witness,
    apply_witness,
    apply_witness_to,
    check,
    gen_random_coordinate,
    invert,
    reduce_step,
)
from .elim import bipoly_gcd, bipoly_is_squarefree, bipoly_squarefree_part, resultant
from .fibre import (
    ConstantInputError,
    FibreReport,
    SpecialValues,
    Unknown,
    absolute_factor_count,
    branches_at_infinity,
    fibre_report,
    genus,
    nondegenerate,
    special_value_candidates,
)
from .audit import ScanReport, relation_check, theorem3_scan

__version__ = "1.0.0"

__all__ = [
    "BACKEND",
    "BiPoly",
    "Coordinate",
    "CoordinateVerdict",
    "ConstantInputError",
    "FaceForm",
    "FibreReport",
    "InternalVerificationFailure",
    "LatticePolygon",
    "Linear",
    "NotCoordinate",
    "PolyParseError",
    "Rat",
    "ScanReport",
    "SpecialValues",
    "TriangleFace",
    "TriangularX",
    "TriangularY",
    "UniPoly",
    "Unknown",
    "Witness",
    "ZeroPolynomialError",
    "absolute_factor_count",
    "apply_witness",
    "apply_witness_to",
    "bipoly_gcd",
    "bipoly_is_squarefree",
    "bipoly_squarefree_part",
    "branches_at_infinity",
    "check",
    "edge_faces",
    "face_binomial_power",
    "fibre_report",
    "gen_random_coordinate",
    "genus",
    "invert",
    "jacobian_det",
    "lattice_counts",
    "newton_polygon",
    "nondegenerate",
    "parse_poly",
    "rat",
    "rat_str",
    "reduce_step",
    "relation_check",
    "resultant",
    "special_value_candidates",
    "squarefree_part",
    "substitute",
    "theorem3_scan",
    "triangle_face",
]
