"""Steiner designs with two block sizes for two-stage group testing."""

from .bounds import average_covering_size, expected_unresolved_lower_bound, g_t
from .constructions import (
    FamilyRequest,
    affine_rbibd,
    boolean_sqs,
    build_family,
    kirkman_ts,
    one_point_extension,
)
from .cyclic import crbibd_from_rdf, develop, find_rdf, rdf_condition_k5, rdf_condition_k7
from .design import (
    Design,
    Resolution,
    find_resolution,
    find_subdesign,
    verify_resolution,
    verify_steiner_two_sizes,
    verify_t_design,
)
from .pooling import PoolingMatrix, decode, simulate, syndrome

__all__ = [
    "Design",
    "FamilyRequest",
    "PoolingMatrix",
    "Resolution",
    "affine_rbibd",
    "average_covering_size",
    "boolean_sqs",
    "build_family",
    "crbibd_from_rdf",
    "decode",
    "develop",
    "expected_unresolved_lower_bound",
    "find_rdf",
    "find_resolution",
    "find_subdesign",
    "g_t",
    "kirkman_ts",
    "one_point_extension",
    "rdf_condition_k5",
    "rdf_condition_k7",
    "simulate",
    "syndrome",
    "verify_resolution",
    "verify_steiner_two_sizes",
    "verify_t_design",
]
