"""Exact boolean cumulant calculus, scalar and operator-valued over matrix algebras."""

from .exact import (
    DimensionError,
    MatrixB,
    OrderMismatchError,
    Scalar,
    TruncatedSeries,
    format_scalar,
    parse_scalar,
    scalar,
    series_add,
    series_mul,
)
from .partitions import IntervalPartition, apply_pi, enumerate_partitions, juxtapose
from .scalar import (
    CumulantSeq,
    MomentSeq,
    b_transform,
    bconv_add,
    bconv_mul,
    binomial_identity_check,
    check_multiplicative,
    cumulants_to_moments,
    moments_to_cumulants,
    moments_via_compositions,
    product_cumulants,
    shift_one,
)
from .model import AlgElement, JointState, joint_moments, mixed_cumulant, phi_word
from .opvalued import (
    IdentityViolation,
    MulSeries,
    MultilinearMap,
    OVDistribution,
    OVElement,
    OVJointState,
    mulseries_add,
    mulseries_mul,
    ov_bconv_add,
    ov_bconv_mul,
    ov_cumulants_to_moments,
    ov_mixed_cumulant,
    ov_moments_to_cumulants,
    ov_phi_word,
    ov_shift_one,
)
from .report import Report

__version__ = "0.1.0"
