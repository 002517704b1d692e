"""Exact q-series and weighted partition identities around a limiting q-Dixon sum."""

from .errors import (
    DivergentSeries,
    EmptyPartition,
    EmptyWindow,
    FamilyMismatch,
    InsufficientOrder,
    InvalidBinding,
    InvalidGap,
    NonmonotoneCutoff,
    NotDivisible,
    NotInvertible,
    QIdentityError,
    TruncationError,
    UnknownIdentity,
)
from .polyring import (
    LaurentPoly,
    poly_add,
    poly_eval,
    poly_exact_div,
    poly_mul,
    poly_substitute,
)
from .qseries import (
    PochSpec,
    QSeries,
    pochhammer_finite,
    pochhammer_infinite,
    q_hypergeometric,
    qs_add,
    qs_invert,
    qs_mul,
    qs_substitute_q,
    qs_sum,
)
from .partitions import (
    ChainDecomposition,
    Partition,
    PartitionFamily,
    chain_decompose,
    count,
    enumerate_partitions,
    euler_add,
    euler_subtract,
    statistics,
    weight,
    weighted_sum,
)
from .identities import (
    IdentitySpec,
    build_side,
    catalog,
    verify,
    verify_cauchy_split,
    verify_gg_combinatorial,
    verify_jacobi_reduction,
    verify_reduction_4_6,
    verify_theorem_vs_series,
)
from .report import VerificationReport

__version__ = "0.1.0"
