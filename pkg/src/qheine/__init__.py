"""High-precision evaluation and numerical verification of basic
hypergeometric transformation identities over root systems of type A."""

from .errors import (
    DegenerateVariables,
    DivisionByZero,
    DomainEmpty,
    DomainExhausted,
    DomainViolation,
    InvalidConfig,
    LengthMismatch,
    NonConvergentBase,
    PoleEncountered,
    PropertyHViolation,
    QHeineError,
    TruncationNotConverged,
    UnknownIdentity,
)
from .multisum import (
    Diagnostics,
    EvalContext,
    SeriesSide,
    TruncationPolicy,
    enumerate_shell,
    evaluate,
    evaluate_in_context,
    make_context,
    vandermonde_factor,
    vandermonde_ratio,
    weight,
)
from .qcore import (
    DEFAULT_PRECISION,
    BaseSystem,
    PochCache,
    default_tol,
    dot,
    e2,
    qpoch_finite,
    qpoch_infinite,
    qpoch_ratio,
    qpoch_scaled,
    set_precision,
)

__version__ = "0.1.0"
