"""Moebius pseudodistance, pluricomplex Green function and Sibony function
of elementary Reinhardt domains D_alpha = {z : |z_1|^a_1 ... |z_n|^a_n < 1}."""

from .domain import (
    ExponentVector,
    ReinhardtDomain,
    TypeClassification,
    TypeKind,
    classify,
    member_ambient,
    member_domain,
    normalize_rational,
    parse_alpha,
    parse_point,
)
from .errors import (
    DimensionMismatch,
    DomainViolation,
    InvalidExponent,
    NotInDomain,
    NotRationalType,
    ParseError,
    PreconditionViolation,
    ReinhardtError,
    SamplingExhausted,
    SigmaZero,
)
from .invariants import InvariantSet, invariant_set, mu_min, r_order, sigma_count
from .metrics import Branch, Evaluation, MetricValue, evaluate, green_value, moebius_value, sibony_value
from .numerics import abs_monomial, log_abs_monomial, mobius_disc

__version__ = "0.1.0"
