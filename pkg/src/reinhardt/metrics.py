"""The Moebius pseudodistance, pluricomplex Green function and Sibony function of D_alpha.

Every evaluation dispatches on the type of alpha and on sigma(a); the returned
MetricValue records which closed-form branch produced the number.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .domain import ReinhardtDomain, require_in_domain
from .invariants import InvariantSet, invariant_set
from .numerics import log_abs_monomial, mobius_disc, monomial, root_of_log


class Branch(enum.Enum):
    RATIONAL_MOEBIUS = "RationalMoebius"
    RATIONAL_GREEN = "RationalGreen"
    RATIONAL_SIBONY_SIGMA_LE1 = "RationalSibonySigmaLe1"
    SIBONY_SIGMA_GE2 = "SibonySigmaGe2"
    IRRATIONAL_MOEBIUS_ZERO = "IrrationalMoebiusZero"
    IRRATIONAL_GREEN_SIGMA0 = "IrrationalGreenSigma0"
    IRRATIONAL_GREEN_SIGMA1 = "IrrationalGreenSigma1"
    IRRATIONAL_GREEN_SIGMA_GE2_UNKNOWN = "IrrationalGreenSigmaGe2Unknown"


@dataclass(frozen=True)
class MetricValue:
    value: float | None
    branch: Branch
    invariants_used: InvariantSet

    def __post_init__(self):
        unknown = self.branch is Branch.IRRATIONAL_GREEN_SIGMA_GE2_UNKNOWN
        if unknown != (self.value is None):
            raise ValueError(f"value/branch mismatch: {self.value!r} with {self.branch.value}")
        if self.value is not None and not 0 <= self.value < 1:
            raise ValueError(f"metric value {self.value!r} outside [0, 1)")

    @property
    def known(self) -> bool:
        return self.value is not None


def _prepare(domain: ReinhardtDomain, a, z):
    a = require_in_domain(domain.alpha, a, "base point")
    z = require_in_domain(domain.alpha, z, "point")
    alpha = domain.working_alpha
    return alpha, a, z, invariant_set(alpha, a)


def _rational_moebius(alpha, a, z) -> float:
    wa = monomial(alpha, a)
    if wa == 0:
        # m_D(0, w) = |w|; take it straight from the log domain
        return root_of_log(log_abs_monomial(alpha, z), 1)
    return mobius_disc(wa, monomial(alpha, z))


def moebius_value(domain: ReinhardtDomain, a, z) -> MetricValue:
    alpha, a, z, inv = _prepare(domain, a, z)
    if not domain.is_rational:
        return MetricValue(0.0, Branch.IRRATIONAL_MOEBIUS_ZERO, inv)
    return MetricValue(_rational_moebius(alpha, a, z), Branch.RATIONAL_MOEBIUS, inv)


def _green(domain, alpha, a, z, inv) -> MetricValue:
    if domain.is_rational:
        m = _rational_moebius(alpha, a, z)
        value = m if inv.r == 1 else m ** (1.0 / inv.r)
        return MetricValue(value, Branch.RATIONAL_GREEN, inv)
    if inv.sigma == 0:
        return MetricValue(0.0, Branch.IRRATIONAL_GREEN_SIGMA0, inv)
    if inv.sigma == 1:
        return MetricValue(root_of_log(log_abs_monomial(alpha, z), inv.r), Branch.IRRATIONAL_GREEN_SIGMA1, inv)
    return MetricValue(None, Branch.IRRATIONAL_GREEN_SIGMA_GE2_UNKNOWN, inv)


def green_value(domain: ReinhardtDomain, a, z) -> MetricValue:
    alpha, a, z, inv = _prepare(domain, a, z)
    return _green(domain, alpha, a, z, inv)


def sibony_value(domain: ReinhardtDomain, a, z) -> MetricValue:
    alpha, a, z, inv = _prepare(domain, a, z)
    if inv.sigma >= 2:
        return MetricValue(root_of_log(log_abs_monomial(alpha, z), inv.mu), Branch.SIBONY_SIGMA_GE2, inv)
    g = _green(domain, alpha, a, z, inv)
    if domain.is_rational:
        return MetricValue(g.value, Branch.RATIONAL_SIBONY_SIGMA_LE1, inv)
    # irrational, sigma <= 1: the Sibony function coincides with the Green function
    return g


@dataclass(frozen=True)
class Evaluation:
    m: MetricValue
    g: MetricValue
    s: MetricValue

    @property
    def invariants(self) -> InvariantSet:
        return self.s.invariants_used


def evaluate(domain: ReinhardtDomain, a, z) -> Evaluation:
    """All three functions at (a, z)."""
    return Evaluation(moebius_value(domain, a, z), green_value(domain, a, z), sibony_value(domain, a, z))
