"""Base-point invariants sigma(a), mu(a), r(a)."""

from __future__ import annotations

from dataclasses import dataclass

from .domain import as_alpha, require_in_domain
from .errors import SigmaZero


@dataclass(frozen=True)
class InvariantSet:
    sigma: int
    mu: float | None
    r: float

    def to_json(self) -> dict:
        return {"sigma": self.sigma, "mu": _num(self.mu), "r": _num(self.r)}


def _num(x):
    if x is None:
        return None
    return int(x) if float(x).is_integer() else x


def _vanishing(alpha, a) -> list[float]:
    alpha = as_alpha(alpha)
    a = require_in_domain(alpha, a, "base point")
    # exact comparison with 0: membership in a coordinate hyperplane is structural
    return [aj for aj, w in zip(alpha.entries, a) if aj > 0 and w == 0]


def sigma_count(alpha, a) -> int:
    """Number of coordinates with alpha_j > 0 and a_j = 0."""
    return len(_vanishing(alpha, a))


def mu_min(alpha, a) -> float:
    vals = _vanishing(alpha, a)
    if not vals:
        raise SigmaZero("mu(a) is undefined when sigma(a) = 0")
    return min(vals)


def r_order(alpha, a) -> float:
    """Vanishing order of z^alpha - a^alpha at a: 1 if sigma(a) = 0, else the
    sum of the positive exponents at the vanishing coordinates."""
    vals = _vanishing(alpha, a)
    return sum(vals) if vals else 1


def invariant_set(alpha, a) -> InvariantSet:
    vals = _vanishing(alpha, a)
    if not vals:
        return InvariantSet(0, None, 1)
    return InvariantSet(len(vals), min(vals), sum(vals))
