"""Scalar primitives: the Moebius distance on the unit disc and monomial
magnitudes evaluated in the log domain."""

from __future__ import annotations

import cmath
import math
from typing import Sequence

from .errors import DimensionMismatch, DomainViolation

NEG_INF = -math.inf


def check_finite(w: complex) -> complex:
    w = complex(w)
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise DomainViolation(f"non-finite coordinate {w!r}")
    return w


def mobius_disc(a: complex, z: complex) -> float:
    """Moebius distance |(z - a) / (1 - conj(a) z)| between two points of the unit disc."""
    a = check_finite(a)
    z = check_finite(z)
    if abs(a) >= 1 or abs(z) >= 1:
        raise DomainViolation(f"mobius_disc needs |a| < 1 and |z| < 1, got |a|={abs(a)!r}, |z|={abs(z)!r}")
    if a == 0:
        return abs(z)
    return abs(z - a) / abs(1 - a.conjugate() * z)


def log_abs_monomial(alpha: Sequence[float], z: Sequence[complex]) -> float:
    """Return log|z^alpha| = sum_j alpha_j log|z_j|, or -inf when |z^alpha| = 0.

    Zero exponents are skipped, so their coordinates may take any value
    (including 0). A zero coordinate under a negative exponent is outside
    C^n(alpha) and raises DomainViolation.
    """
    if len(alpha) != len(z):
        raise DimensionMismatch(f"alpha has length {len(alpha)} but point has length {len(z)}")
    total = 0.0
    hit_zero = False
    for aj, zj in zip(alpha, z):
        if aj == 0:
            continue
        m = abs(zj)
        if m == 0:
            if aj < 0:
                raise DomainViolation("zero coordinate at a negative exponent")
            hit_zero = True
            continue
        total += aj * math.log(m)
    if hit_zero:
        return NEG_INF
    return total


def abs_monomial(alpha: Sequence[float], z: Sequence[complex]) -> float:
    """|z^alpha|, exponentiated once from the log-domain sum."""
    lg = log_abs_monomial(alpha, z)
    if lg == NEG_INF:
        return 0.0
    return math.exp(lg)


def monomial(alpha: Sequence[int], z: Sequence[complex]) -> complex:
    """The complex value z^alpha for an integer exponent vector.

    Magnitude comes from the log domain and the phase from sum_j alpha_j arg(z_j),
    so no intermediate power over- or underflows.
    """
    lg = log_abs_monomial(alpha, z)
    if lg == NEG_INF:
        return 0j
    phase = 0.0
    for aj, zj in zip(alpha, z):
        if aj != 0:
            phase += aj * cmath.phase(zj)
    return cmath.rect(math.exp(lg), math.remainder(phase, 2 * math.pi))


def root_of_log(lg: float, power: float) -> float:
    """exp(lg / power), i.e. the 1/power root of a magnitude given by its log."""
    if lg == NEG_INF:
        return 0.0
    return math.exp(lg / power)
