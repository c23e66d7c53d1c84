"""Structural reductions of (alpha, a, z) and the covering map of D_alpha.

The reductions carry an arbitrary system to one with all exponents positive,
the base point real and nonnegative, its vanishing coordinates last and the
smallest exponent among them equal to 1. None of them changes the values of
m, g or s, which makes them useful both for canonicalization and as
metamorphic test oracles.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .domain import ExponentVector, Point, as_alpha, as_point
from .errors import DimensionMismatch, DomainViolation, InvalidExponent, PreconditionViolation
from .numerics import log_abs_monomial


def _subvector(alpha: ExponentVector, idx: Sequence[int]) -> ExponentVector:
    if alpha.exact is not None:
        return ExponentVector.from_exact(alpha.exact[i] for i in idx)
    return ExponentVector(tuple(alpha.entries[i] for i in idx))


def split_zero_exponents(alpha, p) -> tuple[ExponentVector, Point]:
    """Drop the coordinates with alpha_j = 0 (D_alpha is D_alpha' x C^(n-s))."""
    alpha = as_alpha(alpha)
    p = as_point(p)
    if len(p) != len(alpha):
        raise DimensionMismatch("alpha and point differ in length")
    keep = [j for j, x in enumerate(alpha.entries) if x != 0]
    if not keep:
        raise InvalidExponent("no nonzero exponents left after splitting")
    if len(keep) == len(alpha):
        return alpha, p
    return _subvector(alpha, keep), tuple(p[j] for j in keep)


def invert_negative_exponents(alpha, p) -> tuple[ExponentVector, Point]:
    """Apply z_j -> 1/z_j and alpha_j -> -alpha_j at every negative exponent."""
    alpha = as_alpha(alpha)
    p = as_point(p)
    if len(p) != len(alpha):
        raise DimensionMismatch("alpha and point differ in length")
    neg = [j for j, x in enumerate(alpha.entries) if x < 0]
    if not neg:
        return alpha, p
    if any(p[j] == 0 for j in neg):
        raise DomainViolation("zero coordinate at a negative exponent cannot be inverted")
    q = tuple(1 / w if j in neg else w for j, w in enumerate(p))
    if alpha.exact is not None:
        return ExponentVector.from_exact(abs(x) for x in alpha.exact), q
    return ExponentVector(tuple(abs(x) for x in alpha.entries)), q


def rotate(p, thetas: Sequence[float]) -> Point:
    p = as_point(p)
    if len(p) != len(thetas):
        raise DimensionMismatch("point and angle vector differ in length")
    return tuple(w * cmath.exp(1j * t) for w, t in zip(p, thetas))


def _positive_alpha(alpha: ExponentVector) -> None:
    if any(x <= 0 for x in alpha.entries):
        raise PreconditionViolation(f"covering map needs all exponents positive, got {alpha.entries}")


def covering_map(alpha, lam) -> Point:
    """(l_1..l_n) -> (e^l_1, .., e^l_{n-1}, l_n * exp(-(a_1 l_1 + .. + a_{n-1} l_{n-1}) / a_n)).

    With alpha_n = 1 this is the covering of D_alpha minus the hyperplanes
    z_j = 0 (j < n) by C^(n-1) x unit disc, and |F(l)^alpha| = |l_n|. For
    general alpha_n the identity reads |F(l)^alpha| = |l_n|^alpha_n.
    """
    alpha = as_alpha(alpha)
    lam = as_point(lam)
    _positive_alpha(alpha)
    if len(lam) != len(alpha):
        raise DimensionMismatch("alpha and lambda differ in length")
    if abs(lam[-1]) >= 1:
        raise DomainViolation(f"covering map needs |lambda_n| < 1, got {abs(lam[-1])!r}")
    *head, last = lam
    an = alpha.entries[-1]
    shift = sum(aj * lj for aj, lj in zip(alpha.entries[:-1], head))
    return tuple(cmath.exp(lj) for lj in head) + (last * cmath.exp(-shift / an),)


def covering_preimage(alpha, z) -> Point:
    """Principal-branch preimage of z under covering_map."""
    alpha = as_alpha(alpha)
    z = as_point(z)
    _positive_alpha(alpha)
    if len(z) != len(alpha):
        raise DimensionMismatch("alpha and point differ in length")
    if any(w == 0 for w in z[:-1]):
        raise DomainViolation("covering preimage needs z_1, .., z_{n-1} nonzero")
    if log_abs_monomial(alpha.entries, z) >= 0:
        raise DomainViolation(f"{z} is not in D_alpha")
    head = [cmath.log(w) for w in z[:-1]]
    an = alpha.entries[-1]
    shift = sum(aj * lj for aj, lj in zip(alpha.entries[:-1], head))
    return tuple(head) + (z[-1] * cmath.exp(shift / an),)


# -- the full reduction with an audit trail ----------------------------------


@dataclass(frozen=True)
class SplitZeros:
    kept: tuple[int, ...]
    dropped: tuple[int, ...]


@dataclass(frozen=True)
class InvertNegatives:
    indices: tuple[int, ...]


@dataclass(frozen=True)
class Rotate:
    thetas: tuple[float, ...]


@dataclass(frozen=True)
class Permute:
    order: tuple[int, ...]


@dataclass(frozen=True)
class Rescale:
    factor: float


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple = ()
    # base-point values on the dropped C^(n-s) factor, used to lift points back
    fill: tuple[complex, ...] = field(default=())
    n_original: int = 0

    def apply(self, alpha, p) -> tuple[ExponentVector, Point]:
        """Replay every step on (alpha, p)."""
        alpha = as_alpha(alpha)
        p = as_point(p)
        for step in self.steps:
            if isinstance(step, SplitZeros):
                alpha = _subvector(alpha, step.kept)
                p = tuple(p[j] for j in step.kept)
            elif isinstance(step, InvertNegatives):
                alpha, p = invert_negative_exponents(alpha, p)
            elif isinstance(step, Rotate):
                p = rotate(p, step.thetas)
            elif isinstance(step, Permute):
                alpha = _subvector(alpha, step.order)
                p = tuple(p[j] for j in step.order)
            elif isinstance(step, Rescale):
                alpha = alpha.scaled(step.factor)
        return alpha, p

    def lift(self, p) -> Point:
        """Map a point of the reduced system back to original coordinates."""
        p = as_point(p)
        for step in reversed(self.steps):
            if isinstance(step, Permute):
                q = [0j] * len(p)
                for dst, src in enumerate(step.order):
                    q[src] = p[dst]
                p = tuple(q)
            elif isinstance(step, Rotate):
                p = rotate(p, [-t for t in step.thetas])
            elif isinstance(step, InvertNegatives):
                p = tuple(1 / w if j in step.indices else w for j, w in enumerate(p))
            elif isinstance(step, SplitZeros):
                q = [0j] * (len(step.kept) + len(step.dropped))
                for src, dst in enumerate(step.kept):
                    q[dst] = p[src]
                for w, dst in zip(self.fill, step.dropped):
                    q[dst] = w
                p = tuple(q)
        return p


@dataclass(frozen=True)
class ReducedSystem:
    alpha: ExponentVector
    a: Point
    points: tuple[Point, ...]
    trace: ReductionTrace


def reduce_system(alpha, a, points: Sequence = (), normalize: bool = True) -> ReducedSystem:
    """Carry (alpha, a, points) to the canonical all-positive form.

    Steps: drop zero exponents, invert negative ones, rotate a onto the
    nonnegative reals, and (if ``normalize`` and sigma(a) >= 1) sort the
    vanishing coordinates of a to the end with the smallest exponent last,
    then rescale alpha so that exponent equals 1.
    """
    alpha = as_alpha(alpha)
    a = as_point(a)
    pts = [as_point(p) for p in points]
    steps = []
    fill: tuple[complex, ...] = ()

    keep = tuple(j for j, x in enumerate(alpha.entries) if x != 0)
    if len(keep) < len(alpha):
        dropped = tuple(j for j in range(len(alpha)) if j not in keep)
        steps.append(SplitZeros(keep, dropped))
        fill = tuple(a[j] for j in dropped)
    neg_after = [i for i, j in enumerate(keep) if alpha.entries[j] < 0]
    if neg_after:
        steps.append(InvertNegatives(tuple(neg_after)))

    trace = ReductionTrace(tuple(steps), fill, len(alpha))
    alpha_r, a_r = trace.apply(alpha, a)
    thetas = tuple(-cmath.phase(w) if w != 0 else 0.0 for w in a_r)
    if any(t != 0 for t in thetas):
        steps.append(Rotate(thetas))
        a_r = rotate(a_r, thetas)

    if normalize:
        vanish = [j for j, w in enumerate(a_r) if w == 0]
        if vanish:
            ent = alpha_r.entries
            nonvanish = [j for j in range(len(ent)) if a_r[j] != 0]
            # vanishing coordinates last, largest exponent first so the minimum ends up at n
            order = tuple(nonvanish + sorted(vanish, key=lambda j: (-ent[j], j)))
            if order != tuple(range(len(ent))):
                steps.append(Permute(order))
            if alpha_r.exact is not None:
                mu = min(alpha_r.exact[j] for j in vanish)
                factor = 1 / mu
            else:
                mu = min(ent[j] for j in vanish)
                factor = 1.0 / mu
            if mu != 1:
                steps.append(Rescale(factor))

    trace = ReductionTrace(tuple(steps), fill, len(alpha))
    alpha_final, a_final = trace.apply(alpha, a)
    pts_final = tuple(trace.apply(alpha, p)[1] for p in pts)
    return ReducedSystem(alpha_final, a_final, pts_final, trace)
