"""Seeded Monte-Carlo and finite-difference checks of the metric formulas.

Each check returns a VerificationReport. Reports are deterministic functions
of (domain, base point, seed, parameters): samples come from a seeded numpy
Generator and the worst-case witness is chosen by a fixed tie-break.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .domain import Point, ReinhardtDomain, as_point, member_domain, require_in_domain
from .errors import PreconditionViolation, SamplingExhausted
from .invariants import invariant_set
from .metrics import Evaluation, evaluate
from .numerics import NEG_INF, log_abs_monomial
from .reduction import covering_map, covering_preimage, reduce_system

DEFAULT_BAND = (1e-3, 1.0)


class Region(enum.Enum):
    FULL_DOMAIN = "full"
    OFF_V0 = "off_v0"
    NEAR_BASE_POINT = "near"


@dataclass(frozen=True)
class SampleSet:
    seed: int
    points: tuple[Point, ...]
    region: Region
    radius: float | None = None

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def _coordinate_band(alpha_j: float, band: tuple[float, float]) -> tuple[float, float]:
    lo, hi = band
    if alpha_j < 0:
        # a negative exponent needs |z_j| >= 1 to keep |z^alpha| < 1 reachable
        return 1.0 / hi, 1.0 / lo
    return lo, hi


def sample_points(
    domain: ReinhardtDomain,
    count: int,
    seed: int,
    region: Region | str = Region.OFF_V0,
    *,
    base=None,
    radius: float | None = None,
    band: tuple[float, float] = DEFAULT_BAND,
    zero_probability: float = 0.1,
    max_draws: int | None = None,
) -> SampleSet:
    """Rejection-sample ``count`` points of D_alpha in the requested region.

    Moduli are log-uniform in ``band`` (reciprocal band at negative exponents),
    phases uniform. FULL_DOMAIN additionally zeroes each coordinate with a
    nonnegative exponent with probability ``zero_probability``, so V_0 is
    visited. NEAR_BASE_POINT draws uniformly from the polydisc of ``radius``
    around ``base``.
    """
    region = Region(region)
    if count < 1:
        raise ValueError("count must be >= 1")
    alpha = domain.alpha.entries
    n = len(alpha)
    rng = np.random.default_rng(seed)
    if region is Region.NEAR_BASE_POINT:
        if base is None or radius is None or radius <= 0:
            raise ValueError("NEAR_BASE_POINT sampling needs a base point and a positive radius")
        base = require_in_domain(domain.alpha, base, "base point")
    bands = [_coordinate_band(x, band) for x in alpha]
    log_lo = np.array([math.log(b[0]) for b in bands])
    log_hi = np.array([math.log(b[1]) for b in bands])
    budget = max_draws if max_draws is not None else 1000 * count + 10_000

    points: list[Point] = []
    draws = 0
    while len(points) < count:
        if draws >= budget:
            raise SamplingExhausted(
                f"only {len(points)} of {count} points accepted after {draws} draws in region {region.value}")
        draws += 1
        phases = rng.uniform(0.0, 2 * math.pi, n)
        if region is Region.NEAR_BASE_POINT:
            moduli = radius * np.sqrt(rng.uniform(0.0, 1.0, n))
            z = tuple(complex(b) + cmath.rect(float(r), float(t)) for b, r, t in zip(base, moduli, phases))
        else:
            moduli = np.exp(rng.uniform(log_lo, log_hi))
            z = tuple(cmath.rect(float(r), float(t)) for r, t in zip(moduli, phases))
            if region is Region.FULL_DOMAIN:
                zero = rng.uniform(0.0, 1.0, n) < zero_probability
                z = tuple(0j if (zero[j] and alpha[j] >= 0) else z[j] for j in range(n))
        if region is Region.OFF_V0 and any(w == 0 for w in z):
            continue
        if member_domain(domain.alpha, z):
            points.append(z)
    return SampleSet(seed, tuple(points), region, radius)


# -- reports ------------------------------------------------------------------


def _point_json(p):
    if p is None:
        return None
    return [[w.real, w.imag] for w in p]


@dataclass
class VerificationReport:
    name: str
    seed: int | None
    count: int
    tolerance: float
    max_violation: float
    passed: bool
    witness: Point | None = None
    margin_min: float | None = None
    skipped: bool = False
    notes: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "seed": self.seed,
            "count": self.count,
            "tolerance": self.tolerance,
            "max_violation": _finite_or_str(self.max_violation),
            "margin_min": _finite_or_str(self.margin_min),
            "pass": self.passed,
            "witness": _point_json(self.witness),
        }
        if self.skipped:
            out["skipped"] = True
        if self.notes:
            out["notes"] = list(self.notes)
        if self.details:
            out["details"] = {k: _finite_or_str(v) for k, v in self.details.items()}
        return out


def _finite_or_str(x):
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    return x


def _key(p: Point):
    return tuple((w.real, w.imag) for w in p)


class _Worst:
    """Running maximum of a violation with a deterministic witness."""

    def __init__(self):
        self.value = 0.0
        self.witness: Point | None = None

    def update(self, violation: float, point: Point) -> None:
        if math.isnan(violation):
            violation = math.inf
        if violation > self.value or (
            violation == self.value and self.witness is not None and violation > 0 and _key(point) < _key(self.witness)
        ):
            self.value = violation
            self.witness = point


class _Min:
    def __init__(self):
        self.value: float | None = None

    def update(self, x: float) -> None:
        if self.value is None or x < self.value:
            self.value = x


def _report(name, seed, count, tol, worst: _Worst, **kw) -> VerificationReport:
    return VerificationReport(name, seed, count, tol, worst.value, worst.value <= tol, worst.witness, **kw)


# -- inequality chain -----------------------------------------------------------


def strict_regime(domain: ReinhardtDomain, a) -> str | None:
    """Which strict inequality chain holds off V_0 at base point a, if any."""
    inv = invariant_set(domain.working_alpha, a)
    if inv.sigma < 2:
        return None
    if not domain.is_rational:
        return "m<s"
    return "m=s<g" if inv.mu == 1 else "m<s<g"


def check_inequality_chain(domain: ReinhardtDomain, a, samples: SampleSet, tol: float = 1e-10) -> VerificationReport:
    """m <= s <= g at every sample, plus the strict chain of the base point's regime.

    Strict gaps are collected on samples off V_0 with z != a and reported as a
    minimum margin; only the non-strict legs (and m = s in the mu = 1 rational
    regime) count as violations.
    """
    a = require_in_domain(domain.alpha, a, "base point")
    regime = strict_regime(domain, a)
    worst = _Worst()
    margin = _Min()
    skipped_sg = 0
    for z in samples:
        ev = evaluate(domain, a, z)
        m, s, g = ev.m.value, ev.s.value, ev.g.value
        worst.update(m - s, z)
        if g is None:
            skipped_sg += 1
        else:
            worst.update(s - g, z)
        if regime == "m=s<g":
            worst.update(abs(m - s), z)
        if regime is None or z == a or any(w == 0 for w in z):
            continue
        if regime == "m=s<g":
            margin.update(g - s)
        elif regime == "m<s<g":
            margin.update(min(s - m, g - s))
        else:
            margin.update(s - m)
    notes = []
    if skipped_sg:
        notes.append(f"s <= g skipped at {skipped_sg} samples: Green function unknown")
    if regime is not None:
        notes.append(f"strict regime {regime}")
    rep = _report("chain", samples.seed, len(samples), tol, worst, margin_min=margin.value, notes=notes)
    rep.details["skipped_s_le_g"] = skipped_sg
    return rep


# -- invariances ---------------------------------------------------------------


def _eval_diff(e1: Evaluation, e2: Evaluation) -> float:
    worst = 0.0
    for x, y in ((e1.m, e2.m), (e1.g, e2.g), (e1.s, e2.s)):
        if x.known != y.known:
            return math.inf
        if x.known:
            worst = max(worst, abs(x.value - y.value))
    return worst


def check_invariances(
    domain: ReinhardtDomain,
    a,
    samples: SampleSet,
    tol: float = 1e-10,
    seed: int | None = None,
    scales: Sequence[float] = (0.5, 2.0),
) -> VerificationReport:
    """Rotation of (a, z) by a random angle vector and rescaling alpha -> t alpha
    must leave m, g and s unchanged."""
    a = require_in_domain(domain.alpha, a, "base point")
    rng = np.random.default_rng(samples.seed if seed is None else seed)
    scaled = [domain.rescaled(t) for t in scales]
    rot = _Worst()
    scl = _Worst()
    for z in samples:
        base = evaluate(domain, a, z)
        thetas = rng.uniform(0.0, 2 * math.pi, domain.n)
        ra = tuple(w * cmath.exp(1j * t) for w, t in zip(a, thetas))
        rz = tuple(w * cmath.exp(1j * t) for w, t in zip(z, thetas))
        rot.update(_eval_diff(base, evaluate(domain, ra, rz)), z)
        for d in scaled:
            scl.update(_eval_diff(base, evaluate(d, a, z)), z)
    worst = rot if rot.value >= scl.value else scl
    rep = _report("invariance", samples.seed, len(samples), tol, worst)
    rep.details.update(rotation_max=rot.value, scale_max=scl.value)
    return rep


# -- extremal candidate ----------------------------------------------------------


def _reduced_positive(domain: ReinhardtDomain, a, normalize: bool):
    a = require_in_domain(domain.alpha, a, "base point")
    inv = invariant_set(domain.working_alpha, a)
    if inv.sigma < 2:
        raise PreconditionViolation(f"check needs sigma(a) >= 2, got sigma(a) = {inv.sigma}")
    return reduce_system(domain.working_alpha, a, normalize=normalize), inv


def _second_difference(u, a: Point, v: Sequence[complex], h: float) -> float:
    plus = tuple(x + h * y for x, y in zip(a, v))
    minus = tuple(x - h * y for x, y in zip(a, v))
    return (u(plus) - 2 * u(a) + u(minus)) / (h * h)


def _c2_score(est: Sequence[float], rel: float) -> float:
    """<= 1 when the second differences have stabilized.

    The last two estimates must agree to ``rel`` relative, or the last
    increment must be at most half the previous one (geometric convergence,
    which is what a C^2 function with vanishing second derivative at a
    produces: D(h) ~ h^q with q > 0).
    """
    d_prev, d_last = est[-2], est[-1]
    step = abs(d_last - d_prev)
    if step == 0:
        return 0.0
    allowed = rel * max(abs(d_prev), abs(d_last))
    if len(est) >= 3:
        allowed = max(allowed, 0.5 * abs(d_prev - est[-3]))
    return math.inf if allowed == 0 else step / allowed


def check_extremal_candidate(
    domain: ReinhardtDomain,
    a,
    tol: float = 1e-6,
    step_schedule: Sequence[float] = (1e-2, 1e-3, 1e-4),
    *,
    h: float = 1e-3,
    seed: int = 0,
    count: int = 200,
    lines: int = 50,
    directions: int = 8,
    c2_rel: float = 0.01,
) -> VerificationReport:
    """Check that u(z) = |z^alpha|^(2/mu(a)) belongs to the Sibony class at a.

    (i) u(a) = 0; (ii) u < 1 on sampled points; (iii) log u has a nonnegative
    five-point Laplacian along random complex lines; (iv) second central
    differences of u at a stabilize along the step schedule (1% relative, or
    within ``tol`` absolutely when they tend to 0).
    """
    red, inv = _reduced_positive(domain, a, normalize=False)
    alpha = red.alpha.entries
    a_r = red.a
    # without normalization the reduction keeps |alpha_j|, so mu is unchanged
    power = 2.0 / float(inv.mu)

    def log_u(z):
        return power * log_abs_monomial(alpha, z)

    def u(z):
        lg = log_u(z)
        return 0.0 if lg == NEG_INF else math.exp(lg)

    sub = ReinhardtDomain.build(red.alpha, "irrational")
    rng = np.random.default_rng(seed)
    worst = _Worst()
    n = len(alpha)

    u_a = u(a_r)
    worst.update(math.inf if u_a != 0 else 0.0, a_r)

    full = sample_points(sub, count, seed, Region.FULL_DOMAIN)
    max_u = 0.0
    for z in full:
        uz = u(z)
        max_u = max(max_u, uz)
        worst.update(math.inf if uz >= 1 else 0.0, z)

    # (iii) line restrictions p + zeta w, scaled so every coordinate zero along the
    # line is at distance >= 4 from zeta = 0; the stencil then resolves log|.|
    off = sample_points(sub, lines, seed + 1, Region.OFF_V0)
    lap_min = math.inf
    skipped = 0
    weights = [power * abs(x) for x in alpha]
    for p in off:
        dirs = rng.normal(size=n) + 1j * rng.normal(size=n)
        dirs = dirs / np.linalg.norm(dirs)
        scale = min(abs(w) for w in p) / 4.0
        w = tuple(complex(d) * scale for d in dirs)
        zeta0 = cmath.rect(float(np.sqrt(rng.uniform())), float(rng.uniform(0, 2 * math.pi)))
        predicted = 0.0
        for c, pj, wj in zip(weights, p, w):
            if wj != 0:
                dist = abs(zeta0 + pj / wj)
                predicted += c * h * h / max(dist, h) ** 4
        if predicted > tol / 10:
            skipped += 1
            continue
        vals = []
        for step in (0, h, -h, 1j * h, -1j * h):
            pt = tuple(pj + (zeta0 + step) * wj for pj, wj in zip(p, w))
            vals.append(log_u(pt))
        if any(not math.isfinite(v) for v in vals):
            skipped += 1
            continue
        lap = (vals[1] + vals[2] + vals[3] + vals[4] - 4 * vals[0]) / (h * h)
        lap_min = min(lap_min, lap)
        worst.update(max(0.0, -lap), tuple(pj + zeta0 * wj for pj, wj in zip(p, w)))

    # (iv) C^2 at a: second differences along real coordinate axes and random real directions
    probe = []
    for j in range(n):
        for unit in (1.0, 1j):
            probe.append(tuple(unit if k == j else 0j for k in range(n)))
    for _ in range(directions):
        v = rng.normal(size=2 * n)
        v = v / np.linalg.norm(v)
        probe.append(tuple(complex(v[2 * k], v[2 * k + 1]) for k in range(n)))
    c2_max = 0.0
    for v in probe:
        est = [_second_difference(u, a_r, v, hk) for hk in step_schedule]
        score = _c2_score(est, c2_rel)
        c2_max = max(c2_max, score)
        worst.update(max(0.0, score - 1.0), v)

    notes = []
    if skipped:
        notes.append(f"{skipped} of {lines} line stencils skipped (unresolved singularity)")
    if skipped == lines:
        worst.update(math.inf, a_r)
        notes.append("no line stencil could be evaluated")
    rep = _report("extremal", seed, count, tol, worst, notes=notes)
    rep.details.update(u_at_a=u_a, max_u=max_u, laplacian_min=lap_min, c2_max_score=c2_max, power=power)
    return rep


# -- disc reduction -----------------------------------------------------------


def check_disc_reduction(
    domain: ReinhardtDomain,
    a,
    u_candidate: Callable[[Point], float] | None = None,
    tol: float = 1e-10,
    *,
    seed: int = 0,
    draws: int = 10,
    radii: int = 20,
    angles: int = 16,
) -> VerificationReport:
    """Pull a competitor u back through the covering map and compare with |zeta|^2.

    The system is first reduced so that alpha > 0, a >= 0 and the smallest
    exponent at a vanishing coordinate of a is the last one and equals 1.
    ``u_candidate`` is a function on the original coordinates of the domain;
    by default it is the extremal |z^alpha|^(2/mu(a)). Reports the largest
    v^2(zeta)/|zeta|^2 and the relative spread of v(zeta) over ``draws``
    random choices of lambda_1..lambda_{n-1}.
    """
    red, inv = _reduced_positive(domain, a, normalize=True)
    alpha = red.alpha.entries
    n = len(alpha)
    if u_candidate is None:
        def u_red(z):
            lg = 2.0 * log_abs_monomial(alpha, z)
            return 0.0 if lg == NEG_INF else math.exp(lg)
    else:
        def u_red(z):
            return u_candidate(red.trace.lift(z))

    rng = np.random.default_rng(seed)
    heads = [tuple(0j for _ in range(n - 1))]
    for _ in range(draws):
        heads.append(tuple(complex(x, y) for x, y in zip(rng.uniform(-1, 1, n - 1), rng.uniform(-math.pi, math.pi, n - 1))))

    ratio = _Worst()
    spread = _Worst()
    ratio_max = 0.0
    for i in range(1, radii + 1):
        r = i / (radii + 1)
        for k in range(angles):
            zeta = cmath.rect(r, 2 * math.pi * k / angles)
            vals = [math.sqrt(u_red(covering_map(alpha, head + (zeta,)))) for head in heads]
            v0 = vals[0]
            q = v0 * v0 / (r * r)
            ratio_max = max(ratio_max, q)
            ratio.update(max(0.0, q - 1.0), (zeta,))
            for v in vals[1:]:
                dev = 0.0 if v == v0 else abs(v - v0) / max(abs(v0), abs(v))
                spread.update(dev, (zeta,))
    worst = ratio if ratio.value >= spread.value else spread
    rep = _report("disc", seed, radii * angles, tol, worst)
    rep.details.update(ratio_max=ratio_max, lambda_spread=spread.value, mu=float(inv.mu))
    return rep


# -- covering identities -----------------------------------------------------------


def check_covering_identities(
    domain: ReinhardtDomain,
    samples: SampleSet,
    tol: float = 1e-12,
    roundtrip_tol: float = 1e-10,
    *,
    seed: int | None = None,
) -> VerificationReport:
    """|F(lambda)^alpha| = |lambda_n| in the log domain and F(F^-1(z)) = z.

    Zero and negative exponents are reduced away first and alpha is rescaled so
    its last entry is 1. Points with a vanishing leading coordinate are skipped.
    """
    base = tuple(1 + 0j for _ in range(domain.n))
    red = reduce_system(domain.working_alpha, base, [z for z in samples], normalize=False)
    alpha = red.alpha.scaled(1.0 / red.alpha.entries[-1]).entries
    rng = np.random.default_rng(samples.seed if seed is None else seed)
    ident = _Worst()
    trip = _Worst()
    skipped = 0
    n = len(alpha)
    for z in red.points:
        if any(w == 0 for w in z[:-1]):
            skipped += 1
            continue
        lam = covering_preimage(alpha, z)
        img = covering_map(alpha, lam)
        lg_img = log_abs_monomial(alpha, img)
        lg_lam = math.log(abs(lam[-1])) if lam[-1] != 0 else NEG_INF
        if lg_img == lg_lam:
            ident.update(0.0, z)
        else:
            ident.update(abs(lg_img - lg_lam), z)
        lg_z = log_abs_monomial(alpha, z)
        if lg_z != lg_lam:
            ident.update(abs(lg_z - lg_lam), z)
        rel = max(abs(x - y) / abs(y) if y != 0 else abs(x) for x, y in zip(img, z))
        trip.update(rel, z)
        # the same identity along the fibre through lambda = (0, .., 0, zeta)
        zeta = lam[-1] * cmath.exp(1j * float(rng.uniform(0, 2 * math.pi)))
        fib = covering_map(alpha, tuple(0j for _ in range(n - 1)) + (zeta,))
        if fib[:-1] != tuple(1 + 0j for _ in range(n - 1)) or fib[-1] != zeta:
            ident.update(math.inf, z)
    passed = ident.value <= tol and trip.value <= roundtrip_tol
    witness = ident.witness if ident.value > tol else trip.witness
    notes = [f"{skipped} samples skipped (vanishing leading coordinate)"] if skipped else []
    rep = VerificationReport("covering", samples.seed, len(samples), tol,
                             max(ident.value, trip.value / roundtrip_tol * tol), passed, witness, notes=notes)
    rep.details.update(identity_max=ident.value, roundtrip_max=trip.value, roundtrip_tolerance=roundtrip_tol)
    return rep


# -- suite runner ---------------------------------------------------------------------


SUITES = ("chain", "invariance", "extremal", "covering", "disc")


def run_suite(
    domain: ReinhardtDomain,
    a,
    suite: str = "all",
    seed: int = 0,
    count: int = 1000,
    tol: float | None = None,
) -> list[VerificationReport]:
    """Run one named check or all of them; ``all`` skips checks whose
    preconditions the base point does not meet."""
    a = require_in_domain(domain.alpha, a, "base point")
    names = SUITES if suite == "all" else (suite,)
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    sigma = invariant_set(domain.working_alpha, a).sigma
    reports = []
    samples = None
    for name in names:
        if name in ("extremal", "disc") and sigma < 2:
            if suite != "all":
                raise PreconditionViolation(f"suite {name!r} needs sigma(a) >= 2, got {sigma}")
            reports.append(VerificationReport(name, seed, 0, tol or 0.0, 0.0, True, skipped=True,
                                              notes=[f"skipped: sigma(a) = {sigma} < 2"]))
            continue
        if name in ("chain", "invariance", "covering") and samples is None:
            samples = sample_points(domain, count, seed, Region.OFF_V0)
        if name == "chain":
            reports.append(check_inequality_chain(domain, a, samples, 1e-10 if tol is None else tol))
        elif name == "invariance":
            reports.append(check_invariances(domain, a, samples, 1e-10 if tol is None else tol))
        elif name == "covering":
            reports.append(check_covering_identities(domain, samples, 1e-12 if tol is None else tol))
        elif name == "extremal":
            reports.append(check_extremal_candidate(domain, a, 1e-6 if tol is None else tol, seed=seed))
        elif name == "disc":
            reports.append(check_disc_reduction(domain, a, tol=1e-10 if tol is None else tol, seed=seed))
    return reports
