"""Exponent vectors, rational/irrational classification and membership in D_alpha."""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    DomainViolation,
    InvalidExponent,
    NotInDomain,
    NotRationalType,
    ParseError,
)
from .numerics import NEG_INF, check_finite, log_abs_monomial

DEFAULT_MAX_DENOMINATOR = 10**6
DEFAULT_TOLERANCE = 1e-12

Point = tuple[complex, ...]

_INT_RE = re.compile(r"[+-]?\d+")
_FRAC_RE = re.compile(r"[+-]?\d+/\d+")
_DEC_RE = re.compile(r"[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")


@dataclass(frozen=True)
class ExponentVector:
    """A nonzero real exponent vector alpha.

    ``exact`` holds the entries as fractions when every entry was given as an
    integer or an integer ratio; classification then skips float detection.
    """

    entries: tuple[float, ...]
    exact: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        entries = tuple(float(x) for x in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) == 0:
            raise InvalidExponent("empty exponent vector")
        if not all(math.isfinite(x) for x in entries):
            raise InvalidExponent(f"non-finite exponent in {entries}")
        if all(x == 0 for x in entries):
            raise InvalidExponent("exponent vector is identically zero")
        if self.exact is not None:
            if len(self.exact) != len(entries):
                raise InvalidExponent("exact entries do not match float entries")
            object.__setattr__(self, "exact", tuple(Fraction(x) for x in self.exact))

    @classmethod
    def from_exact(cls, values: Iterable) -> "ExponentVector":
        fr = tuple(Fraction(v) for v in values)
        return cls(tuple(float(f) for f in fr), fr)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def scaled(self, t: float | Fraction) -> "ExponentVector":
        if not t > 0:
            raise InvalidExponent("scale factor must be positive")
        if self.exact is not None and isinstance(t, (int, Fraction)):
            return ExponentVector.from_exact(Fraction(t) * x for x in self.exact)
        return ExponentVector(tuple(float(t) * x for x in self.entries))

    def sign_pattern(self) -> tuple[int, ...]:
        return tuple((x > 0) - (x < 0) for x in self.entries)


def as_alpha(alpha) -> ExponentVector:
    if isinstance(alpha, ExponentVector):
        return alpha
    if isinstance(alpha, str):
        return parse_alpha(alpha)
    values = list(alpha)
    if values and all(isinstance(v, (int, Fraction)) and not isinstance(v, bool) for v in values):
        return ExponentVector.from_exact(values)
    return ExponentVector(tuple(values))


def as_point(z) -> Point:
    if isinstance(z, str):
        return parse_point(z)
    return tuple(check_finite(w) for w in z)


def parse_alpha(spec: str) -> ExponentVector:
    """Parse ``"3/2,1,-2"``-style input: each entry INT, INT/INT or a decimal literal."""
    tokens = [t.strip() for t in spec.split(",")]
    floats = []
    exact = []
    all_exact = True
    for tok in tokens:
        if _INT_RE.fullmatch(tok):
            fr = Fraction(int(tok))
        elif _FRAC_RE.fullmatch(tok):
            num, den = tok.split("/")
            if int(den) == 0:
                raise ParseError(f"zero denominator in exponent token {tok!r}", tok)
            fr = Fraction(int(num), int(den))
        elif _DEC_RE.fullmatch(tok):
            fr = None
            all_exact = False
        else:
            raise ParseError(f"cannot parse exponent token {tok!r}", tok)
        floats.append(float(tok) if fr is None else float(fr))
        exact.append(fr)
    try:
        return ExponentVector(tuple(floats), tuple(exact) if all_exact else None)
    except InvalidExponent as exc:
        raise ParseError(str(exc), spec) from exc


_COMPLEX_RE = re.compile(
    r"""(?P<re>[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)?
        (?P<im>[+-]?((\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)?[ij])?""",
    re.VERBOSE,
)


_IMAG_RE = re.compile(r"(?P<im>[+-]?((\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)?[ij])")


def parse_complex(tok: str) -> complex:
    tok = tok.strip().replace(" ", "")
    m = _IMAG_RE.fullmatch(tok) or _COMPLEX_RE.fullmatch(tok)
    if not tok or m is None or (m.groupdict().get("re") is None and m.group("im") is None):
        raise ParseError(f"cannot parse complex literal {tok!r}", tok)
    re_part = float(m.group("re")) if m.groupdict().get("re") else 0.0
    im_part = 0.0
    if m.group("im"):
        body = m.group("im")[:-1]
        im_part = float(body + "1") if body in ("", "+", "-") else float(body)
    w = complex(re_part, im_part)
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise ParseError(f"non-finite complex literal {tok!r}", tok)
    return w


def parse_point(spec: str) -> Point:
    """Parse comma-separated complex literals such as ``"0.5+0.1i,0.3"``."""
    return tuple(parse_complex(t) for t in spec.split(","))


# -- best rational approximation ---------------------------------------------


def best_rational(x: Fraction, max_denominator: int) -> Fraction:
    """Closest fraction p/q to x with 1 <= q <= max_denominator.

    Walks the continued fraction of x; once the next convergent would exceed
    the bound, the best semiconvergent competes with the last convergent.
    """
    x = Fraction(x)
    if x.denominator <= max_denominator:
        return x
    p0, q0, p1, q1 = 0, 1, 1, 0
    n, d = x.numerator, x.denominator
    while True:
        a = n // d
        q2 = q0 + a * q1
        if q2 > max_denominator:
            break
        p0, q0, p1, q1 = p1, q1, p0 + a * p1, q2
        n, d = d, n - a * d
    k = (max_denominator - q0) // q1
    semi = Fraction(p0 + k * p1, q0 + k * q1)
    conv = Fraction(p1, q1)
    return conv if abs(conv - x) <= abs(semi - x) else semi


# -- classification ----------------------------------------------------------


class TypeKind(enum.Enum):
    RATIONAL = "rational"
    IRRATIONAL = "irrational"


@dataclass(frozen=True)
class TypeClassification:
    kind: TypeKind
    primitive: tuple[int, ...] | None = None
    scale: float | None = None

    @property
    def is_rational(self) -> bool:
        return self.kind is TypeKind.RATIONAL

    def to_json(self) -> dict:
        if not self.is_rational:
            return {"kind": self.kind.value}
        scale = self.scale
        if float(scale).is_integer():
            scale = int(scale)
        return {"kind": self.kind.value, "primitive": list(self.primitive), "scale": scale}


def _gcd_all(values: Iterable[int]) -> int:
    return reduce(math.gcd, (abs(v) for v in values), 0)


def _primitive_from_exact(exact: Sequence[Fraction]) -> TypeClassification:
    lcm = reduce(lambda acc, f: acc * f.denominator // math.gcd(acc, f.denominator), exact, 1)
    ints = [int(f * lcm) for f in exact]
    g = _gcd_all(ints)
    primitive = tuple(v // g for v in ints)
    k = max(range(len(exact)), key=lambda j: abs(exact[j]))
    scale = Fraction(primitive[k]) / exact[k]
    return TypeClassification(TypeKind.RATIONAL, primitive, float(scale))


def _detect(alpha: ExponentVector, max_denominator: int, tolerance: float) -> TypeClassification:
    entries = alpha.entries
    k = max(range(len(entries)), key=lambda j: abs(entries[j]))
    pivot = entries[k]
    approx = []
    for x in entries:
        if x == 0:
            approx.append(Fraction(0))
            continue
        ratio = x / pivot
        frac = best_rational(Fraction(ratio), max_denominator)
        if abs(float(frac) - ratio) > tolerance:
            return TypeClassification(TypeKind.IRRATIONAL)
        approx.append(frac)
    cls = _primitive_from_exact(approx)
    # primitive_k has the sign of 1 (ratio at the pivot); restore the pivot's sign
    sign = 1 if pivot > 0 else -1
    primitive = tuple(sign * v for v in cls.primitive)
    t = primitive[k] / pivot
    # global consistency: t * alpha must land on the integer lattice, up to the
    # tolerance or the representation error of the entries themselves
    for x, p in zip(entries, primitive):
        slack = max(tolerance, 8 * math.ulp(max(abs(p), 1.0)))
        if abs(t * x - p) > slack:
            return TypeClassification(TypeKind.IRRATIONAL)
    return TypeClassification(TypeKind.RATIONAL, primitive, t)


def classify(
    alpha,
    max_denominator: int = DEFAULT_MAX_DENOMINATOR,
    tolerance: float = DEFAULT_TOLERANCE,
) -> TypeClassification:
    """Decide whether alpha lies in R * Z^n.

    Exactly given inputs (integers and integer ratios) are normalized exactly.
    Float inputs are tested against a denominator bound: each ratio
    alpha_j / alpha_k to the largest-magnitude entry must have a best rational
    approximation with denominator <= max_denominator within ``tolerance``,
    and the common rescaling must put every entry on the integer lattice.
    """
    alpha = as_alpha(alpha)
    if max_denominator < 1:
        raise ValueError("max_denominator must be >= 1")
    if not tolerance > 0:
        raise ValueError("tolerance must be positive")
    if alpha.exact is not None:
        return _primitive_from_exact(alpha.exact)
    return _detect(alpha, max_denominator, tolerance)


def normalize_rational(alpha, max_denominator: int = DEFAULT_MAX_DENOMINATOR,
                       tolerance: float = DEFAULT_TOLERANCE) -> tuple[int, ...]:
    cls = classify(alpha, max_denominator, tolerance)
    if not cls.is_rational:
        raise NotRationalType(f"{as_alpha(alpha).entries} is of irrational type")
    return cls.primitive


# -- membership --------------------------------------------------------------


def _check_dims(alpha: ExponentVector, z: Sequence) -> None:
    if len(alpha) != len(z):
        raise DimensionMismatch(f"alpha has length {len(alpha)} but point has length {len(z)}")


def member_ambient(alpha, z) -> bool:
    """z in C^n(alpha): no zero coordinate where alpha_j < 0."""
    alpha = as_alpha(alpha)
    z = as_point(z)
    _check_dims(alpha, z)
    return all(not (aj < 0 and zj == 0) for aj, zj in zip(alpha, z))


def member_domain(alpha, z) -> bool:
    alpha = as_alpha(alpha)
    z = as_point(z)
    if not member_ambient(alpha, z):
        return False
    return log_abs_monomial(alpha.entries, z) < 0


def require_in_domain(alpha, z, label: str = "point") -> Point:
    """Return z as a Point or raise NotInDomain naming the failed condition."""
    alpha = as_alpha(alpha)
    z = as_point(z)
    _check_dims(alpha, z)
    if not member_ambient(alpha, z):
        raise NotInDomain(f"{label} {z} is not in C^n(alpha): zero coordinate at a negative exponent",
                          reason="ambient")
    if log_abs_monomial(alpha.entries, z) >= 0:
        raise NotInDomain(f"{label} {z} violates |z^alpha| < 1", reason="modulus")
    return z


# -- the domain itself -------------------------------------------------------


@dataclass(frozen=True)
class ReinhardtDomain:
    """D_alpha together with its type classification.

    ``working_alpha`` is what the metric formulas consume: the primitive integer
    vector for rational type, the raw entries otherwise.
    """

    alpha: ExponentVector
    classification: TypeClassification
    max_denominator: int = field(default=DEFAULT_MAX_DENOMINATOR, compare=False)
    tolerance: float = field(default=DEFAULT_TOLERANCE, compare=False)
    forced: str = field(default="auto", compare=False)

    @classmethod
    def build(cls, alpha, type: str = "auto", max_denominator: int = DEFAULT_MAX_DENOMINATOR,
              tolerance: float = DEFAULT_TOLERANCE) -> "ReinhardtDomain":
        alpha = as_alpha(alpha)
        if type == "irrational":
            c = TypeClassification(TypeKind.IRRATIONAL)
        elif type in ("auto", "rational"):
            c = classify(alpha, max_denominator, tolerance)
            if type == "rational" and not c.is_rational:
                # undo the denominator bound: a float is an exact dyadic rational
                c = _primitive_from_exact([Fraction(x) for x in alpha.entries])
        else:
            raise ValueError(f"unknown type override {type!r}")
        return cls(alpha, c, max_denominator, tolerance, type)

    @property
    def n(self) -> int:
        return self.alpha.n

    @property
    def is_rational(self) -> bool:
        return self.classification.is_rational

    @property
    def working_alpha(self) -> tuple[float, ...]:
        if self.is_rational:
            return tuple(self.classification.primitive)
        return self.alpha.entries

    def rescaled(self, t) -> "ReinhardtDomain":
        """D_{t alpha}, classified with the same parameters and override."""
        return ReinhardtDomain.build(self.alpha.scaled(t), self.forced, self.max_denominator, self.tolerance)

    def contains(self, z) -> bool:
        return member_domain(self.alpha, z)


__all__ = [
    "DEFAULT_MAX_DENOMINATOR", "DEFAULT_TOLERANCE", "ExponentVector", "Point", "ReinhardtDomain",
    "TypeClassification", "TypeKind", "as_alpha", "as_point", "best_rational", "classify",
    "member_ambient", "member_domain", "normalize_rational", "parse_alpha", "parse_complex",
    "parse_point", "require_in_domain", "NEG_INF", "DomainViolation",
]
