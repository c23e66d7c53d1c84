"""Independent reference computations used by the tests.

Nothing here imports the package: each function recomputes a quantity by the
most direct route available (plain products, brute force, mpmath).
"""

import math
from fractions import Fraction

import mpmath


def brute_best_rational(x: float, max_denominator: int) -> Fraction:
    """Closest p/q to x over every q <= max_denominator, ties to the smaller q."""
    xf = Fraction(x)
    n, d = xf.numerator, xf.denominator
    best_p, best_q = None, None
    for q in range(1, max_denominator + 1):
        p = (2 * n * q + d) // (2 * d)
        # compare |p/q - n/d| via integer cross-multiplication
        if best_q is None or abs(p * d - n * q) * best_q < abs(best_p * d - n * best_q) * q:
            best_p, best_q = p, q
    return Fraction(best_p, best_q)


def direct_abs_monomial(alpha, z) -> float:
    """|z_1|^a_1 ... |z_n|^a_n by a plain product in 50-digit arithmetic."""
    with mpmath.workdps(50):
        out = mpmath.mpf(1)
        for a, w in zip(alpha, z):
            if a == 0:
                continue
            out *= mpmath.fabs(mpmath.mpc(w)) ** mpmath.mpf(a)
        return float(out)


def direct_mobius(a: complex, z: complex) -> float:
    with mpmath.workdps(50):
        a = mpmath.mpc(a)
        z = mpmath.mpc(z)
        return float(mpmath.fabs((z - a) / (1 - mpmath.conj(a) * z)))


def direct_sibony_sigma_ge2(alpha, a, z) -> float:
    """|z^alpha|^(1/mu(a)) straight from the definitions, any signs/zeros allowed."""
    vanish = [x for x, w in zip(alpha, a) if x > 0 and w == 0]
    assert len(vanish) >= 2
    mu = min(vanish)
    with mpmath.workdps(50):
        out = mpmath.mpf(1)
        for x, w in zip(alpha, z):
            if x != 0:
                out *= mpmath.fabs(mpmath.mpc(w)) ** mpmath.mpf(x)
        return float(out ** (1 / mpmath.mpf(mu)))


def gcd_list(values) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, abs(int(v)))
    return g


def manual_reduce(alpha, z):
    """Drop zero exponents and invert the coordinates under negative ones."""
    out_alpha, out_z = [], []
    for x, w in zip(alpha, z):
        if x == 0:
            continue
        if x < 0:
            out_alpha.append(-x)
            out_z.append(1 / complex(w))
        else:
            out_alpha.append(x)
            out_z.append(complex(w))
    return out_alpha, out_z
