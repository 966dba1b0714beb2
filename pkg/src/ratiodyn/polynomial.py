"""Real univariate polynomials with robust real-root isolation.

Coefficients are stored in ascending degree order, so ``Polynomial([d, c, b, a])``
is ``d + c*t + b*t**2 + a*t**3``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = [
    "Polynomial",
    "RootIsolationError",
    "real_roots_in",
    "real_roots_flagged",
]


class RootIsolationError(Exception):
    """Raised when two sign changes cannot be separated at the requested tolerance."""


def _strip(coeffs):
    c = list(coeffs)
    while len(c) > 1 and c[-1] == 0.0:
        c.pop()
    return c


@dataclass(frozen=True)
class Polynomial:
    coeffs: tuple = field(default=(0.0,))

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", tuple(float(x) for x in _strip(coeffs)))

    @property
    def degree(self):
        if len(self.coeffs) == 1 and self.coeffs[0] == 0.0:
            return -1  # zero polynomial
        return len(self.coeffs) - 1

    def is_zero(self):
        return self.degree < 0

    def __call__(self, t: float) -> float:
        # Horner scheme, highest degree first
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def derivative(self) -> "Polynomial":
        if len(self.coeffs) == 1:
            return Polynomial([0.0])
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Polynomial([other * c for c in self.coeffs])
        out = [0.0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ci in enumerate(self.coeffs):
            for j, cj in enumerate(other.coeffs):
                out[i + j] += ci * cj
        return Polynomial(out)

    __rmul__ = __mul__

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0.0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0.0] * (n - len(other.coeffs))
        return Polynomial([x + y for x, y in zip(a, b)])

    def __sub__(self, other):
        return self + (-1.0) * other

    def shift(self, k: int) -> "Polynomial":
        """Multiply by t**k."""
        return Polynomial([0.0] * k + list(self.coeffs))

    def divide(self, q: "Polynomial"):
        """Synthetic long division: returns (quotient, remainder) with
        self = q * quotient + remainder and deg(remainder) < deg(q)."""
        if q.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        qd = q.degree
        qc = q.coeffs
        if len(rem) - 1 < qd:
            return Polynomial([0.0]), Polynomial(rem)
        quot = [0.0] * (len(rem) - qd)
        for k in range(len(rem) - 1, qd - 1, -1):
            f = rem[k] / qc[qd]
            quot[k - qd] = f
            for j in range(qd + 1):
                rem[k - qd + j] -= f * qc[j]
        return Polynomial(quot), Polynomial(rem[:qd])

    def cauchy_bound(self) -> float:
        """All real roots lie in (-B, B) with B = 1 + max |c_i / c_n|."""
        lead = self.coeffs[-1]
        if lead == 0.0:
            return 1.0
        return 1.0 + max(abs(c / lead) for c in self.coeffs[:-1])

    def max_abs_coeff(self) -> float:
        return max(abs(c) for c in self.coeffs)


def _bisect(p, lo, hi, tol):
    flo = p(lo)
    if flo == 0.0:
        return lo
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol * max(1.0, abs(mid)):
            return mid
        fm = p(mid)
        if fm == 0.0:
            return mid
        if (flo < 0.0) != (fm < 0.0):
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def _newton_polish(p, dp, r, lo, hi):
    # bisection stops at a relative tol; a few Newton steps take a simple
    # root the rest of the way to machine precision
    for _ in range(3):
        d = dp(r)
        if d == 0.0:
            break
        step = p(r) / d
        rn = r - step
        if not lo <= rn <= hi:
            break
        r = rn
        if step == 0.0:
            break
    return r


def _scale_at(p, x):
    ax, s, t = abs(x), 0.0, 1.0
    for c in p.coeffs:
        s += abs(c) * t
        t *= ax
    return max(s, 1.0)


def real_roots_flagged(p: Polynomial, lo: float, hi: float, tol: float = 1e-9):
    """All real roots of p in (lo, hi) as (root, simple) pairs, ascending.

    Roots of the derivative partition (lo, hi) into intervals on which p is
    monotone; each monotone interval holds at most one root, bracketed by a
    sign change and polished by bisection.  A derivative root where |p| falls
    below the evaluation noise floor is reported as a non-simple root (even
    multiplicity: no sign change to bracket).
    """
    if not lo < hi:
        raise ValueError("need lo < hi")
    if tol <= 0.0:
        raise ValueError("need tol > 0")
    if math.isinf(hi):
        hi = p.cauchy_bound()
        if hi <= lo:
            return []
    if math.isinf(lo):
        lo = -p.cauchy_bound()
        if hi <= lo:
            return []
    deg = p.degree
    if deg <= 0:
        return []
    if deg == 1:
        r = -p.coeffs[0] / p.coeffs[1]
        return [(r, True)] if lo < r < hi else []

    dp = p.derivative()
    crit = [r for r, _ in real_roots_flagged(dp, lo, hi, tol)]
    pts = [lo] + crit + [hi]
    roots = []
    for a, b in zip(pts, pts[1:]):
        if b - a <= tol * max(1.0, abs(a), abs(b)):
            # two critical points closer than the resolution: signs next to a
            # potential root in between cannot be trusted
            if abs(p(0.5 * (a + b))) <= 1e-9 * _scale_at(p, 0.5 * (a + b)):
                raise RootIsolationError(
                    f"cannot separate roots near {0.5 * (a + b)!r} at tol={tol!r}"
                )
            continue
        fa, fb = p(a), p(b)
        if (fa < 0.0) != (fb < 0.0):
            r = _newton_polish(p, dp, _bisect(p, a, b, tol), a, b)
            if lo < r < hi:
                roots.append((r, True))
    # even-multiplicity roots sit at critical points without a sign change
    for x in crit:
        if abs(p(x)) <= 1e-9 * _scale_at(p, x):
            if not any(abs(x - r) <= 10.0 * tol * max(1.0, abs(x)) for r, _ in roots):
                roots.append((x, False))
    roots.sort(key=lambda rs: rs[0])
    return roots


def real_roots_in(p: Polynomial, lo: float, hi: float, tol: float = 1e-9):
    """Sorted real roots of p in (lo, hi), including even-multiplicity ones."""
    return [r for r, _ in real_roots_flagged(p, lo, hi, tol)]
