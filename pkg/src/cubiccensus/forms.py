"""Integral binary cubic forms and their GL2(Z) reduction theory.

A form f = (a, b, c, d) stands for a*u^3 + b*u^2*v + c*u*v^2 + d*v^3.
The group acts by (g . f)(u, v) = f((u, v) @ g) / det(g); classes of
nondegenerate forms correspond to cubic rings.  Every class is assigned
a unique canonical representative (``reduce``); positive-discriminant
forms are reduced through their Hessian, negative ones through the
unique real root of f(x, 1).
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterator, NamedTuple

COEFF_BOUND = 1 << 20
DISC_BOUND = 10**8


class CoefficientRangeError(ValueError):
    """A coefficient or discriminant exceeded the supported range."""


class DegenerateFormError(ValueError):
    """Operation requires a nonzero discriminant."""


class CubicForm(NamedTuple):
    a: int
    b: int
    c: int
    d: int

    def __neg__(self):
        return CubicForm(-self.a, -self.b, -self.c, -self.d)


Matrix = tuple[int, int, int, int]  # (r, s, t, u) rows (r, s) and (t, u)


def discriminant(f) -> int:
    a, b, c, d = f
    return (
        18 * a * b * c * d
        + b * b * c * c
        - 4 * a * c**3
        - 4 * b**3 * d
        - 27 * a * a * d * d
    )


def content(f) -> int:
    a, b, c, d = f
    return math.gcd(math.gcd(abs(a), abs(b)), math.gcd(abs(c), abs(d)))


def check_range(f) -> CubicForm:
    """Enforce the documented coefficient and discriminant bounds."""
    f = CubicForm(*f)
    if max(abs(t) for t in f) > COEFF_BOUND:
        raise CoefficientRangeError(f"coefficient out of range in {f}")
    if abs(discriminant(f)) > DISC_BOUND:
        raise CoefficientRangeError(f"discriminant out of range for {f}")
    return f


def act(g: Matrix, f) -> CubicForm:
    """Apply g = ((r, s), (t, u)) with det +-1; (g.f)(u,v) = f((u,v)g)/det."""
    r, s, t, u = g
    det = r * u - s * t
    if det not in (1, -1):
        raise ValueError(f"matrix {g} is not unimodular")
    a, b, c, d = f
    a2 = a * r**3 + b * r * r * s + c * r * s * s + d * s**3
    b2 = (
        3 * a * r * r * t
        + b * (r * r * u + 2 * r * s * t)
        + c * (2 * r * s * u + s * s * t)
        + 3 * d * s * s * u
    )
    c2 = (
        3 * a * r * t * t
        + b * (s * t * t + 2 * r * t * u)
        + c * (r * u * u + 2 * s * t * u)
        + 3 * d * s * u * u
    )
    d2 = a * t**3 + b * t * t * u + c * t * u * u + d * u**3
    if det == 1:
        return CubicForm(a2, b2, c2, d2)
    return CubicForm(-a2, -b2, -c2, -d2)


def hessian(f) -> tuple[int, int, int]:
    """Quadratic covariant (P, Q, R); its discriminant is -3 Disc(f)."""
    a, b, c, d = f
    return (b * b - 3 * a * c, b * c - 9 * a * d, c * c - 3 * b * d)


def _divisors(n: int) -> Iterator[int]:
    n = abs(n)
    i = 1
    while i * i <= n:
        if n % i == 0:
            yield i
            if i != n // i:
                yield n // i
        i += 1


def is_irreducible(f) -> bool:
    """True iff f has no rational linear factor (so f(x,1) is an irreducible cubic)."""
    a, b, c, d = f
    if a == 0:
        return False  # v divides f
    if d == 0:
        return False  # u divides f
    for q in _divisors(a):
        for p in _divisors(d):
            if a * p**3 + b * p * p * q + c * p * q * q + d * q**3 == 0:
                return False
            if -a * p**3 + b * p * p * q - c * p * q * q + d * q**3 == 0:
                return False
    return True


def has_square_disc(f) -> bool:
    disc = discriminant(f)
    if disc <= 0:
        return False
    r = math.isqrt(disc)
    return r * r == disc


# ---------------------------------------------------------------------------
# Canonical reduction.
#
# Domain for Disc > 0: a > 0 (or a == 0, b > 0) with the Hessian (P, Q, R)
# Gauss-reduced, |Q| <= P <= R.  Domain for Disc < 0: a > 0 and the complex
# root z of the quadratic factor of f(x,1)/(x - theta) in the classical
# strip |Re z| <= 1/2, |z| >= 1 (theta the unique real root); a == 0 forms
# use the root at infinity, giving |c| <= b, d >= b.  The canonical
# representative minimises the key (a, -b, c, -d) over all domain
# representatives of the class.


def _key(f):
    a, b, c, d = f
    return (a, -b, c, -d)


def _domain_tests_neg(f):
    """Exact boundary data for the Disc < 0 domain with a > 0.

    Returns (F1, F2, ok_q, eq_q): p <= 1 iff F1 >= 0, p >= -1 iff F2 <= 0,
    q >= 1 iff ok_q, q == 1 iff eq_q.  All integer arithmetic; the real
    root theta never needs to be isolated numerically.
    """
    a, b, c, d = f
    # theta <= r  iff  f(r) >= 0, applied at r = (a - b)/a and -(a + b)/a
    f1 = a * (a - b) ** 3 + b * (a - b) ** 2 * a + c * (a - b) * a * a + d * a**3
    f2 = -a * (a + b) ** 3 + b * (a + b) ** 2 * a - c * (a + b) * a * a + d * a**3
    # q >= 1 iff g(theta) >= 0 for g = a x^2 + b x + (c - a); f mod g = a x + d,
    # so the signs of f at the roots of g reduce to t^2 vs Delta.
    delta = b * b - 4 * a * (c - a)
    t = 2 * d - b
    ok_q = delta < 0 or t * t >= delta
    eq_q = delta >= 0 and t * t == delta
    return f1, f2, ok_q, eq_q


def in_domain(f) -> bool:
    """Closed reduction-domain membership."""
    a, b, c, d = f
    disc = discriminant(f)
    if disc == 0:
        raise DegenerateFormError(f"degenerate form {f}")
    if a < 0 or (a == 0 and b <= 0):
        return False
    if disc > 0:
        p, q, r = hessian(f)
        return 0 < p and abs(q) <= p <= r
    if a == 0:
        return abs(c) <= b <= d
    f1, f2, ok_q, _ = _domain_tests_neg(f)
    return f1 >= 0 and f2 <= 0 and ok_q


def is_boundary(f) -> bool:
    """True if f sits on the reduction-domain boundary (extra identifications)."""
    a, b, c, d = f
    disc = discriminant(f)
    if disc > 0:
        p, q, r = hessian(f)
        return abs(q) == p or p == r
    if a == 0:
        return abs(c) == b or d == b
    f1, f2, _, eq_q = _domain_tests_neg(f)
    return f1 == 0 or f2 == 0 or eq_q


@lru_cache(maxsize=1)
def _small_matrices() -> tuple[Matrix, ...]:
    out = []
    rng = range(-2, 3)
    for r in rng:
        for s in rng:
            for t in rng:
                for u in rng:
                    if r * u - s * t in (1, -1):
                        out.append((r, s, t, u))
    return tuple(out)


def _real_root_float(a, b, c, d) -> float:
    """Unique real root of a x^3 + b x^2 + c x + d (Disc < 0, a > 0)."""
    lo = -1.0 - max(abs(b), abs(c), abs(d)) / a
    hi = -lo
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if a * mid**3 + b * mid * mid + c * mid + d >= 0:
            hi = mid
        else:
            lo = mid
        if hi - lo < 1e-12 * max(1.0, abs(hi)):
            break
    return 0.5 * (lo + hi)


_T = lambda k: (1, 0, k, 1)  # translation x -> x + k on f(x, 1)
_S: Matrix = (0, 1, -1, 0)  # inversion z -> -1/z


def _reduce_pos(f) -> CubicForm:
    while True:
        if f.a < 0 or (f.a == 0 and f.b < 0):
            f = -f
        p, q, r = hessian(f)
        if abs(q) > p:
            k = -((q + p) // (2 * p))
            f = act(_T(k), f)
        elif p > r:
            f = act(_S, f)
        else:
            return f


def _reduce_neg(f) -> CubicForm:
    for _ in range(10000):
        if f.a < 0 or (f.a == 0 and f.b < 0):
            f = -f
        a, b, c, d = f
        if a == 0:
            # p = c/b exactly; centre it, then invert if q = d/b < 1
            k = -((c + b) // (2 * b))
            if k:
                f = act(_T(k), f)
                continue
            if d >= b:
                return f
            f = act(_S, f)
            continue
        theta = _real_root_float(a, b, c, d)
        k = -round((b / a + theta) / 2.0)
        if k:
            f = act(_T(k), f)
            a, b, c, d = f
        # exact off-by-one correction of the translation
        while True:
            f1, f2, ok_q, _ = _domain_tests_neg(f)
            if f1 < 0:
                f = act(_T(-1), f)
            elif f2 > 0:
                f = act(_T(1), f)
            else:
                break
        if ok_q:
            return f
        f = act(_S, f)
    raise ArithmeticError(f"reduction failed to terminate for {f}")


def reduce(f) -> CubicForm:
    """Canonical class representative of f."""
    f = check_range(f)
    disc = discriminant(f)
    if disc == 0:
        raise DegenerateFormError(f"degenerate form {f}")
    f0 = _reduce_pos(f) if disc > 0 else _reduce_neg(f)
    if not is_boundary(f0):
        # interior: the only other domain representative is the mirror image
        a, b, c, d = f0
        if a == 0:
            cand = [f0, CubicForm(0, b, -c, d)]
        else:
            cand = [f0, CubicForm(a, -b, c, -d)]
        return min(cand, key=_key)
    best = None
    for g in _small_matrices():
        h = act(g, f0)
        if (h.a > 0 or (h.a == 0 and h.b > 0)) and in_domain(h):
            if best is None or _key(h) < _key(best):
                best = h
    assert best is not None
    return best


def stabilizer_order(f) -> int:
    """Order of the stabiliser of f in SL2(Z); always 1 or 3."""
    f = check_range(f)
    disc = discriminant(f)
    if disc == 0:
        raise DegenerateFormError(f"degenerate form {f}")
    f0 = _reduce_pos(f) if disc > 0 else _reduce_neg(f)
    n = sum(
        1
        for g in _small_matrices()
        if g[0] * g[3] - g[1] * g[2] == 1 and act(g, f0) == f0
    )
    assert n in (1, 3), (f, n)
    return n


def splits_in_two_sl2_classes(f) -> bool:
    """True if the GL2(Z) class of f is a union of two SL2(Z) classes."""
    f = check_range(f)
    disc = discriminant(f)
    if disc == 0:
        raise DegenerateFormError(f"degenerate form {f}")
    f0 = _reduce_pos(f) if disc > 0 else _reduce_neg(f)
    for g in _small_matrices():
        if g[0] * g[3] - g[1] * g[2] == -1 and act(g, f0) == f0:
            return False
    return True
