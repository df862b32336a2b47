"""Main and secondary term coefficients for cubic field and 3-torsion counts.

Every counting function handled here has the shape A*X + B*X^(5/6).  The A
coefficient is a product of local densities at s = 1; the B coefficient
couples zeta or Dirichlet L values at 1/3 and 5/3 with local densities at
s = 5/6.  Residue classes a mod m enter through sextic Dirichlet
characters, and class-group 3-torsion through a slowly convergent Euler
product which we accelerate with a prime zeta expansion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .characters import DirichletCharacter, enumerate_order6_characters, gauss_sum
from .enumeration import primes_up_to
from .lfunctions import dirichlet_l, gamma_value, riemann_zeta
from .localdata import Kind, LocalSpec, SplittingSymbol, _primitive_root, factorize

ZETA_13 = riemann_zeta(1 / 3)
ZETA_53 = riemann_zeta(5 / 3)
ZETA_3 = riemann_zeta(3)
GAMMA_23_CUBED = gamma_value(2 / 3) ** 3

# weights of the infinite place: positive vs negative discriminants
C_SIGN = {1: 1.0, -1: 3.0}
K_SIGN = {1: 1.0, -1: math.sqrt(3.0)}

# universal prefactors of the two terms
MAIN_FOLD = 1 / (12 * ZETA_3)
SECONDARY_FOLD = 4 / (5 * GAMMA_23_CUBED)
TORSION_SECONDARY_FOLD = 8 / (5 * GAMMA_23_CUBED)


@dataclass(frozen=True)
class PredictionTerms:
    """Coefficients of the two-term count A*X + B*X^(5/6)."""

    A: float
    B: float
    descriptor: str = ""

    def predicted(self, X: float) -> float:
        return self.A * X + self.B * X ** (5 / 6)


@dataclass(frozen=True)
class EulerProduct:
    value: complex
    tail_bound: float


def _check_sign(sign: int):
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")


def roberts_terms(sign: int) -> PredictionTerms:
    """Two-term count of all cubic fields by signed discriminant bound."""
    _check_sign(sign)
    A = C_SIGN[sign] * MAIN_FOLD
    B = K_SIGN[sign] * SECONDARY_FOLD * ZETA_13 / ZETA_53
    return PredictionTerms(A, B, f"cubic fields, sign {sign:+d}")


# ---------------------------------------------------------------------------
# Local densities.

# relative density multipliers for the wild ramified subtypes
_WILD_MULT = {
    2: {
        # partially ramified: quadratic discriminant 4 | D vs 8 | D
        (Kind.PARTIALLY_RAMIFIED, 1): 0.25,
        (Kind.PARTIALLY_RAMIFIED, 2): 0.25,
        (Kind.PARTIALLY_RAMIFIED, 3): 0.125,
        (Kind.PARTIALLY_RAMIFIED, 4): 0.125,
        (Kind.PARTIALLY_RAMIFIED, 5): 0.125,
        (Kind.PARTIALLY_RAMIFIED, 6): 0.125,
        (Kind.TOTALLY_RAMIFIED, 1): 1.0,
    },
    3: {
        (Kind.PARTIALLY_RAMIFIED, 1): 0.5,
        (Kind.PARTIALLY_RAMIFIED, 2): 0.5,
        (Kind.TOTALLY_RAMIFIED, 1): 1 / 3,
        (Kind.TOTALLY_RAMIFIED, 2): 1 / 3,
        (Kind.TOTALLY_RAMIFIED, 3): 1 / 9,
        (Kind.TOTALLY_RAMIFIED, 4): 1 / 27,
        (Kind.TOTALLY_RAMIFIED, 5): 1 / 27,
        (Kind.TOTALLY_RAMIFIED, 6): 1 / 27,
        (Kind.TOTALLY_RAMIFIED, 7): 1 / 27,
        (Kind.TOTALLY_RAMIFIED, 8): 1 / 27,
        (Kind.TOTALLY_RAMIFIED, 9): 1 / 27,
    },
}

_RAMIFIED = (Kind.PARTIALLY_RAMIFIED, Kind.TOTALLY_RAMIFIED)


def _subtype_range(kind: Kind, p: int) -> range:
    if kind is Kind.PARTIALLY_RAMIFIED:
        return range(1, 7) if p == 2 else range(1, 3)
    if kind is Kind.TOTALLY_RAMIFIED:
        if p == 3:
            return range(1, 10)
        return range(1, 4) if p % 3 == 1 else range(1, 2)
    return range(0, 1)


def _subtype_multiplier(kind: Kind, subtype: int, p: int) -> float:
    if kind not in _RAMIFIED:
        return 1.0
    if p in (2, 3):
        return _WILD_MULT[p][(kind, subtype)]
    if kind is Kind.PARTIALLY_RAMIFIED:
        return 0.5
    return 1 / 3 if p % 3 == 1 else 1.0


def normalizer(p: int, s, chi_value: complex = 1.0, torsion: bool = False) -> complex:
    """Sum of the local densities of the admissible splitting types."""
    if s == 1:
        return (1 + 1 / p) if torsion else (1 + 1 / p + 1 / p**2)
    w = chi_value
    x = p ** (-1 / 3)
    if torsion:
        return 1 + w * x + w * w * x * x + 2 / p + 2 * w * x / p + w * w * x * x / p
    return (1 - w * w * p ** (-5 / 3)) * (1 + 1 / p) / (1 - w * x)


def _local_component(chi: DirichletCharacter, p: int):
    """(chi_p, chi at p of the complementary part) for p | modulus."""
    comps = chi.group.components
    pk = math.prod(c.pk for c in comps if c.p == p)
    exps_p = tuple(e for e, c in zip(chi.exponents, comps) if c.p == p)
    rest_mod = chi.modulus // pk
    exps_rest = tuple(e for e, c in zip(chi.exponents, comps) if c.p != p)
    chi_p = DirichletCharacter(pk, exps_p)
    chi_rest = DirichletCharacter(rest_mod, exps_rest)
    return chi_p, chi_rest(p)


def _unnormalized_density(symbol: SplittingSymbol, p: int, s, chi) -> complex:
    kind, sub = symbol.kind, symbol.subtype
    if sub == 0 and kind in _RAMIFIED:
        return sum(
            _unnormalized_density(SplittingSymbol(kind, t), p, s, chi)
            for t in _subtype_range(kind, p)
        )
    if sub not in _subtype_range(kind, p) and not (sub == 0):
        raise ValueError(f"no subtype {sub} for {kind.value} at {p}")

    if s == 1:
        base = {
            Kind.TOTALLY_SPLIT: 1 / 6,
            Kind.PARTIALLY_SPLIT: 1 / 2,
            Kind.INERT: 1 / 3,
            Kind.PARTIALLY_RAMIFIED: 1 / p,
            Kind.TOTALLY_RAMIFIED: 1 / p**2,
        }[kind]
        return base * _subtype_multiplier(kind, sub, p)

    # s = 5/6
    twisted = chi is not None and not chi.is_trivial()
    if twisted and chi.conductor % p == 0:
        return _twisted_ramified_row(symbol, p, chi)
    w = chi(p) if twisted else 1.0
    x = p ** (-1 / 3)
    if kind is Kind.TOTALLY_SPLIT:
        return (1 + w * x) ** 3 / 6
    if kind is Kind.PARTIALLY_SPLIT:
        return (1 + w * x) * (1 + w * w * x * x) / 2
    if kind is Kind.INERT:
        return (1 + 1 / p) / 3
    if kind is Kind.PARTIALLY_RAMIFIED:
        return (1 + w * x) ** 2 / p * _subtype_multiplier(kind, sub, p)
    return (1 + w * x) / p**2 * _subtype_multiplier(kind, sub, p)


def _twisted_ramified_row(symbol: SplittingSymbol, p: int, chi) -> complex:
    """Density at s = 5/6 when the cubic character ramifies at p."""
    kind, sub = symbol.kind, symbol.subtype
    chi_p, w_rest = _local_component(chi, p)
    if p == 3:
        c4 = chi_p(4)
        if kind is Kind.TOTALLY_SPLIT:
            return c4 / (6 * p)
        if kind is Kind.PARTIALLY_SPLIT:
            return c4 / (2 * p)
        if kind is Kind.INERT:
            return c4 / (3 * p)
        if kind is Kind.PARTIALLY_RAMIFIED:
            # subtype 1: quadratic part of discriminant 12; subtype 2: -12
            sign = -1 if sub == 1 else 1
            return sign * (1 - chi_p(2)) * w_rest * p ** (-7 / 3)
        rows = {
            1: (c4 - 1) / p**4,
            2: (2 * c4 + 1) / p**4,
            3: chi_p(2) * w_rest * p ** (-13 / 3),
        }
        if sub in rows:
            return rows[sub]
        u = (1, 4, 7)[(sub - 4) % 3]
        if sub <= 6:
            return (chi_p(u) + w_rest * p ** (-1 / 3)) / p**5
        return chi_p(u) * w_rest * p ** (-16 / 3)
    if p % 3 != 1:
        raise ValueError(f"no cubic character ramifies at {p}")
    tau = gauss_sum(chi_p**2)
    if kind is Kind.TOTALLY_SPLIT:
        return tau / (6 * p**2)
    if kind is Kind.PARTIALLY_SPLIT:
        return -tau / (2 * p**2)
    if kind is Kind.INERT:
        return tau / (3 * p**2)
    if kind is Kind.PARTIALLY_RAMIFIED:
        return chi_p(4) * w_rest * p ** (-4 / 3) / 2
    # totally ramified: local ring x^3 + a u^3 p with a in the cubic class
    a = pow(_primitive_root(p), sub - 1, p)
    return (chi_p(a) ** 2 + chi_p(a) * w_rest * p ** (-1 / 3)) / (3 * p**2)


def local_density(symbol: SplittingSymbol, p: int, s, chi=None, torsion: bool = False):
    """Normalized local density of one splitting symbol at p.

    s is 1 (main term) or 5/6 (secondary term).  A cubic character chi may
    twist the 5/6 densities; the main-term density is never twisted.
    torsion=True switches to the class-group normalizers, under which
    totally ramified rings do not occur.
    """
    if s not in (1,) and abs(s - 5 / 6) > 1e-12:
        raise ValueError("s must be 1 or 5/6")
    if torsion and symbol.kind is Kind.TOTALLY_RAMIFIED:
        raise ValueError("totally ramified symbols have no class-group density")
    if s == 1:
        chi = None
    twisted = chi is not None and not chi.is_trivial()
    if twisted and chi.order not in (1, 3):
        raise ValueError("twists must be cubic characters")
    dens = _unnormalized_density(symbol, p, s, chi if twisted else None)
    if twisted and chi.conductor % p == 0:
        norm = 1 + 1 / p
    else:
        w = chi(p) if twisted else 1.0
        norm = normalizer(p, s, w, torsion)
    out = dens / norm
    return out if twisted else out.real if isinstance(out, complex) else out


def _spec_products(specs, s, torsion=False):
    out = 1.0
    for spec in specs:
        out *= sum(local_density(sym, spec.p, s, torsion=torsion) for sym in spec.allowed)
    return out


def spec_terms(sign: int, specs=()) -> PredictionTerms:
    """Two-term count of cubic fields meeting local specifications."""
    _check_sign(sign)
    specs = tuple(specs)
    c = C_SIGN[sign] * _spec_products(specs, 1)
    k = K_SIGN[sign] * _spec_products(specs, 5 / 6)
    label = ", ".join(f"{'/'.join(map(repr, sp.allowed))} at {sp.p}" for sp in specs)
    return PredictionTerms(
        c * MAIN_FOLD,
        k * SECONDARY_FOLD * ZETA_13 / ZETA_53,
        f"cubic fields, sign {sign:+d}" + (f", {label}" if label else ""),
    )


def torsion_terms(sign: int, specs=()) -> PredictionTerms:
    """Two-term count of 3-torsion (with the trivial class) over fundamental
    discriminants meeting local specifications, stated on the cubic side."""
    _check_sign(sign)
    specs = tuple(specs)
    A = (3 + C_SIGN[sign]) / math.pi**2 * _spec_products(specs, 1, torsion=True)
    euler = torsion_euler_product()
    B = (
        K_SIGN[sign]
        * TORSION_SECONDARY_FOLD
        * ZETA_13
        * euler.value
        * _spec_products(specs, 5 / 6, torsion=True)
    )
    label = ", ".join(f"{'/'.join(map(repr, sp.allowed))} at {sp.p}" for sp in specs)
    return PredictionTerms(
        A, B, f"3-torsion, sign {sign:+d}" + (f", {label}" if label else "")
    )


# ---------------------------------------------------------------------------
# Euler products.  The class-group factor (1 - (p^(1/3) + 1)/(p(p+1)))
# converges like p^(-5/3), far too slowly to truncate naively, so the
# untwisted product is accelerated through the prime zeta function and the
# twisted ones are sieved to a high cutoff with a reported tail bound.


def _moebius(n: int) -> int:
    out = 1
    for _, k in factorize(n):
        if k > 1:
            return 0
        out = -out
    return out


@lru_cache(maxsize=None)
def _prime_zeta(s: float) -> float:
    """sum over primes of p^-s for s > 1, via log zeta values."""
    if s <= 1:
        raise ValueError("prime zeta needs s > 1")
    total = 0.0
    for k in range(1, 80):
        mu = _moebius(k)
        if mu == 0:
            continue
        z = riemann_zeta(k * s)
        if z - 1 < 1e-18:
            break
        total += mu / k * math.log(z)
    return total


def _torsion_log_series(degree: int) -> list[float]:
    """Coefficients c_n of log(1 - (t^5 + t^6)/(1 + t^3)), t = p^(-1/3)."""
    u = [0.0] * (degree + 1)
    for k in range(0, degree // 3 + 1):
        sign = -1.0 if k % 2 else 1.0
        if 3 * k + 5 <= degree:
            u[3 * k + 5] += sign
        if 3 * k + 6 <= degree:
            u[3 * k + 6] += sign
    out = [0.0] * (degree + 1)
    power = u[:]
    for k in range(1, degree // 5 + 1):
        for n in range(degree + 1):
            out[n] -= power[n] / k
        nxt = [0.0] * (degree + 1)
        for i in range(degree + 1):
            if power[i]:
                for j in range(degree + 1 - i):
                    if u[j]:
                        nxt[i + j] += power[i] * u[j]
        power = nxt
    return out


def _torsion_factor(p: float, w: complex = 1.0) -> complex:
    return 1 - (w * p ** (1 / 3) + 1) / (p * (p + 1))


# The class-group tables were originally computed from a product truncated
# near this point; the truncation error (about 2e-6 in the logarithm) is
# visible in their sixth decimal, so predictions use the same cutoff and
# carry the tail bound.  The converged value is kept as a cross-check.
DEFAULT_EULER_CUTOFF = 10_000_000


def _euler_tail_bound(cutoff: int) -> float:
    # sum over p > cutoff of |log factor| < 2 sum p^(-5/3), bounded by the
    # integral 2 * (3/2) x^(-2/3) / log(x) at the cutoff
    return 3 * cutoff ** (-2 / 3) / math.log(cutoff)


@lru_cache(maxsize=None)
def converged_torsion_euler_product(split: int = 100, degree: int = 42) -> EulerProduct:
    """prod over all p of (1 - (p^(1/3) + 1)/(p(p+1))), to near double precision.

    The factors decay like p^(-5/3), so the log of the tail past `split` is
    summed exactly as a series of prime zeta values.
    """
    small = [int(p) for p in primes_up_to(split)]
    value = 1.0
    for p in small:
        value *= _torsion_factor(p)
    coeff = _torsion_log_series(degree + 3)
    log_tail = 0.0
    for n in range(5, degree + 1):
        if coeff[n]:
            rest = _prime_zeta(n / 3) - sum(p ** (-n / 3) for p in small)
            log_tail += coeff[n] * rest
    bound = abs(coeff[degree + 3]) * split ** (-(degree + 1) / 3)
    return EulerProduct(value * math.exp(log_tail), bound)


@lru_cache(maxsize=None)
def torsion_euler_product(cutoff: int = DEFAULT_EULER_CUTOFF) -> EulerProduct:
    """prod over p <= cutoff of (1 - (p^(1/3) + 1)/(p(p+1))), with tail bound."""
    ps = primes_up_to(cutoff).astype(np.float64)
    factors = 1 - (np.cbrt(ps) + 1) / (ps * (ps + 1))
    return EulerProduct(float(np.prod(factors)), _euler_tail_bound(cutoff))


@lru_cache(maxsize=None)
def twisted_torsion_euler(
    twist: DirichletCharacter,
    exclude: tuple[int, ...] = (),
    cutoff: int = DEFAULT_EULER_CUTOFF,
) -> EulerProduct:
    """prod over p <= cutoff, p not excluded, of (1 - (twist(p) p^(1/3) + 1)/(p(p+1)))."""
    if twist.is_trivial():
        full = torsion_euler_product(cutoff)
        value = complex(full.value)
        for p in exclude:
            value /= _torsion_factor(p)
        return EulerProduct(value, full.tail_bound)
    m = twist.modulus
    vals = np.array([twist(n) for n in range(m)], dtype=np.complex128)
    ps = primes_up_to(cutoff).astype(np.float64)
    keep = np.ones(len(ps), dtype=bool)
    for p in set(exclude) | {q for q, _ in factorize(m)}:
        keep &= ps != p
    ps = ps[keep]
    w = vals[(ps.astype(np.int64)) % m]
    factors = 1 - (w * np.cbrt(ps) + 1) / (ps * (ps + 1))
    return EulerProduct(complex(np.prod(factors)), _euler_tail_bound(cutoff))


# ---------------------------------------------------------------------------
# Arithmetic progressions for cubic fields: the raw constants C1, K1 with
# N(X; m, a) = C1 * Csign/(12 zeta(3)) X + K1 * Ksign * 4/(5 Gamma(2/3)^3) X^(5/6).


def _prime_divisors(m: int):
    return [p for p, _ in factorize(m)]


def _c1_coprime(m: int, a: int) -> float:
    out = 1 / m
    for p in _prime_divisors(m):
        out /= 1 - p**-3
    if m % 4 == 0:
        out = 2 * out if a % 4 == 1 else 0.0
    return out


def _k1_coprime(m: int, a: int) -> float:
    pref = 1 / m
    for p in _prime_divisors(m):
        pref /= 1 - p**-2
    total = 0j
    for chi in enumerate_order6_characters(m):
        psi = chi**-2
        term = chi(a).conjugate()
        term *= dirichlet_l(1 / 3, psi) / dirichlet_l(5 / 3, chi**2)
        cond = chi.conductor
        for p in _prime_divisors(m):
            if cond % p:
                w = chi(p)
                term *= (1 - w ** (-2) * p ** (-4 / 3)) / (1 - w**2 * p ** (-5 / 3))
            elif p == 3:
                chi_p, _ = _local_component(chi, p)
                term *= chi_p(4) / 3
            else:
                chi_p, _ = _local_component(chi, p)
                term *= gauss_sum(chi_p**2) ** 3 / p**2
        total += term
    out = pref * total.real
    if m % 4 == 0:
        out = 2 * out if a % 4 == 1 else 0.0
    return out


def _k1_prime_square(p: int, unit: int) -> float:
    """Secondary constant for discriminants of the form p*unit mod p^2."""
    head = ZETA_13 / ZETA_53 * (1 - p ** (-2 / 3)) * (1 + p ** (-1 / 3)) / (1 - p ** (-5 / 3))
    tail = 0j
    if p % 3 == 1:
        for chi in enumerate_order6_characters(p):
            if chi.is_trivial():
                continue
            psi = chi**-2  # the two cubic characters mod p
            tail += psi(2 * unit).conjugate() * dirichlet_l(1 / 3, psi) / dirichlet_l(
                5 / 3, psi**2
            )
    return (head + p ** (-1 / 3) * tail.real) / (p * p - 1)


def _spec_constants(p: int, kinds) -> tuple[float, float]:
    """(C1, K1) for a pure local specification at one prime."""
    syms = tuple(SplittingSymbol(k) for k in kinds)
    c1 = sum(local_density(s, p, 1) for s in syms)
    k1 = sum(local_density(s, p, 5 / 6) for s in syms) * ZETA_13 / ZETA_53
    return c1, k1


@lru_cache(maxsize=None)
def ap_constants(m: int, a: int) -> tuple[float, float]:
    """Raw (C1(m, a), K1(m, a)) in the progression a mod m."""
    if m < 1:
        raise ValueError("modulus must be positive")
    a %= m
    if m == 1:
        return 1.0, ZETA_13 / ZETA_53
    if math.gcd(a, m) == 1:
        return _c1_coprime(m, a), _k1_coprime(m, a)

    fac = factorize(m)
    if len(fac) > 1:
        raise NotImplementedError(
            "progressions sharing a factor with a composite modulus are not tabulated"
        )
    (p, k) = fac[0]
    if a == 0:
        if k == 1:
            c1, k1 = _spec_constants(p, (Kind.PARTIALLY_RAMIFIED, Kind.TOTALLY_RAMIFIED))
            return c1, k1
        if p in (2, 3):
            raise NotImplementedError(f"progression 0 mod {m} is not tabulated")
        if k == 2:
            return _spec_constants(p, (Kind.TOTALLY_RAMIFIED,))
        return 0.0, 0.0  # p^3 never divides a field discriminant for p > 3
    v = 0
    aa = a
    while aa % p == 0:
        aa //= p
        v += 1
    unit = a // p**v
    if p == 2:
        raise NotImplementedError("progressions with even common factor are not tabulated")
    if p == 3:
        if k == 2 and v == 1:
            # 3 || disc: the two halves of partial ramification at 3
            sub = 1 if unit % 3 == 1 else 2
            sym = SplittingSymbol(Kind.PARTIALLY_RAMIFIED, sub)
            c1 = local_density(sym, 3, 1)
            k1 = local_density(sym, 3, 5 / 6) * ZETA_13 / ZETA_53
            return c1, k1
        raise NotImplementedError(f"progression {a} mod {m} is not tabulated")
    if v == 1:
        scale = p ** (k - 2)
        if k < 2:
            raise AssertionError
        c1 = 1 / (p * p * (1 - p**-3))
        return c1 / scale, _k1_prime_square(p, unit) / scale
    if v == 2:
        if k < 3:
            raise AssertionError
        scale = p ** (k - 3)
        phi = 1 if pow(-3 * unit % p, (p - 1) // 2, p) == 1 else -1
        c1 = (1 + phi) / (p**3 * (1 - p**-3))
        k1 = (
            (1 + phi)
            * (1 - p ** (-2 / 3))
            / (p**3 * (1 - p**-2) * (1 - p ** (-5 / 3)))
            * ZETA_13
            / ZETA_53
        )
        return c1 / scale, k1 / scale
    return 0.0, 0.0


def c1_constant(m: int, a: int) -> float:
    return ap_constants(m, a)[0]


def k1_constant(m: int, a: int) -> float:
    return ap_constants(m, a)[1]


def ap_terms(m: int, a: int, sign: int) -> PredictionTerms:
    """Two-term count of cubic fields with discriminant a mod m.

    The coefficients fold in the universal prefactors and the sign weights,
    so A and B multiply X and X^(5/6) directly.
    """
    _check_sign(sign)
    c1, k1 = ap_constants(m, a)
    return PredictionTerms(
        c1 * C_SIGN[sign] * MAIN_FOLD,
        k1 * K_SIGN[sign] * SECONDARY_FOLD,
        f"cubic fields, sign {sign:+d}, discriminant {a % m} mod {m}",
    )


# ---------------------------------------------------------------------------
# Arithmetic progressions for 3-torsion.


def _k1_torsion_coprime(m: int, a: int) -> float:
    pref = 1 / m
    for p in _prime_divisors(m):
        pref /= 1 - p**-2
    total = 0j
    mp = _prime_divisors(m)
    for chi in enumerate_order6_characters(m):
        psi = chi**-2
        term = chi(a).conjugate() * dirichlet_l(1 / 3, psi)
        term *= twisted_torsion_euler(chi**2, tuple(mp)).value
        cond = chi.conductor
        for p in mp:
            if cond % p:
                term *= 1 - chi(p) ** (-2) * p ** (-4 / 3)
            else:
                chi_p, _ = _local_component(chi, p)
                term *= gauss_sum(chi_p**2) ** 3 / p**2
        total += term
    return pref * total.real


def torsion_ap_terms(m: int, a: int, sign: int) -> PredictionTerms:
    """Two-term count of 3-torsion (with the trivial class) over fundamental
    discriminants congruent to a mod m, for m coprime to 6."""
    _check_sign(sign)
    if math.gcd(m, 6) != 1:
        raise NotImplementedError("torsion progressions need a modulus coprime to 6")
    a %= m
    if math.gcd(a, m) == 1 or m == 1:
        A = (3 + C_SIGN[sign]) / (math.pi**2 * m)
        for p in _prime_divisors(m):
            A /= 1 - p**-2
        B = K_SIGN[sign] * TORSION_SECONDARY_FOLD * _k1_torsion_coprime(m, a)
        return PredictionTerms(
            A, B, f"3-torsion, sign {sign:+d}, discriminant {a} mod {m}"
        )
    fac = factorize(m)
    if a == 0 and len(fac) == 1 and fac[0][1] == 1:
        p = fac[0][0]
        base = torsion_terms(
            sign, (LocalSpec(p, (SplittingSymbol(Kind.PARTIALLY_RAMIFIED),)),)
        )
        return PredictionTerms(
            base.A, base.B, f"3-torsion, sign {sign:+d}, discriminant 0 mod {m}"
        )
    raise NotImplementedError(f"torsion progression {a} mod {m} is not tabulated")
