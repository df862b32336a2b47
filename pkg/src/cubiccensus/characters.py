"""Dirichlet characters with exact root-of-unity arithmetic.

A character is stored as an exponent vector over the CRT generators of
(Z/m)^*; values are exact rationals r meaning e^(2 pi i r), so products,
conjugates and powers are exact, and complex numbers only appear when an
L-function or Gauss sum needs them.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .localdata import factorize


def _primitive_root_mod_pk(p: int, k: int) -> int:
    """Generator of the cyclic group (Z/p^k)^*, p odd."""
    fac = [q for q, _ in factorize(p - 1)]
    g = None
    for cand in range(2, p):
        if all(pow(cand, (p - 1) // q, p) != 1 for q in fac):
            g = cand
            break
    if k == 1:
        return g
    # g or g + p generates mod p^2 and then mod all higher powers
    if pow(g, p - 1, p * p) == 1:
        g += p
    return g


def _bsgs(g: int, h: int, order: int, mod: int) -> int:
    """Solve g^x = h (mod mod), 0 <= x < order (baby-step giant-step)."""
    m = math.isqrt(order) + 1
    table = {}
    e = 1
    for j in range(m):
        table.setdefault(e, j)
        e = e * g % mod
    factor = pow(g, -m, mod)
    gamma = h % mod
    for i in range(m):
        if gamma in table:
            return (i * m + table[gamma]) % order
        gamma = gamma * factor % mod
    raise ValueError(f"{h} is not in <{g}> mod {mod}")


@dataclass(frozen=True)
class _Component:
    """One CRT factor of the unit group: <gen> of the given order mod pk."""

    p: int
    k: int
    pk: int
    gen: int
    order: int


class UnitGroup:
    """(Z/m)^* as a product of cyclic groups with discrete logarithms."""

    def __init__(self, m: int):
        if m < 1:
            raise ValueError("modulus must be positive")
        if m > 10**6:
            raise ValueError("moduli above 10^6 are out of scope")
        self.modulus = m
        comps: list[_Component] = []
        for p, k in factorize(m):
            pk = p**k
            if p == 2:
                if k >= 2:
                    comps.append(_Component(2, k, pk, pk - 1, 2))  # -1
                if k >= 3:
                    comps.append(_Component(2, k, pk, 5, pk // 4))
            else:
                g = _primitive_root_mod_pk(p, k)
                comps.append(_Component(p, k, pk, g, pk - pk // p))
        self.components = tuple(comps)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(c.order for c in self.components)

    def phi(self) -> int:
        return math.prod(self.orders) if self.components else 1

    def dlog(self, n: int) -> tuple[int, ...]:
        n %= self.modulus
        if math.gcd(n, self.modulus) != 1:
            raise ValueError(f"{n} is not a unit mod {self.modulus}")
        out = []
        for c in self.components:
            r = n % c.pk
            if c.p == 2 and c.gen == c.pk - 1:
                # sign component: r = (-1)^e 5^f, e fixed by r mod 4
                out.append(0 if r % 4 == 1 else 1)
            elif c.p == 2:
                r2 = r if r % 4 == 1 else (-r) % c.pk
                out.append(_bsgs(5, r2, c.order, c.pk))
            else:
                out.append(_bsgs(c.gen, r, c.order, c.pk))
        return tuple(out)


@lru_cache(maxsize=None)
def unit_group(m: int) -> UnitGroup:
    return UnitGroup(m)


class DirichletCharacter:
    """Character mod m given by exponents against the UnitGroup generators.

    chi(gen_i) = e^(2 pi i e_i / order_i).
    """

    def __init__(self, m: int, exponents: tuple[int, ...] = ()):
        self.modulus = m
        self.group = unit_group(m)
        n = len(self.group.components)
        exps = tuple(exponents) + (0,) * (n - len(exponents))
        self.exponents = tuple(e % c.order for e, c in zip(exps, self.group.components))

    # -- exact values --------------------------------------------------

    def exponent_at(self, n: int) -> Fraction | None:
        """r with chi(n) = e^(2 pi i r), or None when gcd(n, m) > 1."""
        if math.gcd(n, self.modulus) != 1:
            return None
        logs = self.group.dlog(n)
        r = Fraction(0)
        for e, x, c in zip(self.exponents, logs, self.group.components):
            r += Fraction(e * x, c.order)
        return r % 1

    def __call__(self, n: int) -> complex:
        r = self.exponent_at(n)
        if r is None:
            return 0j
        return cmath.exp(2j * cmath.pi * r)

    # -- algebra --------------------------------------------------------

    def __pow__(self, k: int) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, tuple(e * k for e in self.exponents))

    def conj(self) -> "DirichletCharacter":
        return self**-1

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if other.modulus != self.modulus:
            m = math.lcm(self.modulus, other.modulus)
            return self.induce(m) * other.induce(m)
        return DirichletCharacter(
            self.modulus, tuple(a + b for a, b in zip(self.exponents, other.exponents))
        )

    def induce(self, m: int) -> "DirichletCharacter":
        """The character mod m agreeing with self on units (m multiple)."""
        if m % self.modulus:
            raise ValueError("can only induce to a multiple of the modulus")
        g = unit_group(m)
        exps = []
        for c in g.components:
            # match component by evaluating self on a unit congruent to
            # c.gen mod c.pk and to 1 mod m / p^k
            pk = c.pk
            rest = m // (c.p ** c.k)
            n = _crt(c.gen, pk, 1, rest)
            r = self.exponent_at(n)
            exps.append(int(r * c.order) if r is not None else 0)
        out = DirichletCharacter(m, tuple(exps))
        return out

    def is_trivial(self) -> bool:
        return all(e == 0 for e in self.exponents)

    @property
    def order(self) -> int:
        out = 1
        for e, c in zip(self.exponents, self.group.components):
            out = math.lcm(out, c.order // math.gcd(e, c.order))
        return out

    @property
    def conductor(self) -> int:
        cond = 1
        two_part = 1
        for e, c in zip(self.exponents, self.group.components):
            if e == 0:
                continue
            d = c.order // math.gcd(e, c.order)  # order of this component
            if c.p == 2:
                if c.gen == c.pk - 1:
                    two_part = max(two_part, 4)
                else:
                    two_part = max(two_part, 4 * d)
            else:
                # smallest p^j with d | phi(p^j)
                j = 1
                while (c.p**j - c.p ** (j - 1)) % d:
                    j += 1
                cond *= c.p**j
        return cond * two_part

    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def primitive_part(self) -> "DirichletCharacter":
        """The primitive character inducing self."""
        f = self.conductor
        if f == self.modulus:
            return self
        g = unit_group(f)
        exps = []
        for c in g.components:
            n = _crt(c.gen, c.pk, 1, _coprime_rest(self.modulus, c.p))
            r = self.exponent_at(n)
            exps.append(int(r * c.order) if r is not None else 0)
        return DirichletCharacter(f, tuple(exps))

    def __repr__(self):
        return f"DirichletCharacter(mod {self.modulus}, exps {self.exponents})"

    def __eq__(self, other):
        return (
            isinstance(other, DirichletCharacter)
            and self.modulus == other.modulus
            and self.exponents == other.exponents
        )

    def __hash__(self):
        return hash((self.modulus, self.exponents))


def _crt(a1: int, m1: int, a2: int, m2: int) -> int:
    if m2 == 1:
        return a1 % m1
    u = pow(m1, -1, m2)
    return (a1 + m1 * ((a2 - a1) * u % m2)) % (m1 * m2)


def _coprime_rest(m: int, p: int) -> int:
    while m % p == 0:
        m //= p
    return m


def trivial_character() -> DirichletCharacter:
    return DirichletCharacter(1, ())


def all_characters(m: int):
    """Every character mod m (not necessarily primitive)."""
    g = unit_group(m)
    def rec(i, exps):
        if i == len(g.components):
            yield DirichletCharacter(m, tuple(exps))
            return
        for e in range(g.components[i].order):
            yield from rec(i + 1, exps + [e])
    yield from rec(0, [])


def enumerate_order6_characters(m: int) -> list[DirichletCharacter]:
    """Primitive characters to moduli dividing m whose local components all
    have exact order 6, except order 3 with conductor 9 at p = 3; the
    trivial character (conductor 1) is included.

    Only primes p = 1 mod 6 carry order-6 components, and the 3-part is
    available only when 9 | m (its conductor is 9).
    """
    local: list[list[DirichletCharacter]] = []
    for p, k in factorize(m):
        if p == 3 and k >= 2:
            # two characters of exact order 3 and conductor 9
            g = unit_group(9)
            (comp,) = g.components
            step = comp.order // 3
            local.append([DirichletCharacter(9, (step,)), DirichletCharacter(9, (2 * step,))])
        elif p % 6 == 1:
            g = unit_group(p)
            (comp,) = g.components
            step = comp.order // 6
            local.append(
                [DirichletCharacter(p, (u * step,)) for u in (1, 5)]
            )
    out = [trivial_character()]
    for comps in local:
        out = out + [chi * psi if chi.modulus > 1 else psi for chi in out for psi in comps]
    return out


def decompose_sextic(chi: DirichletCharacter):
    """chi with chi^6 = 1 as (cubic psi, quadratic phi) = (chi^-2, chi^3)."""
    if any(
        (6 * e) % c.order for e, c in zip(chi.exponents, chi.group.components)
    ):
        raise ValueError("character order does not divide 6")
    return chi**-2, chi**3


def gauss_sum(chi: DirichletCharacter) -> complex:
    """tau(chi) = sum over t mod p of chi(t) e^(2 pi i t / p), chi primitive mod prime p."""
    p = chi.modulus
    if not chi.is_primitive() or factorize(p) != [(p, 1)]:
        raise ValueError("gauss_sum needs a primitive character to a prime modulus")
    total = 0j
    for t in range(1, p):
        total += chi(t) * cmath.exp(2j * cmath.pi * t / p)
    return total
