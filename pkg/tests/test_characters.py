"""Unit group, Dirichlet character and Gauss sum checks."""

import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubiccensus.characters import (
    DirichletCharacter,
    all_characters,
    decompose_sextic,
    enumerate_order6_characters,
    gauss_sum,
    trivial_character,
    unit_group,
)


def euler_phi(m):
    out = m
    n, p = m, 2
    while p * p <= n:
        if n % p == 0:
            out -= out // p
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out -= out // n
    return out


@pytest.mark.parametrize("m", [2, 3, 4, 5, 7, 8, 9, 12, 16, 24, 45, 63, 91, 100])
def test_unit_group_order_and_dlog(m):
    g = unit_group(m)
    assert g.phi() == euler_phi(m)
    for n in range(1, m):
        if math.gcd(n, m) != 1:
            continue
        logs = g.dlog(n)
        assert all(0 <= e < c.order for e, c in zip(logs, g.components))
        # reconstruct: n = prod over components of gen^e, taken mod each p^k
        for pk in {c.pk for c in g.components}:
            val = 1
            for e, c in zip(logs, g.components):
                if c.pk == pk:
                    val = val * pow(c.gen, e, pk) % pk
            assert n % pk == val


@pytest.mark.parametrize("m", [5, 7, 8, 9, 12, 35, 63, 91])
def test_character_multiplicative(m):
    for chi in all_characters(m):
        units = [n for n in range(1, m) if math.gcd(n, m) == 1]
        for a in units[:6]:
            for b in units[:6]:
                ra, rb = chi.exponent_at(a), chi.exponent_at(b)
                rab = chi.exponent_at(a * b % m)
                assert (ra + rb - rab) % 1 == 0


@pytest.mark.parametrize("m", list(range(2, 101)))
def test_orthogonality_over_residues(m):
    # sum over units of chi(a) vanishes exactly for nontrivial chi
    for chi in all_characters(m):
        total = Fraction(0), Fraction(0)
        s = 0j
        exact = {}
        for a in range(1, m):
            r = chi.exponent_at(a)
            if r is None:
                continue
            exact[r] = exact.get(r, 0) + 1
            s += chi(a)
        if chi.is_trivial():
            assert s.real == pytest.approx(euler_phi(m))
        else:
            assert abs(s) < 1e-9


@pytest.mark.parametrize("m", [7, 9, 12, 21, 36, 63, 100])
def test_orthogonality_over_characters(m):
    for a in range(2, m):
        if math.gcd(a, m) != 1:
            continue
        s = sum(chi(a) for chi in all_characters(m))
        if a % m == 1:
            assert s.real == pytest.approx(euler_phi(m))
        else:
            assert abs(s) < 1e-9


def brute_conductor(chi):
    """Smallest d | m with chi constant on units congruent mod d."""
    m = chi.modulus
    for d in range(1, m + 1):
        if m % d:
            continue
        ok = True
        for x in range(1, m):
            if math.gcd(x, m) == 1 and x % d == 1 % d:
                if chi.exponent_at(x) != 0:
                    ok = False
                    break
        if ok:
            return d
    raise AssertionError


@pytest.mark.parametrize("m", [3, 4, 5, 8, 9, 12, 16, 21, 36, 63])
def test_conductor_against_bruteforce(m):
    for chi in all_characters(m):
        assert chi.conductor == brute_conductor(chi)


@pytest.mark.parametrize("m", [9, 12, 35, 63])
def test_primitive_part_roundtrip(m):
    for chi in all_characters(m):
        prim = chi.primitive_part()
        assert prim.is_primitive()
        assert prim.conductor == chi.conductor
        back = prim.induce(m)
        assert back == chi or all(
            chi.exponent_at(n) == back.exponent_at(n)
            for n in range(1, m)
            if math.gcd(n, m) == 1
        )


def test_induce_preserves_values():
    for chi in all_characters(7):
        up = chi.induce(91)
        for n in range(1, 91):
            if math.gcd(n, 91) == 1:
                assert up.exponent_at(n) == chi.exponent_at(n)


@pytest.mark.parametrize(
    "m,count", [(1, 1), (5, 1), (7, 3), (9, 3), (13, 3), (49, 3), (63, 9), (91, 9), (3, 1)]
)
def test_order6_enumeration_counts(m, count):
    chars = enumerate_order6_characters(m)
    assert len(chars) == count
    for chi in chars:
        assert chi.is_primitive()
        if chi.is_trivial():
            continue
        # every component of order exactly 6, or exactly 3 at modulus-9 part
        for e, c in zip(chi.exponents, chi.group.components):
            d = c.order // math.gcd(e, c.order)
            assert d == (3 if c.p == 3 else 6)


def test_decompose_sextic_recombines():
    for chi in enumerate_order6_characters(91):
        psi, phi = decompose_sextic(chi)
        assert psi.order in (1, 3)
        assert phi.order in (1, 2)
        for n in range(1, 91):
            if math.gcd(n, 91) == 1:
                assert (psi.exponent_at(n) + phi.exponent_at(n)) % 1 == chi.exponent_at(n)


def test_gauss_sum_modulus_and_reflection():
    for chi in all_characters(7):
        if chi.is_trivial() or not chi.is_primitive():
            continue
        tau = gauss_sum(chi)
        assert abs(abs(tau) - math.sqrt(7)) < 1e-12
        tau_bar = gauss_sum(chi.conj())
        assert abs(tau_bar - chi(-1) * tau.conjugate()) < 1e-12


def test_gauss_sum_quadratic_is_root_of_p():
    # quadratic character mod 7 (7 = 3 mod 4): tau = i sqrt(7)
    (chi,) = [c for c in all_characters(7) if c.order == 2]
    tau = gauss_sum(chi)
    assert abs(tau - 1j * math.sqrt(7)) < 1e-12
    # mod 13 (1 mod 4): tau = sqrt(13)
    (chi,) = [c for c in all_characters(13) if c.order == 2]
    assert abs(gauss_sum(chi) - math.sqrt(13)) < 1e-12


def test_cross_modulus_product():
    a = [c for c in all_characters(7) if c.order == 6][0]
    b = [c for c in all_characters(13) if c.order == 6][0]
    prod = a * b
    assert prod.modulus == 91
    for n in (2, 3, 5, 6):
        assert abs(prod(n) - a(n) * b(n)) < 1e-12


def test_trivial_character_basics():
    one = trivial_character()
    assert one.modulus == 1
    assert one.is_trivial()
    assert one(5) == 1
    assert one.conductor == 1
