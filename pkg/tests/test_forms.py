import random

import pytest
from hypothesis import given, settings, strategies as st

from cubiccensus import forms
from cubiccensus.forms import CubicForm

GENS = [(1, 0, 1, 1), (1, 0, -1, 1), (0, 1, -1, 0), (1, 1, 0, 1), (1, -1, 0, 1), (0, -1, 1, 0)]

coeff = st.integers(min_value=-30, max_value=30)


def random_word(f, rng, steps=12, limit=10**5):
    for _ in range(steps):
        g = forms.act(rng.choice(GENS), f)
        if max(abs(t) for t in g) > limit:
            break
        f = g
    return f


@given(coeff, coeff, coeff, coeff)
def test_discriminant_invariant_under_action(a, b, c, d):
    f = CubicForm(a, b, c, d)
    rng = random.Random(a * 7 + b * 5 + c * 3 + d)
    g = random_word(f, rng)
    assert forms.discriminant(g) == forms.discriminant(f)


@given(coeff, coeff, coeff, coeff)
def test_hessian_covariance(a, b, c, d):
    # H(g.f) = H_f composed with g: P, Q, R transform like a quadratic form
    f = CubicForm(a, b, c, d)
    for g in GENS:
        r, s, t, u = g
        p, q, rr = forms.hessian(f)
        p2, q2, r2 = forms.hessian(forms.act(g, f))
        assert p2 == p * r * r + q * r * s + rr * s * s
        assert q2 == 2 * p * r * t + q * (r * u + s * t) + 2 * rr * s * u
        assert r2 == p * t * t + q * t * u + rr * u * u


def test_negation_is_equivalent():
    f = CubicForm(2, -1, 3, 5)
    assert forms.reduce(-f) == forms.reduce(f)


@settings(max_examples=300, deadline=None)
@given(coeff, coeff, coeff, coeff, st.integers(0, 2**32))
def test_reduce_is_class_invariant(a, b, c, d, seed):
    f = CubicForm(a, b, c, d)
    if forms.discriminant(f) == 0:
        return
    rng = random.Random(seed)
    g = random_word(f, rng)
    assert forms.reduce(g) == forms.reduce(f)


@settings(max_examples=200, deadline=None)
@given(coeff, coeff, coeff, coeff)
def test_reduce_lands_in_domain_and_is_idempotent(a, b, c, d):
    f = CubicForm(a, b, c, d)
    if forms.discriminant(f) == 0:
        return
    r = forms.reduce(f)
    assert forms.in_domain(r)
    assert forms.reduce(r) == r
    assert forms.discriminant(r) == forms.discriminant(f)


def test_reduce_rejects_degenerate():
    with pytest.raises(forms.DegenerateFormError):
        forms.reduce(CubicForm(0, 0, 0, 1))
    with pytest.raises(forms.CoefficientRangeError):
        forms.reduce(CubicForm(forms.COEFF_BOUND + 1, 0, 0, 1))


def test_known_stabilizers():
    # cyclic field of discriminant 49
    assert forms.stabilizer_order(CubicForm(1, 1, -2, -1)) == 3
    # Z^3, discriminant 1
    assert forms.stabilizer_order(CubicForm(0, 1, 1, 0)) == 3
    assert forms.reduce(CubicForm(0, 1, 1, 0)) == CubicForm(0, 1, -1, 0)
    # Z x Z[i], discriminant -4
    assert forms.stabilizer_order(CubicForm(0, 1, 0, 1)) == 1
    # generic non-Galois field form x^3 - x - 1
    assert forms.stabilizer_order(CubicForm(1, 0, -1, -1)) == 1


def test_sl2_class_splitting():
    # trivial stabiliser under det -1 too: GL2 class is one SL2 class
    assert forms.splits_in_two_sl2_classes(CubicForm(0, 1, 1, 0)) is False
    # x^3 + x + 1 has no symmetry: two SL2 classes
    assert forms.splits_in_two_sl2_classes(CubicForm(1, 0, 1, 1)) is True


def test_irreducibility():
    assert forms.is_irreducible(CubicForm(1, 0, -1, -1))
    assert not forms.is_irreducible(CubicForm(1, 0, 0, -1))  # x^3 - 1
    assert not forms.is_irreducible(CubicForm(0, 1, 0, 1))
    assert not forms.is_irreducible(CubicForm(2, 1, -1, 0))
    assert not forms.is_irreducible(CubicForm(6, 1, -10, 3))  # root 1/3


def test_square_disc():
    assert forms.has_square_disc(CubicForm(1, 1, -2, -1))  # disc 49
    assert not forms.has_square_disc(CubicForm(1, 0, -1, -1))  # disc -23
    assert not forms.has_square_disc(CubicForm(1, 0, 1, 1))


def test_act_composition():
    rng = random.Random(7)
    for _ in range(100):
        f = CubicForm(*(rng.randint(-9, 9) for _ in range(4)))
        g1 = rng.choice(GENS)
        g2 = rng.choice(GENS)
        # row-vector convention: acting by g1 then g2 composes as g2 @ g1
        r1, s1, t1, u1 = g1
        r2, s2, t2, u2 = g2
        comp = (
            r2 * r1 + s2 * t1,
            r2 * s1 + s2 * u1,
            t2 * r1 + u2 * t1,
            t2 * s1 + u2 * u1,
        )
        assert forms.act(g2, forms.act(g1, f)) == forms.act(comp, f)
