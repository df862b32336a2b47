import math

import numpy as np
import pytest

from cubiccensus import enumeration as en, forms
from cubiccensus.forms import CubicForm


def test_x1_positive_is_z3():
    reps = en.enumerate_forms(1, 1)
    assert reps == [CubicForm(0, 1, -1, 0)]
    assert forms.discriminant(reps[0]) == 1


def test_first_complex_cubic_field_at_23():
    reps = en.enumerate_forms(23, -1)
    by_disc = {}
    for f in reps:
        by_disc.setdefault(forms.discriminant(f), []).append(f)
    assert -23 in by_disc
    # the field class and the reducible Z x quad class both live at -23
    irr = [f for f in by_disc[-23] if forms.is_irreducible(f)]
    assert len(irr) == 1
    assert forms.reduce(CubicForm(1, 0, -1, -1)) == irr[0]


def test_one_field_up_to_49_positive():
    recs = en.census_records(49, 1)
    fields = [r for r in recs if r.irreducible]
    assert len(fields) == 1
    assert fields[0].disc == 49 and fields[0].galois


@pytest.mark.parametrize("X", [200, 500])
@pytest.mark.parametrize("sign", [1, -1])
def test_matches_bruteforce_small(X, sign):
    assert set(en.enumerate_forms(X, sign)) == en.bruteforce_classes(X, sign)


@pytest.mark.slow
@pytest.mark.parametrize("sign", [1, -1])
def test_matches_bruteforce_5000(sign):
    assert set(en.enumerate_forms(5000, sign)) == en.bruteforce_classes(5000, sign)


def test_representatives_are_canonical_unique_and_sorted():
    for sign in (1, -1):
        reps = en.enumerate_forms(1500, sign)
        assert len(reps) == len(set(reps))
        discs = [abs(forms.discriminant(f)) for f in reps]
        assert discs == sorted(discs)
        for f in reps[:200]:
            assert forms.reduce(f) == f
            assert 1 <= sign * forms.discriminant(f) <= 1500


def test_rejects_bad_arguments():
    with pytest.raises(ValueError):
        en.enumerate_forms(100, 0)
    with pytest.raises(ValueError):
        en.enumerate_forms(0, 1)
    with pytest.raises(ValueError):
        en.enumerate_forms(forms.DISC_BOUND + 1, 1)


def test_census_records_flags(tmp_path):
    recs = en.census_records(1000, 1)
    # every record is maximal, flags are consistent
    from cubiccensus import localdata as ld

    for r in recs:
        assert forms.discriminant(r.form) == r.disc
        assert ld.is_maximal(r.form)
        assert r.irreducible == forms.is_irreducible(r.form)
        assert r.galois == (r.irreducible and math.isqrt(r.disc) ** 2 == r.disc)
    # nonmaximal classes were dropped but existed
    assert len(recs) < len(en.enumerate_forms(1000, 1))


def test_census_cache_roundtrip(tmp_path):
    cache = en.CensusCache(str(tmp_path))
    recs = cache.get(800, -1)
    again = cache.load(800, -1)
    assert again == recs
    # a larger cache serves smaller cutoffs
    smaller = cache.get(300, -1)
    assert smaller == [r for r in recs if abs(r.disc) <= 300]
    assert len(list(tmp_path.glob("census_m_*.csv.gz"))) == 1


def test_fundamental_discs_small():
    ds = en.fundamental_discs(30, 1)
    assert list(ds) == [5, 8, 12, 13, 17, 21, 24, 28, 29]
    ds = en.fundamental_discs(20, -1)
    assert list(ds) == [-20, -19, -15, -11, -8, -7, -4, -3]


def test_fundamental_counts_match_density():
    X = 400000
    for sign in (1, -1):
        n = en.count_fundamental_discs(X, sign)
        assert abs(n - (3 / math.pi**2) * X) < 3 * math.sqrt(X)
    for m, a in [(5, 1), (5, 0), (7, 3), (12, 1), (4, 0), (9, 3), (8, 5)]:
        lam = en.fundamental_ap_density(m, a)
        for sign in (1, -1):
            n = en.count_fundamental_discs(X, sign, m, a)
            assert abs(n - lam * X) < 4 * math.sqrt(X) + 50, (m, a, sign, n, lam * X)


def test_fundamental_ap_density_sums_to_total():
    for m in (5, 7, 12):
        tot = sum(en.fundamental_ap_density(m, a) for a in range(m))
        assert abs(tot - 3 / math.pi**2) < 1e-12
