"""End-to-end acceptance checks against the published census and prediction
tables.

Two published entries are encoded as strict xfails because they are
internally inconsistent with the rest of the published data (the residue
rows must sum to the unfiltered total, and the mod-5 and mod-7 actual rows
must sum to the same number); the self-consistent values computed here are
asserted alongside.  Error-term exponents are proved bounds, not
reproducible numbers, and are excluded by design; the property suite below
stands in for them.
"""

import math

import pytest

from cubiccensus import oracle, predictor
from cubiccensus.census import Census, CensusQuery
from cubiccensus.characters import all_characters
from cubiccensus.enumeration import bruteforce_classes, enumerate_forms
from cubiccensus.localdata import Kind, LocalSpec, SplittingSymbol

X2M = 2_000_000
X1M = 1_000_000


@pytest.fixture(scope="session")
def census_plus():
    return Census.build(X2M, 1)


@pytest.fixture(scope="session")
def census_minus():
    return Census.build(X1M, -1)


# ---------------------------------------------------------------------------
# 1. Mod-7 field census at X = 2e6, positive discriminants.

AC1_ROW = (15330, 17229, 14327, 15323, 17027, 18058, 15150)


def test_ac1_mod7_census(census_plus):
    got = tuple(
        census_plus.count_fields(CensusQuery(X2M, 1, 7, a)) for a in range(7)
    )
    assert got == AC1_ROW


# ---------------------------------------------------------------------------
# 2. Predicted tables mod 7, 49, 343, both signs.

AC2_TABLES = [
    (7, 1, X2M, {1: 17209, 2: 14277, 3: 15316, 4: 17024, 5: 18063, 6: 15131}),
    (7, -1, X1M, {1: 27216, 2: 24366, 3: 25376, 4: 27036, 5: 28046, 6: 25196}),
    (49, 1, X2M, {7: 2157, 14: 1910, 21: 2553, 28: 2553, 35: 1910, 42: 2157}),
    (49, -1, X1M, {7: 3595, 14: 3355, 21: 3980, 28: 3980, 35: 3355, 42: 3595}),
    (343, 1, X2M, {49: 692, 98: 692, 147: 0, 196: 692, 245: 0, 294: 0}),
    (343, -1, X1M, {49: 1101, 98: 1101, 147: 0, 196: 1101, 245: 0, 294: 0}),
]


@pytest.mark.parametrize("m,sign,X,table", AC2_TABLES)
def test_ac2_expected_tables(m, sign, X, table):
    for a, want in table.items():
        got = predictor.ap_terms(m, a, sign).predicted(X)
        assert abs(round(got) - want) <= 1


# ---------------------------------------------------------------------------
# 3. Printed constants under the folded convention.

AC3_CONSTANTS = [
    ("c1", 7, 1, 0.00993261),
    ("k1", 7, 5, -0.0101147),
    ("k1", 7, 2, -0.0313625),
    ("c1", 49, 7, 0.00141894),
    ("k1", 49, 21, -0.00159849),
    ("c1", 343, 49, 0.000405412),
    ("k1", 343, 49, -0.000664801),
]


@pytest.mark.parametrize("which,m,a,want", AC3_CONSTANTS)
def test_ac3_printed_constants(which, m, a, want):
    if which == "c1":
        got = predictor.c1_constant(m, a) * predictor.MAIN_FOLD
    else:
        got = predictor.k1_constant(m, a) * predictor.SECONDARY_FOLD
    assert got == pytest.approx(want, abs=1e-6)


# ---------------------------------------------------------------------------
# 4. Torsion headline numbers at X = 1e6.


def test_ac4_torsion_sums_exact(census_plus, census_minus):
    assert census_plus.torsion_sum(CensusQuery(X1M, 1, mode="torsion")) == 381071
    assert census_minus.torsion_sum(CensusQuery(X1M, -1, mode="torsion")) == 566398


def test_ac4_torsion_predictions():
    assert predictor.torsion_terms(1, ()).predicted(X1M) == pytest.approx(
        381337.24, abs=0.05
    )
    assert predictor.torsion_terms(-1, ()).predicted(X1M) == pytest.approx(
        566448.83, abs=0.05
    )


# ---------------------------------------------------------------------------
# 5. Local-spec example: inert at 7, partially ramified at 5.

AC5_SPECS = (
    LocalSpec(7, (SplittingSymbol(Kind.INERT),)),
    LocalSpec(5, (SplittingSymbol(Kind.PARTIALLY_RAMIFIED),)),
)


def test_ac5_spec_constants():
    c = predictor._spec_products(AC5_SPECS, 1)
    k = predictor._spec_products(AC5_SPECS, 5 / 6)
    assert c == pytest.approx(0.046217, abs=1e-6)
    assert k == pytest.approx(0.030884, abs=1e-6)
    # the published components multiply the six-digit constants shown above
    main = 0.046217 * predictor.MAIN_FOLD * X2M
    secondary = (
        0.030884
        * predictor.SECONDARY_FOLD
        * predictor.ZETA_13
        / predictor.ZETA_53
        * X2M ** (5 / 6)
    )
    assert main == pytest.approx(6408.0, abs=0.1)
    assert secondary == pytest.approx(-812.7, abs=0.1)
    assert round(predictor.spec_terms(1, AC5_SPECS).predicted(X2M)) == 5595


def test_ac5_spec_count(census_plus):
    q = CensusQuery(X2M, 1, specs=AC5_SPECS)
    assert census_plus.count_fields(q) == 5546


# ---------------------------------------------------------------------------
# 6. Torsion tables in arithmetic progressions at X = 2e6.

AC6_PRED_MOD5 = (126942, 160239, 160239, 160239, 160239)
AC6_PRED_MOD7_PUBLISHED = (95095, 113486, 109566, 110919, 113345, 114699, 110779)
AC6_PRED_MOD7_CONSISTENT = (95095, 113488, 109568, 110921, 113347, 114701, 110781)
AC6_ACTUAL_MOD5_PUBLISHED = (126841, 160373, 160202, 160252, 160207)
AC6_ACTUAL_MOD5_ENUMERATED = (126841, 160373, 160204, 160252, 160207)
AC6_ACTUAL_MOD7 = (95138, 113407, 109506, 110955, 113232, 114741, 110898)


def _torsion_pred_row(m):
    return tuple(
        round(predictor.torsion_ap_terms(m, a, 1).predicted(X2M)) for a in range(m)
    )


def test_ac6_predicted_mod5():
    got = _torsion_pred_row(5)
    assert all(abs(g - w) <= 1 for g, w in zip(got, AC6_PRED_MOD5))


@pytest.mark.xfail(
    strict=True,
    reason="published mod-7 expected row sums to 767889, but the residue rows "
    "must sum to the unfiltered prediction 767899.9 (the mod-5 row does); "
    "the recomputed row below satisfies that identity",
)
def test_ac6_predicted_mod7_published():
    got = _torsion_pred_row(7)
    assert all(abs(g - w) <= 1 for g, w in zip(got, AC6_PRED_MOD7_PUBLISHED))


def test_ac6_predicted_mod7_self_consistent():
    got = _torsion_pred_row(7)
    assert got == AC6_PRED_MOD7_CONSISTENT
    total = sum(predictor.torsion_ap_terms(7, a, 1).predicted(X2M) for a in range(7))
    assert total == pytest.approx(
        predictor.torsion_terms(1, ()).predicted(X2M), abs=1e-6
    )


def _torsion_actual_row(census, m):
    return tuple(
        census.torsion_sum(CensusQuery(X2M, 1, m, a, mode="torsion"))
        for a in range(m)
    )


def test_ac6_actual_mod7(census_plus):
    assert _torsion_actual_row(census_plus, 7) == AC6_ACTUAL_MOD7


@pytest.mark.xfail(
    strict=True,
    reason="published mod-5 actual row sums to 767875 while the published "
    "mod-7 actual row sums to 767877; both count the same quantity, and the "
    "enumeration here reproduces the mod-7 row exactly and a mod-5 row with "
    "the matching total (160204 at residue 2, not 160202)",
)
def test_ac6_actual_mod5_published(census_plus):
    assert _torsion_actual_row(census_plus, 5) == AC6_ACTUAL_MOD5_PUBLISHED


def test_ac6_actual_mod5_enumerated(census_plus):
    got = _torsion_actual_row(census_plus, 5)
    assert got == AC6_ACTUAL_MOD5_ENUMERATED
    assert sum(got) == sum(AC6_ACTUAL_MOD7)


# ---------------------------------------------------------------------------
# 7. Property suite.


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("X", [49, 100, 1000])
def test_ac7a_sieve_identity(X, sign):
    report = oracle.sieve_identity_check(X, sign)
    assert report["ok"]


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("X", [23, 50, 500])
def test_ac7b_shintani_weights(X, sign):
    report = oracle.shintani_weight_check(X, sign)
    assert report["ok"]


@pytest.mark.parametrize("condition", [oracle.U_COMPLEMENT, oracle.V_COMPLEMENT])
def test_ac7c_phi_hat_rows(condition):
    p = 5
    points = [
        (0, 0, 0, 0),
        (25, 0, 0, 25),
        (1, 0, 0, 625),
        (1, 0, 0, 5),
        (1, 0, 0, 1),
        (2, 3, -3, 7),
        (5, 0, 0, 5),
    ]
    for x in points:
        got = oracle.phi_hat_bruteforce(x, p, condition)
        row = oracle.expected_phi_hat(x, p, condition)
        if "value" in row:
            assert abs(got - row["value"]) < 1e-9, (x, row)
        elif "abs" in row:
            assert abs(abs(got) - row["abs"]) < 1e-9, (x, row)
        elif "abs_candidates" in row:
            assert min(abs(abs(got) - v) for v in row["abs_candidates"]) < 1e-9
        else:
            assert abs(got) < row["bound"], (x, row)


@pytest.mark.slow
@pytest.mark.parametrize("sign", [1, -1])
def test_ac7d_enumeration_matches_bruteforce(sign):
    assert set(enumerate_forms(5000, sign)) == bruteforce_classes(5000, sign)


@pytest.mark.parametrize("m", [7, 9, 13, 91])
def test_ac7e_orthogonality_and_collapse(m):
    chars = all_characters(m)
    units = [a for a in range(m) if math.gcd(a, m) == 1]
    for chi in chars:
        total = sum(chi(a) for a in units)
        want = len(units) if chi.is_trivial() else 0
        assert abs(total - want) < 1e-8
    # the unit sum of the progression constants collapses to the trivial term
    total = sum(predictor.k1_constant(m, a) for a in units)
    pref = 1 / m
    triv = predictor.ZETA_13 / predictor.ZETA_53
    for p, _ in predictor.factorize(m):
        pref /= 1 - p**-2
        triv *= (1 - p ** (-4 / 3)) / (1 - p ** (-5 / 3))
    assert total == pytest.approx(len(units) * pref * triv, abs=1e-8)


# ---------------------------------------------------------------------------
# 8. Error-term exponents are proved bounds, not reproducible numbers; they
# are excluded by design and replaced by the property suite above.
