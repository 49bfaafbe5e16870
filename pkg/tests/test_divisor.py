"""Exact degrees with prime logarithms, the Euler characteristic identity,
scans, and the figure emitters."""

import decimal
import json
import math
from fractions import Fraction

import hypothesis
import hypothesis.strategies as st
import jsonschema
import pytest

from arakelov_rr import divisor as dv
from arakelov_rr.circle_h1 import dim_h1
from arakelov_rr.errors import DomainError, FormulaViolation, PrecisionError
from arakelov_rr.exact import log2_bounds
from arakelov_rr.interval_h0 import dim_h0

ODD_PRIMES = (3, 5, 7, 11, 13)

rationals = st.fractions(min_value=-25, max_value=25, max_denominator=4)

log_terms = st.lists(
    st.tuples(st.sampled_from(ODD_PRIMES), st.integers(-3, 3)),
    max_size=2,
    unique_by=lambda t: t[0],
).map(tuple)

degree_values = st.builds(
    dv.DegreeValue, rational_part=rationals, log_terms=log_terms
)


def exact_power(value: dv.DegreeValue):
    """(2**degree)**beta as an exact Fraction, beta the rational denominator."""
    beta = value.rational_part.denominator
    q = Fraction(2) ** value.rational_part.numerator
    for p, m in value.log_terms:
        q *= Fraction(p) ** (m * beta)
    return q, beta


# ---------------------------------------------------------------------------
# DegreeValue
# ---------------------------------------------------------------------------


def test_degree_value_validation():
    with pytest.raises(DomainError):
        dv.DegreeValue(Fraction(0), ((2, 1),))
    with pytest.raises(DomainError):
        dv.DegreeValue(Fraction(0), ((9, 1),))
    with pytest.raises(DomainError):
        dv.DegreeValue(Fraction(0), ((15, 1),))
    with pytest.raises(DomainError):
        dv.DegreeValue(Fraction(0), precision_bits=8)


def test_degree_value_merges_and_drops_terms():
    value = dv.DegreeValue(Fraction(1), ((5, 2), (3, 1), (5, -2)))
    assert value.log_terms == ((3, 1),)
    assert dv.DegreeValue(Fraction(1), ((7, 0),)).is_rational


def decimal_degree(value: dv.DegreeValue):
    """Reference evaluation at 100 digits; error ~1e-97, far below any
    interval width the bounds method can produce."""
    with decimal.localcontext() as ctx:
        ctx.prec = 100
        total = decimal.Decimal(value.rational_part.numerator) / decimal.Decimal(
            value.rational_part.denominator
        )
        ln2 = decimal.Decimal(2).ln()
        for p, m in value.log_terms:
            total += m * decimal.Decimal(p).ln() / ln2
        return Fraction(total)


DEGREE_SLACK = Fraction(1, 10 ** 90)


@hypothesis.given(degree_values, st.sampled_from([32, 64, 128]))
def test_bounds_enclose_reference_value(value, bits):
    lo, hi = value.bounds(bits)
    assert lo <= hi
    reference = decimal_degree(value)
    assert lo <= reference + DEGREE_SLACK
    assert reference - DEGREE_SLACK <= hi


@hypothesis.given(degree_values)
def test_sign_and_floor_consistent_with_bounds(value):
    lo, hi = value.bounds(96)
    sign = value.sign()
    if lo > 0:
        assert sign == 1
    if hi < 0:
        assert sign == -1
    fl = value.floor()
    assert Fraction(fl) <= hi and lo <= fl + 1


def test_compare_frozen_logs():
    log2_3 = dv.DegreeValue(Fraction(0), ((3, 1),))
    assert log2_3.compare(Fraction(8, 5)) == -1  # log2 3 = 1.58496... < 1.6
    assert log2_3.compare(Fraction(19, 12)) == 1  # > 1.58333...
    assert log2_3.floor() == 1
    assert log2_3.sign() == 1
    assert not log2_3.is_rational


def test_compare_exact_equality_on_rationals():
    value = dv.DegreeValue(Fraction(7, 3))
    assert value.compare(Fraction(7, 3)) == 0
    assert value.is_rational
    assert value.floor() == 2


@hypothesis.given(degree_values)
def test_floor_is_exact(value):
    fl = value.floor()
    q, beta = exact_power(value)
    # 2**fl <= 2**degree < 2**(fl + 1), cleared of the root (beta is small)
    assert Fraction(2) ** (fl * beta) <= q < Fraction(2) ** ((fl + 1) * beta)


@hypothesis.given(degree_values)
def test_floor_pow2_defining_inequality(value):
    if value.sign() < 0:
        assert value.floor_pow2() == 0
        return
    t = value.floor_pow2()
    q, beta = exact_power(value)
    assert Fraction(t) ** beta <= q < Fraction(t + 1) ** beta


def test_floor_pow2_spot_values():
    assert dv.DegreeValue(Fraction(0), ((3, 1),)).floor_pow2() == 3
    assert dv.DegreeValue(Fraction(0), ((3, 1), (5, 1))).floor_pow2() == 15
    # 15 / sqrt(2) = 10.606...
    assert dv.DegreeValue(Fraction(-1, 2), ((3, 1), (5, 1))).floor_pow2() == 10
    assert dv.DegreeValue(Fraction(-3)).floor_pow2() == 0


def test_floor_pow2_bracketing_survives_huge_precision():
    # a 400-bit rational approximation of log2(3), negated against the log
    # term: at 512 bits the tiny positive difference resolves without ever
    # materializing 2**(huge numerator)
    lo, _ = log2_bounds(3, 400)
    value = dv.DegreeValue(-lo, ((3, 1),), precision_bits=512)
    assert value.sign() == 1
    assert value.floor() == 0
    assert value.floor_pow2() == 1


def test_precision_exhaustion_raises():
    lo, _ = log2_bounds(3, 400)
    value = dv.DegreeValue(-lo, ((3, 1),), precision_bits=64)
    with pytest.raises(PrecisionError):
        value.sign()


def test_shifted():
    value = dv.DegreeValue(Fraction(1, 2), ((3, 1),))
    moved = value.shifted(Fraction(3, 2))
    assert moved.rational_part == 2
    assert moved.log_terms == value.log_terms


def test_str_rendering():
    assert str(dv.DegreeValue(Fraction(-1, 2), ((3, 2), (5, -1)))) == (
        "-1/2 + 2*log2(3) - log2(5)"
    )


# ---------------------------------------------------------------------------
# primed ceiling
# ---------------------------------------------------------------------------


def test_ceil_prime_spot_values():
    assert dv.ceil_prime(0) == 1
    assert dv.ceil_prime(Fraction(1, 2)) == 1
    assert dv.ceil_prime(1) == 2
    assert dv.ceil_prime(Fraction(-1, 2)) == -1
    assert dv.ceil_prime(-2) == -2
    assert dv.ceil_prime(Fraction(5, 2)) == 3


@hypothesis.given(st.fractions(min_value=-30, max_value=30, max_denominator=8))
def test_ceil_prime_closed_form(q):
    expected = math.floor(q) + 1 if q >= 0 else math.floor(q)
    assert dv.ceil_prime(q) == expected


def test_ceil_prime_on_degree_values():
    assert dv.ceil_prime(dv.DegreeValue(Fraction(0), ((3, 1),))) == 2
    assert dv.ceil_prime(dv.DegreeValue(Fraction(0), ((3, -1),))) == -2


# ---------------------------------------------------------------------------
# divisors
# ---------------------------------------------------------------------------


def test_from_places_merges():
    d = dv.ArakelovDivisor.from_places([(3, 1), (3, 1), (2, 2)], Fraction(-1, 2))
    assert d.finite_part == ((2, 2), (3, 2))
    assert d.multiplicity(3) == 2
    assert d.multiplicity(7) == 0
    deg = d.deg2()
    assert deg.rational_part == Fraction(3, 2)  # 2 from the prime 2, -1/2 arch
    assert deg.log_terms == ((3, 2),)


def test_from_places_mapping_form():
    d = dv.ArakelovDivisor.from_places({2: -2})
    assert d == dv.ArakelovDivisor.canonical()


def test_divisor_validation():
    with pytest.raises(DomainError):
        dv.ArakelovDivisor.from_places([(4, 1)])
    with pytest.raises(DomainError):
        dv.ArakelovDivisor.from_places([(3, 1)], 0.5)


def test_zero_and_canonical():
    zero = dv.ArakelovDivisor.zero()
    assert zero.deg2().compare(0) == 0
    canonical = dv.ArakelovDivisor.canonical()
    assert canonical.finite_part == ((2, -2),)
    assert canonical.deg2().compare(-2) == 0


def test_reduce_to_archimedean_keeps_degree():
    d = dv.ArakelovDivisor.from_places([(2, 1), (5, 1)], Fraction(1, 4))
    reduced = d.reduce_to_archimedean()
    assert reduced == d.deg2()
    assert reduced.rational_part == Fraction(5, 4)
    assert reduced.log_terms == ((5, 1),)


# ---------------------------------------------------------------------------
# Euler characteristic
# ---------------------------------------------------------------------------


def test_euler_spot_values():
    zero = dv.euler_characteristic(dv.ArakelovDivisor.zero())
    assert (zero.h0, zero.h1, zero.chi) == (2, 0, 2)
    canonical = dv.euler_characteristic(dv.ArakelovDivisor.canonical())
    assert (canonical.h0, canonical.h1, canonical.chi) == (0, 1, -1)
    place3 = dv.euler_characteristic(dv.ArakelovDivisor.from_places([(3, 1)]))
    assert (place3.h0, place3.h1, place3.chi) == (3, 0, 3)


@hypothesis.given(rationals)
def test_euler_identity_on_archimedean_divisors(arch):
    d = dv.ArakelovDivisor(archimedean_log2=arch)
    result = dv.euler_characteristic(d)
    assert result.chi == result.step_value == dv.ceil_prime(arch) + 1
    assert result.h0 == dim_h0(arch)
    assert result.h1 == dim_h1(arch)


@hypothesis.given(
    st.lists(
        st.tuples(st.sampled_from((2,) + ODD_PRIMES), st.integers(-3, 3)),
        max_size=2,
        unique_by=lambda t: t[0],
    ),
    rationals,
)
def test_euler_identity_on_mixed_divisors(places, arch):
    d = dv.ArakelovDivisor.from_places(places, arch)
    result = dv.euler_characteristic(d)
    assert result.chi == result.h0 - result.h1
    assert result.chi == result.step_value


# ---------------------------------------------------------------------------
# scans
# ---------------------------------------------------------------------------


def test_rr_scan_sweep_is_clean():
    report = dv.rr_scan(-6, 6, Fraction(1, 4))
    assert report.passed
    assert report.violations == ()
    xs = {row.deg2 for row in report.rows}
    probe = Fraction(1, 4) / 16
    for n in range(-6, 7):
        assert Fraction(n) in xs
        if n < 6:
            assert Fraction(n) + probe in xs
        if n > -6:
            assert Fraction(n) - probe in xs


def test_rr_scan_rows_are_sorted_and_consistent():
    report = dv.rr_scan(Fraction(-3, 2), Fraction(3, 2), Fraction(1, 2))
    xs = [row.deg2 for row in report.rows]
    assert xs == sorted(xs)
    for row in report.rows:
        assert row.chi == row.h0 - row.h1
        assert row.step_value == dv.ceil_prime(row.deg2) + 1


def test_rr_scan_single_point():
    report = dv.rr_scan(Fraction(1, 3), Fraction(1, 3), 1)
    assert report.passed
    assert report.rows[0].deg2 == Fraction(1, 3)


def test_rr_scan_argument_errors():
    with pytest.raises(DomainError):
        dv.rr_scan(1, 0, 1)
    with pytest.raises(DomainError):
        dv.rr_scan(0, 1, 0)
    with pytest.raises(DomainError):
        dv.rr_scan(0.0, 1, Fraction(1, 2))


# ---------------------------------------------------------------------------
# figure series and emitters
# ---------------------------------------------------------------------------


def test_figure_data_jumps_and_samples():
    series = dv.figure_data(-2, 2, samples_per_unit=4)
    assert series.jump_points == (Fraction(-1), Fraction(0), Fraction(1), Fraction(2))
    assert series.samples[0] == (Fraction(-2), -2)
    assert series.samples[-1] == (Fraction(2), 3)
    for x, value in series.samples:
        assert value == dv.ceil_prime(x)
    # values never decrease left to right
    values = [v for _, v in series.samples]
    assert values == sorted(values)


def test_figure_data_range_validation():
    with pytest.raises(DomainError):
        dv.figure_data(1, 1)
    with pytest.raises(DomainError):
        dv.figure_data(0, 1, samples_per_unit=0)


def test_csv_golden():
    series = dv.figure_data(-1, 1, samples_per_unit=2)
    assert dv.series_to_csv(series) == (
        "deg2,chi_minus_1,is_jump\n"
        "-1,-1,false\n"
        "-1/2,-1,false\n"
        "0,1,true\n"
        "1/2,1,false\n"
        "1,2,true\n"
    )


def test_json_matches_shipped_schema():
    import importlib.resources as resources

    schema = json.loads(
        resources.files("arakelov_rr").joinpath("figure_schema.json").read_text()
    )
    series = dv.figure_data(Fraction(-5, 2), Fraction(5, 2), samples_per_unit=3)
    payload = json.loads(dv.series_to_json(series))
    jsonschema.validate(payload, schema)
    assert payload["lo"] == "-5/2"
    assert payload["jump_points"] == ["-2", "-1", "0", "1", "2"]


def test_svg_is_deterministic_and_structured():
    series = dv.figure_data(-2, 2, samples_per_unit=8)
    svg = dv.series_to_svg(series)
    assert svg == dv.series_to_svg(series)
    assert svg.startswith("<svg")
    assert svg.rstrip().endswith("</svg>")
    # a closed and an open dot per jump
    assert svg.count("<circle") == 2 * len(series.jump_points)
