"""Arakelov divisors on the compactified arithmetic line.

A divisor is a finite-support integer combination of prime places plus a
real coefficient at the archimedean place.  Degrees are carried in log2
units throughout: the prime p contributes multiplicity * log2(p), the
archimedean coefficient contributes itself.  The multiple-of-log2(2)
part stays an exact Fraction; odd primes contribute symbolic log terms
compared via rigorous interval refinement.

The headline identity: h0 - h1 equals the primed ceiling of the degree
plus one, where the primed ceiling is floor(x) + 1 for x >= 0 and
floor(x) for x < 0.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

from .circle_h1 import dim_h1
from .errors import DomainError, FormulaViolation, PrecisionError, SizeCapError
from .exact import (
    MATERIALIZE_CAP_BITS,
    floor_pow2_bracketed,
    floor_pow2_rational,
    is_prime,
    log2_bounds,
    nth_root_floor_fraction,
)
from .interval_h0 import dim_h0

#: Default cap (in bits) for interval refinement of odd-prime logs.
DEFAULT_PRECISION_BITS = 256
_REFINE_START = 32

Rational = Union[int, Fraction]


def _checked_rational(value, what: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise DomainError(f"{what} must be an exact rational, not {value!r}")
    if isinstance(value, str):
        value = Fraction(value)
    if not isinstance(value, (int, Fraction)):
        raise DomainError(f"{what} must be an exact rational, got {value!r}")
    return Fraction(value)


@dataclass(frozen=True)
class DegreeValue:
    """Exact degree in log2 units: a rational plus odd-prime log2 terms.

    ``log_terms`` maps each odd prime p (sorted, nonzero multiplicities
    only) to its integer multiplicity; the represented number is
    rational_part + sum(m * log2(p)).  Such a number is rational only
    when every log term vanishes (unique factorization), so equality and
    order against rationals are decidable: symbolically when rational,
    else by interval refinement that doubles precision up to the cap.
    """

    rational_part: Fraction
    log_terms: tuple[tuple[int, int], ...] = ()
    precision_bits: int = DEFAULT_PRECISION_BITS

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "rational_part", _checked_rational(self.rational_part, "degree")
        )
        merged: dict[int, int] = {}
        for p, m in self.log_terms:
            if p < 3 or p % 2 == 0 or not is_prime(p):
                raise DomainError(f"log term base {p} is not an odd prime")
            if isinstance(m, bool) or not isinstance(m, int):
                raise DomainError(f"log term multiplicity {m!r} is not an int")
            merged[p] = merged.get(p, 0) + m
        object.__setattr__(
            self,
            "log_terms",
            tuple(sorted((p, m) for p, m in merged.items() if m != 0)),
        )
        if self.precision_bits < _REFINE_START:
            raise DomainError("precision cap too small")

    @property
    def is_rational(self) -> bool:
        return not self.log_terms

    def bounds(self, bits: int) -> tuple[Fraction, Fraction]:
        """Honest enclosure of the degree at roughly 2**-bits width."""
        lo = hi = self.rational_part
        for p, m in self.log_terms:
            plo, phi = log2_bounds(p, bits)
            if m >= 0:
                lo, hi = lo + m * plo, hi + m * phi
            else:
                lo, hi = lo + m * phi, hi + m * plo
        return lo, hi

    def compare(self, other: Rational) -> int:
        """Sign of self - other for rational other (-1, 0, or +1).

        A degree with log terms is irrational, so refinement either
        separates it from ``other`` or exhausts the precision cap.
        """
        other = _checked_rational(other, "comparand")
        if self.is_rational:
            diff = self.rational_part - other
            return (diff > 0) - (diff < 0)
        bits = _REFINE_START
        while True:
            lo, hi = self.bounds(bits)
            if lo > other:
                return 1
            if hi < other:
                return -1
            if bits >= self.precision_bits:
                raise PrecisionError(
                    f"cannot separate {self} from {other} within {self.precision_bits} bits"
                )
            bits = min(2 * bits, self.precision_bits)

    def sign(self) -> int:
        return self.compare(0)

    def floor(self) -> int:
        """Largest integer at most the degree."""
        if self.is_rational:
            return math.floor(self.rational_part)
        bits = _REFINE_START
        while True:
            lo, hi = self.bounds(bits)
            if math.floor(lo) == math.floor(hi):
                return math.floor(lo)
            if bits >= self.precision_bits:
                raise PrecisionError(
                    f"floor of {self} undecided within {self.precision_bits} bits"
                )
            bits = min(2 * bits, self.precision_bits)

    def is_integer(self) -> bool:
        return self.is_rational and self.rational_part.denominator == 1

    def _compare_to_log2(self, t: int) -> int:
        """Sign of degree - log2(t) for integer t >= 1, by refinement.

        Only called when the degree is irrational (nontrivial rational
        denominator), so the comparison always resolves or honestly
        exhausts the precision cap.
        """
        if t == 1:
            return self.sign()
        bits = _REFINE_START
        while True:
            lo, hi = self.bounds(bits)
            tlo, thi = log2_bounds(t, bits)
            if lo > thi:
                return 1
            if hi < tlo:
                return -1
            if bits >= self.precision_bits:
                raise PrecisionError(
                    f"cannot separate {self} from log2({t}) within {self.precision_bits} bits"
                )
            bits = min(2 * bits, self.precision_bits)

    def floor_pow2(self) -> int:
        """Integer part of 2**degree, decided exactly.

        With degree = alpha/beta + sum m_p log2(p), the power 2**degree
        is the beta-th root of the integer ratio 2**alpha * prod
        p**(m_p * beta): an integer root computation, not an
        approximation.  When that intermediate would be astronomically
        wide (huge beta), the answer is bracketed by binary search with
        rigorous log2 comparisons instead, which is sound because beta > 1
        makes 2**degree irrational.
        """
        if self.sign() < 0:
            return 0
        if self.is_rational:
            return floor_pow2_rational(self.rational_part)
        beta = self.rational_part.denominator
        k = self.floor()
        if (k + 2) * beta <= MATERIALIZE_CAP_BITS:
            q = Fraction(2) ** self.rational_part.numerator
            for p, m in self.log_terms:
                q *= Fraction(p) ** (m * beta)
            return nth_root_floor_fraction(q, beta)
        if beta == 1:
            raise SizeCapError(
                f"integer part of 2**({self}) is too large to materialize"
            )
        return floor_pow2_bracketed(k, self._compare_to_log2)

    def shifted(self, delta: Rational) -> "DegreeValue":
        delta = _checked_rational(delta, "shift")
        return DegreeValue(self.rational_part + delta, self.log_terms, self.precision_bits)

    def approx(self) -> float:
        lo, hi = self.bounds(64)
        return float((lo + hi) / 2)

    def __str__(self) -> str:
        parts = [str(self.rational_part)]
        for p, m in self.log_terms:
            sign = "+" if m >= 0 else "-"
            coeff = abs(m)
            prefix = "" if coeff == 1 else f"{coeff}*"
            parts.append(f"{sign} {prefix}log2({p})")
        return " ".join(parts)


def ceil_prime(x) -> int:
    """The primed ceiling: floor(x) + 1 for x >= 0, floor(x) for x < 0.

    Agrees with the usual ceiling on non-integer positives and with
    -ceiling(-x) on non-integer negatives; at integers it steps to n + 1
    for n >= 0 (right-continuous, with a jump of two at zero).
    """
    if isinstance(x, DegreeValue):
        return x.floor() + 1 if x.sign() >= 0 else x.floor()
    q = _checked_rational(x, "argument")
    return math.floor(q) + 1 if q >= 0 else math.floor(q)


@dataclass(frozen=True)
class ArakelovDivisor:
    """Finite places with integer multiplicities plus an archimedean
    coefficient, the latter already in log2 units."""

    finite_part: tuple[tuple[int, int], ...] = ()
    archimedean_log2: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        merged: dict[int, int] = {}
        for p, m in self.finite_part:
            if isinstance(p, bool) or not isinstance(p, int) or not is_prime(p):
                raise DomainError(f"finite place {p!r} is not prime")
            if isinstance(m, bool) or not isinstance(m, int):
                raise DomainError(f"multiplicity {m!r} at place {p} is not an int")
            merged[p] = merged.get(p, 0) + m
        object.__setattr__(
            self,
            "finite_part",
            tuple(sorted((p, m) for p, m in merged.items() if m != 0)),
        )
        object.__setattr__(
            self,
            "archimedean_log2",
            _checked_rational(self.archimedean_log2, "archimedean coefficient"),
        )

    @classmethod
    def from_places(
        cls, places: Union[Mapping[int, int], Iterable[tuple[int, int]]], arch: Rational = 0
    ) -> "ArakelovDivisor":
        items = places.items() if isinstance(places, Mapping) else places
        return cls(finite_part=tuple(items), archimedean_log2=arch)

    @classmethod
    def zero(cls) -> "ArakelovDivisor":
        return cls()

    @classmethod
    def canonical(cls) -> "ArakelovDivisor":
        """The divisor -2*(2), of degree -2 in log2 units."""
        return cls(finite_part=((2, -2),))

    def multiplicity(self, p: int) -> int:
        for q, m in self.finite_part:
            if q == p:
                return m
        return 0

    def deg2(self, precision_bits: int = DEFAULT_PRECISION_BITS) -> DegreeValue:
        """Degree in log2 units: arch + sum of m * log2(p) over places."""
        rational = self.archimedean_log2
        terms = []
        for p, m in self.finite_part:
            if p == 2:
                rational += m
            else:
                terms.append((p, m))
        return DegreeValue(rational, tuple(terms), precision_bits)

    def reduce_to_archimedean(self) -> "DegreeValue":
        """Both dimensions depend only on the degree, so any divisor may
        be traded for the same degree concentrated at the archimedean
        place; this returns that degree."""
        return self.deg2()


@dataclass(frozen=True)
class EulerCharacteristic:
    """The two dimensions and both sides of the identity at one divisor."""

    h0: int
    h1: int
    chi: int
    step_value: int
    deg2: DegreeValue


def euler_characteristic(
    divisor: ArakelovDivisor, precision_bits: int = DEFAULT_PRECISION_BITS
) -> EulerCharacteristic:
    """Compute h0, h1, chi = h0 - h1 and verify chi == ceil_prime(deg2) + 1.

    Raises FormulaViolation if the identity fails -- which would mean a
    bug in one of the dimension computations, never a property of the
    divisor.
    """
    deg = divisor.deg2(precision_bits)
    h0 = dim_h0(deg if not deg.is_rational else deg.rational_part)
    h1 = dim_h1(deg if not deg.is_rational else deg.rational_part)
    chi = h0 - h1
    rhs = ceil_prime(deg if not deg.is_rational else deg.rational_part) + 1
    if chi != rhs:
        raise FormulaViolation(
            f"chi = {h0} - {h1} = {chi} but step formula gives {rhs} at degree {deg}"
        )
    return EulerCharacteristic(h0=h0, h1=h1, chi=chi, step_value=rhs, deg2=deg)


@dataclass(frozen=True)
class ScanRow:
    deg2: Fraction
    h0: int
    h1: int
    chi: int
    step_value: int


@dataclass(frozen=True)
class ScanReport:
    rows: tuple[ScanRow, ...]
    violations: tuple[Fraction, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


def rr_scan(lo, hi, step) -> ScanReport:
    """Check the identity on the rational grid lo, lo+step, ..., plus every
    integer in range and probes just left and right of each integer
    (the function is a step function; jumps happen exactly at integers).
    """
    lo = _checked_rational(lo, "lo")
    hi = _checked_rational(hi, "hi")
    step = _checked_rational(step, "step")
    if hi < lo:
        raise DomainError("scan range is empty")
    if step <= 0:
        raise DomainError("step must be positive")
    points = set()
    x = lo
    while x <= hi:
        points.add(x)
        x += step
    probe = min(step, Fraction(1)) / 16
    n = math.ceil(lo)
    while n <= hi:
        points.add(Fraction(n))
        for side in (Fraction(n) - probe, Fraction(n) + probe):
            if lo <= side <= hi:
                points.add(side)
        n += 1
    rows = []
    violations = []
    for x in sorted(points):
        h0 = dim_h0(x)
        h1 = dim_h1(x)
        chi = h0 - h1
        rhs = ceil_prime(x) + 1
        rows.append(ScanRow(deg2=x, h0=h0, h1=h1, chi=chi, step_value=rhs))
        if chi != rhs:
            violations.append(x)
    return ScanReport(rows=tuple(rows), violations=tuple(violations))


@dataclass(frozen=True)
class StepFunctionSeries:
    """Sampled graph of chi - 1 (the primed ceiling) against the degree."""

    lo: Fraction
    hi: Fraction
    samples: tuple[tuple[Fraction, int], ...]
    jump_points: tuple[Fraction, ...]


def figure_data(lo, hi, samples_per_unit: int = 16) -> StepFunctionSeries:
    """Sample chi - 1 on [lo, hi] and list the jump points (the integers
    strictly above lo and at most hi, since the step is right-closed)."""
    lo = _checked_rational(lo, "lo")
    hi = _checked_rational(hi, "hi")
    if not lo < hi:
        raise DomainError("figure range needs lo < hi")
    if not isinstance(samples_per_unit, int) or samples_per_unit < 1:
        raise DomainError("samples_per_unit must be a positive int")
    step = Fraction(1, samples_per_unit)
    samples = []
    x = lo
    while x <= hi:
        samples.append((x, ceil_prime(x)))
        x += step
    jumps = tuple(
        Fraction(n) for n in range(math.floor(lo) + 1, math.floor(hi) + 1)
    )
    return StepFunctionSeries(lo=lo, hi=hi, samples=tuple(samples), jump_points=jumps)


def series_to_csv(series: StepFunctionSeries) -> str:
    """CSV with header deg2,chi_minus_1,is_jump (exact rationals as p/q)."""
    jumps = set(series.jump_points)
    lines = ["deg2,chi_minus_1,is_jump"]
    for x, value in series.samples:
        lines.append(f"{x},{value},{'true' if x in jumps else 'false'}")
    return "\n".join(lines) + "\n"


def series_to_json_obj(series: StepFunctionSeries) -> dict:
    jumps = set(series.jump_points)
    return {
        "lo": str(series.lo),
        "hi": str(series.hi),
        "samples": [
            {"deg2": str(x), "chi_minus_1": value, "is_jump": x in jumps}
            for x, value in series.samples
        ],
        "jump_points": [str(x) for x in series.jump_points],
    }


def series_to_json(series: StepFunctionSeries) -> str:
    return json.dumps(series_to_json_obj(series), indent=2) + "\n"


def series_to_svg(series: StepFunctionSeries) -> str:
    """Self-contained SVG of the step function: closed dot at each jump,
    open dot at the abandoned level."""
    width, height, margin = 640, 400, 48
    xs = [float(Fraction(x)) for x, _ in series.samples]
    values = [v for _, v in series.samples]
    x_lo, x_hi = float(series.lo), float(series.hi)
    v_lo, v_hi = min(values) - 1, max(values) + 1

    def sx(x: float) -> float:
        return margin + (x - x_lo) / (x_hi - x_lo) * (width - 2 * margin)

    def sy(v: float) -> float:
        return height - margin - (v - v_lo) / (v_hi - v_lo) * (height - 2 * margin)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    # Axes with integer ticks.
    parts.append(
        f'<line x1="{margin}" y1="{sy(0)}" x2="{width - margin}" y2="{sy(0)}" '
        'stroke="#888" stroke-width="1"/>'
    )
    if x_lo <= 0 <= x_hi:
        parts.append(
            f'<line x1="{sx(0)}" y1="{margin}" x2="{sx(0)}" y2="{height - margin}" '
            'stroke="#888" stroke-width="1"/>'
        )
    for n in range(math.ceil(x_lo), math.floor(x_hi) + 1):
        parts.append(
            f'<text x="{sx(n)}" y="{height - margin + 16}" font-size="11" '
            f'text-anchor="middle" fill="#444">{n}</text>'
        )
    for v in range(math.ceil(v_lo), math.floor(v_hi) + 1):
        parts.append(
            f'<text x="{margin - 8}" y="{sy(v) + 4}" font-size="11" '
            f'text-anchor="end" fill="#444">{v}</text>'
        )
    # Horizontal segments between consecutive jump points.
    boundaries = [series.lo] + list(series.jump_points) + [series.hi]
    for left, right in zip(boundaries, boundaries[1:]):
        if right <= left:
            continue
        level = ceil_prime(left)
        parts.append(
            f'<line x1="{sx(float(left))}" y1="{sy(level)}" '
            f'x2="{sx(float(right))}" y2="{sy(level)}" '
            'stroke="#1b6ca8" stroke-width="2"/>'
        )
    for j in series.jump_points:
        after = ceil_prime(j)
        before = ceil_prime(j - Fraction(1, 2))
        parts.append(
            f'<circle cx="{sx(float(j))}" cy="{sy(after)}" r="3.5" fill="#1b6ca8"/>'
        )
        parts.append(
            f'<circle cx="{sx(float(j))}" cy="{sy(before)}" r="3.5" fill="white" '
            'stroke="#1b6ca8" stroke-width="1.5"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
