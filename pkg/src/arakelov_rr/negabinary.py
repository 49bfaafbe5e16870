"""Base -2 digit words and the integer windows they enumerate.

Width-n words over {0, 1}, digit i weighing (-2)**i, hit a window of
2**n consecutive integers exactly once each.  The window endpoints come
from the alternating sequence j(n) = 0, 0, 1, -2, 5, -10, 21, -42, ...
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import OutOfRangeError, SizeCapError

#: Default cap on exhaustive verification (2**n words).
VERIFY_CAP = 20


def j_value(n: int) -> int:
    """n-th term of 0, 0, 1, -2, 5, -10, 21, ... (window endpoints).

    Integer recurrence j(n+1) = -2*j(n) + (n odd); see
    j_value_closed_form for the rational closed form used as cross-check.
    """
    if n < 0:
        raise OutOfRangeError("index must be nonnegative")
    value = 0
    for i in range(n):
        value = -2 * value + (i & 1)
    return value


def j_value_closed_form(n: int) -> int:
    """Same sequence via (-2)**n / 3 - (-1)**n / 2 + 1/6, exactly."""
    if n < 0:
        raise OutOfRangeError("index must be nonnegative")
    value = Fraction((-2) ** n, 3) - Fraction((-1) ** n, 2) + Fraction(1, 6)
    assert value.denominator == 1
    return value.numerator


@dataclass(frozen=True)
class DeltaInterval:
    """The window of 2**n consecutive integers realizable at width n."""

    n: int
    lo: int
    hi: int

    @property
    def width(self) -> int:
        return self.hi - self.lo + 1

    def __contains__(self, q: int) -> bool:
        return self.lo <= q <= self.hi


def delta_interval(n: int) -> DeltaInterval:
    """Window for width n: [j(k), j(k) + 2**n - 1] with k = 2*(n // 2) + 1.

    The lower endpoint is the alternating sum of the odd-index weights
    below n, i.e. the most negative width-n value.
    """
    if n < 1:
        raise OutOfRangeError("width must be positive")
    lo = j_value(2 * (n // 2) + 1)
    return DeltaInterval(n=n, lo=lo, hi=lo + 2 ** n - 1)


@dataclass(frozen=True)
class NegabinaryWord:
    """A digit word, little-endian: digits[i] weighs (-2)**i."""

    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(d not in (0, 1) or isinstance(d, bool) for d in self.digits):
            raise OutOfRangeError("digits must be the ints 0 or 1")

    @property
    def width(self) -> int:
        return len(self.digits)

    def value(self) -> int:
        return decode(self)


def decode(word: NegabinaryWord) -> int:
    """Evaluate a word: sum of digits[i] * (-2)**i (Horner from the top)."""
    value = 0
    for digit in reversed(word.digits):
        value = -2 * value + digit
    return value


def encode(q: int, n: int) -> NegabinaryWord:
    """The unique width-n word for q; q must lie in delta_interval(n).

    Division algorithm: peel the last digit as q mod 2, divide the rest
    by -2, zero-pad to width n.
    """
    window = delta_interval(n)
    if q not in window:
        raise OutOfRangeError(
            f"{q} has no width-{n} word: representable range is [{window.lo}, {window.hi}]"
        )
    digits = []
    while q:
        r = q & 1
        digits.append(r)
        q = (q - r) // -2
    assert len(digits) <= n
    digits.extend([0] * (n - len(digits)))
    return NegabinaryWord(tuple(digits))


@dataclass(frozen=True)
class BijectionReport:
    """Outcome of exhaustively decoding every width-n word."""

    n: int
    interval: DeltaInterval
    distinct_values: int
    injective: bool
    onto_interval: bool
    lo_witness: tuple[int, ...]
    hi_witness: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return self.injective and self.onto_interval


def verify_bijection(n: int, cap: int = VERIFY_CAP) -> BijectionReport:
    """Check that width-n words decode bijectively onto delta_interval(n)."""
    if n < 1:
        raise OutOfRangeError("width must be positive")
    if n > cap:
        raise SizeCapError(f"verification decodes 2**{n} words; cap is 2**{cap}")
    window = delta_interval(n)
    weights = [(-2) ** i for i in range(n)]
    seen: dict[int, int] = {}
    injective = True
    for mask in range(1 << n):
        value = 0
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            value += weights[i]
            m &= m - 1
        if value in seen:
            injective = False
        else:
            seen[value] = mask
    # 2**n distinct values inside a window of width 2**n fill it exactly.
    onto = (
        injective
        and len(seen) == window.width
        and min(seen) == window.lo
        and max(seen) == window.hi
    )

    def digits_of(mask: int) -> tuple[int, ...]:
        return tuple((mask >> i) & 1 for i in range(n))

    return BijectionReport(
        n=n,
        interval=window,
        distinct_values=len(seen),
        injective=injective,
        onto_interval=onto,
        lo_witness=digits_of(seen[min(seen)]),
        hi_witness=digits_of(seen[max(seen)]),
    )
