"""Finite pointed sets, base-point preserving maps, and subset-sum modules.

Level-k data is a k-tuple of exact scalars (int or Fraction).  A pointed
map pushes such a tuple forward by summing over preimages.  The modules
of interest consist of the tuples all of whose subset sums stay inside a
prescribed subset of the scalar line; the exhaustive membership test
lives here together with a linear-time shortcut for symmetric intervals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import DomainError, LevelMismatchError, SizeCapError

Scalar = Union[int, Fraction]

#: Image value that sends an element to the base point.
BASEPOINT = 0

#: The sum over the empty index set.  Shared by every module that speaks
#: about subset sums so the convention lives in exactly one place.
EMPTY_SUM = 0

#: Hard cap on exhaustive subset enumeration (2**k sums).
SUBSET_ENUM_CAP = 24


def _checked_scalar(value: Scalar) -> Scalar:
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        raise DomainError(f"exact scalar (int or Fraction) required, got {value!r}")
    return value


@dataclass(frozen=True)
class PointedMap:
    """A base-point preserving map from the pointed set k+ to m+.

    ``image[i]`` is where element i+1 goes: ``BASEPOINT`` (0) for the base
    point, otherwise a value in 1..target_size.
    """

    source_size: int
    target_size: int
    image: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.source_size < 0 or self.target_size < 0:
            raise DomainError("pointed set sizes must be nonnegative")
        if len(self.image) != self.source_size:
            raise LevelMismatchError(
                f"image has {len(self.image)} entries for source size {self.source_size}"
            )
        for value in self.image:
            if isinstance(value, bool) or not isinstance(value, int):
                raise DomainError(f"image entries must be ints, got {value!r}")
            if not 0 <= value <= self.target_size:
                raise DomainError(
                    f"image entry {value} outside 0..{self.target_size}"
                )

    @classmethod
    def identity(cls, k: int) -> "PointedMap":
        return cls(k, k, tuple(range(1, k + 1)))

    @classmethod
    def collapse(cls, k: int) -> "PointedMap":
        """The fold map k+ -> 1+ sending every non-base element to 1."""
        return cls(k, 1, (1,) * k)

    @classmethod
    def select(cls, j: int, k: int) -> "PointedMap":
        """The map k+ -> 1+ keeping element j and killing the rest."""
        if not 1 <= j <= k:
            raise DomainError(f"select needs 1 <= j <= k, got j={j}, k={k}")
        return cls(k, 1, tuple(1 if i == j else BASEPOINT for i in range(1, k + 1)))

    def compose(self, other: "PointedMap") -> "PointedMap":
        """self after other (apply ``other`` first)."""
        if other.target_size != self.source_size:
            raise LevelMismatchError(
                f"cannot compose: inner target {other.target_size} != outer source {self.source_size}"
            )
        image = tuple(
            BASEPOINT if v == BASEPOINT else self.image[v - 1] for v in other.image
        )
        return PointedMap(other.source_size, self.target_size, image)


@dataclass(frozen=True)
class PointedVector:
    """An element of the level-k module: a k-tuple of exact scalars."""

    entries: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "entries", tuple(_checked_scalar(e) for e in self.entries)
        )

    @property
    def level(self) -> int:
        return len(self.entries)

    def is_basepoint(self) -> bool:
        return all(e == 0 for e in self.entries)

    def total(self) -> Scalar:
        return sum(self.entries, EMPTY_SUM)


def vector(*entries: Scalar) -> PointedVector:
    """Convenience constructor: vector(1, -2, 5)."""
    return PointedVector(tuple(entries))


@dataclass(frozen=True)
class SubsetSpec:
    """A subset of the scalar line used to constrain subset sums.

    Three kinds: ``symmetric`` is the closed interval [-bound, bound],
    ``integers`` its integer points, ``explicit`` a finite set (which must
    contain 0, the empty sum).
    """

    kind: str
    bound: Optional[Scalar] = None
    members: Optional[frozenset] = None

    @classmethod
    def symmetric(cls, bound: Scalar) -> "SubsetSpec":
        bound = _checked_scalar(bound)
        if bound < 0:
            raise DomainError("symmetric interval needs a nonnegative bound")
        return cls("symmetric", bound=bound)

    @classmethod
    def integers(cls, a: int) -> "SubsetSpec":
        if isinstance(a, bool) or not isinstance(a, int) or a < 0:
            raise DomainError("integer interval needs a nonnegative int bound")
        return cls("integers", bound=a)

    @classmethod
    def explicit(cls, values: Iterable[Scalar]) -> "SubsetSpec":
        members = frozenset(_checked_scalar(v) for v in values)
        if EMPTY_SUM not in members:
            raise DomainError("an explicit subset must contain 0 (the empty sum)")
        return cls("explicit", members=members)

    def contains(self, value: Scalar) -> bool:
        if self.kind == "symmetric":
            return -self.bound <= value <= self.bound
        if self.kind == "integers":
            q = Fraction(value)
            return q.denominator == 1 and -self.bound <= q <= self.bound
        return value in self.members


def pushforward(phi: PointedMap, x: PointedVector) -> PointedVector:
    """Apply phi to x: entry l of the result sums the entries phi sends to l."""
    if x.level != phi.source_size:
        raise LevelMismatchError(
            f"vector level {x.level} does not match map source {phi.source_size}"
        )
    sums: list[Scalar] = [EMPTY_SUM] * phi.target_size
    for value, target in zip(x.entries, phi.image):
        if target != BASEPOINT:
            sums[target - 1] = sums[target - 1] + value
    return PointedVector(tuple(sums))


def member_subfunctor(x: PointedVector, subset: SubsetSpec) -> bool:
    """Whether every subset of the entries of x sums into ``subset``.

    Exhaustive over all 2**k index subsets, including the empty one.  This
    is the reference predicate; the linear-time variants below are tested
    against it.  Gray-code order keeps each step to a single add, and a
    violating sum exits immediately.
    """
    k = x.level
    if k > SUBSET_ENUM_CAP:
        raise SizeCapError(
            f"membership would enumerate 2**{k} sums; cap is 2**{SUBSET_ENUM_CAP}"
        )
    if not subset.contains(EMPTY_SUM):
        return False
    entries = x.entries
    total: Scalar = EMPTY_SUM
    picked = 0
    for counter in range(1, 1 << k):
        index = (counter & -counter).bit_length() - 1
        bit = 1 << index
        picked ^= bit
        if picked & bit:
            total = total + entries[index]
        else:
            total = total - entries[index]
        if not subset.contains(total):
            return False
    return True


def member_fast_symmetric(x: PointedVector, bound: Scalar) -> bool:
    """Linear-time membership test for the symmetric interval [-bound, bound].

    Agrees with member_subfunctor(x, SubsetSpec.symmetric(bound)): the
    extreme subset sums are the sum of the positive entries and the sum of
    the negative entries, so checking those two suffices.
    """
    bound = _checked_scalar(bound)
    if bound < 0:
        raise DomainError("symmetric interval needs a nonnegative bound")
    positive = sum((e for e in x.entries if e > 0), EMPTY_SUM)
    negative = sum((e for e in x.entries if e < 0), EMPTY_SUM)
    return positive <= bound and -negative <= bound


def member_norm(x: PointedVector, bound: Scalar) -> bool:
    """Whether the l1 norm of x is at most bound."""
    bound = _checked_scalar(bound)
    return sum((abs(e) for e in x.entries), EMPTY_SUM) <= bound


def smash_action(alpha: PointedVector, a: PointedVector) -> PointedVector:
    """Act by a tuple of unit total mass: entries alpha_i * a_j, row-major in (i, j).

    The acting tuple must satisfy member_norm(alpha, 1); the all-zero
    base point of either factor collapses the product to the base point.
    """
    if not member_norm(alpha, 1):
        raise DomainError("acting tuple must have l1 norm at most 1")
    entries = tuple(ai * aj for ai in alpha.entries for aj in a.entries)
    return PointedVector(entries)


def sum_witness(parts: Sequence[Scalar], subset: SubsetSpec) -> Optional[PointedVector]:
    """Exhibit sum(parts) as a sum inside the subset-constrained module.

    The tuple of parts is itself the witness: its fold image is the total
    and its single-entry projections are the parts.  Returns the witness
    when all its subset sums lie in ``subset``, else None.
    """
    z = PointedVector(tuple(parts))
    return z if member_subfunctor(z, subset) else None
