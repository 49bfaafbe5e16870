"""Admissible generation of symmetric integer intervals, and the H0 dimension.

A set G of nonzero integers in [-a, a] generates the interval when every
target j in [-a, a] is the sum of some subset Z of G that is *admissible*:
all subset sums of Z stay inside [-a, a] (equivalently, the positive part
of Z sums to at most a and the negative part to at least -a).

This module provides the admissibility test, full-interval coverage via a
bitmask dynamic program, lexicographically-least witnesses, an explicit
size-(n+1) construction for every a with 2**(n-1) <= a < 2**n, a
deterministic brute-force search for minimal generating sets, and the
resulting dimension formula for nonnegative degrees.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DomainError, OutOfRangeError, SizeCapError
from .exact import floor_pow2_rational
from .gamma import EMPTY_SUM

#: Largest bound the exhaustive minimal-set search accepts by default.
DEFAULT_SEARCH_BUDGET = 31


def _checked_bound(a: int) -> int:
    if isinstance(a, bool) or not isinstance(a, int) or a < 0:
        raise DomainError(f"interval bound must be a nonnegative int, got {a!r}")
    return a


def _checked_generators(generators: Iterable[int], a: int) -> tuple[int, ...]:
    gs = list(generators)
    if len(set(gs)) != len(gs):
        raise DomainError("generators must be distinct")
    for g in gs:
        if isinstance(g, bool) or not isinstance(g, int):
            raise DomainError(f"generators must be ints, got {g!r}")
        if g == 0 or abs(g) > a:
            raise DomainError(f"generator {g} outside [-{a}, {a}] or zero")
    return tuple(sorted(gs))


def is_admissible(zs: Iterable[int], a: int) -> bool:
    """Whether every subset sum of zs stays in [-a, a].

    Positive and negative parts bound all subset sums from above and
    below, so two comparisons decide it.
    """
    a = _checked_bound(a)
    pos = neg = EMPTY_SUM
    for z in zs:
        if z > 0:
            pos += z
        else:
            neg -= z
    return pos <= a and neg <= a


def _reachable(generators: Sequence[int], a: int) -> dict[int, int]:
    """Admissible (positive, negative) load pairs over subsets of generators.

    Key: negative load q in 0..a.  Value: bitmask with bit p set when some
    subset has positive part p and negative part q.  Admissibility prunes
    as it goes: loads above a are dropped.
    """
    full = (1 << (a + 1)) - 1
    states: dict[int, int] = {0: 1}
    for g in generators:
        if g > 0:
            for q in states:
                states[q] |= (states[q] << g) & full
        else:
            h = -g
            for q, mask in sorted(states.items(), reverse=True):
                if q + h <= a:
                    states[q + h] = states.get(q + h, 0) | mask
    return states


def _coverage(states: dict[int, int], a: int) -> int:
    """Bitmask over [-a, a] (bit j + a) of sums p - q reachable admissibly."""
    out = 0
    for q, mask in states.items():
        out |= mask << (a - q)
    return out


def covers(generators: Iterable[int], a: int) -> bool:
    """Whether every j in [-a, a] has an admissible witness subset."""
    a = _checked_bound(a)
    gs = _checked_generators(generators, a)
    return _coverage(_reachable(gs, a), a) == (1 << (2 * a + 1)) - 1


def first_unrealizable(generators: Iterable[int], a: int) -> Optional[int]:
    """Smallest j in [-a, a] with no admissible witness, or None."""
    a = _checked_bound(a)
    gs = _checked_generators(generators, a)
    mask = _coverage(_reachable(gs, a), a)
    for j in range(-a, a + 1):
        if not (mask >> (j + a)) & 1:
            return j
    return None


def _suffix_states(gs: Sequence[int], a: int) -> list[dict[int, int]]:
    """suffix[i] = reachable loads using only generators gs[i:]."""
    n = len(gs)
    full = (1 << (a + 1)) - 1
    suffix: list[dict[int, int]] = [dict() for _ in range(n + 1)]
    suffix[n] = {0: 1}
    for i in range(n - 1, -1, -1):
        g = gs[i]
        prev = suffix[i + 1]
        cur = dict(prev)
        if g > 0:
            for q, mask in prev.items():
                cur[q] = cur[q] | ((mask << g) & full)
        else:
            h = -g
            for q, mask in prev.items():
                if q + h <= a:
                    cur[q + h] = cur.get(q + h, 0) | mask
        suffix[i] = cur
    return suffix


def _completable(states: dict[int, int], j: int, p: int, q: int, a: int) -> bool:
    """Can loads (p, q) be extended by some state to total sum j admissibly?"""
    for q2, mask in states.items():
        if q + q2 > a:
            continue
        p2 = j - p + q + q2
        if 0 <= p2 <= a - p and (mask >> p2) & 1:
            return True
    return False


def _realize_greedy(
    j: int, gs: Sequence[int], a: int, suffix: Sequence[dict[int, int]]
) -> Optional[tuple[int, ...]]:
    if not _completable(suffix[0], j, 0, 0, a):
        return None
    chosen: list[int] = []
    p = q = 0
    for i, g in enumerate(gs):
        if _completable(suffix[i + 1], j, p, q, a):
            continue
        # Skipping g is infeasible, so every completion takes it (and any
        # completion is admissible, so the new loads cannot overflow).
        if g > 0:
            p += g
        else:
            q -= g
        chosen.append(g)
    return tuple(chosen)


def realize(j: int, generators: Iterable[int], a: int) -> Optional[tuple[int, ...]]:
    """An admissible subset of generators summing to j, or None.

    Among all witnesses, returns the one least in indicator order over
    the sorted generators: earlier generators are left out whenever some
    completion without them exists.
    """
    a = _checked_bound(a)
    if abs(j) > a:
        raise OutOfRangeError(f"target {j} outside [-{a}, {a}]")
    gs = _checked_generators(generators, a)
    return _realize_greedy(j, gs, a, _suffix_states(gs, a))


@dataclass(frozen=True, eq=True)
class GeneratingCertificate:
    """A generating set with one admissible witness per target."""

    a: int
    generators: tuple[int, ...]
    witnesses: dict[int, tuple[int, ...]] = field(hash=False)

    def validate(self) -> bool:
        """Recheck every witness independently of how it was found."""
        if sorted(self.witnesses) != list(range(-self.a, self.a + 1)):
            return False
        gset = set(self.generators)
        for target, witness in self.witnesses.items():
            zs = list(witness)
            if len(set(zs)) != len(zs) or not set(zs) <= gset:
                return False
            if sum(zs, EMPTY_SUM) != target or not is_admissible(zs, self.a):
                return False
        return True


def generates(generators: Iterable[int], a: int) -> Optional[GeneratingCertificate]:
    """Certificate with witnesses for all of [-a, a], or None if any target fails."""
    a = _checked_bound(a)
    gs = _checked_generators(generators, a)
    states = _reachable(gs, a)
    if _coverage(states, a) != (1 << (2 * a + 1)) - 1:
        return None
    suffix = _suffix_states(gs, a)
    witnesses = {}
    for j in range(-a, a + 1):
        w = _realize_greedy(j, gs, a, suffix)
        assert w is not None
        witnesses[j] = w
    return GeneratingCertificate(a=a, generators=gs, witnesses=witnesses)


#: Tabulated minimal generating sets for small bounds (1 <= a <= 15).
TABULATED_SETS: dict[int, tuple[int, ...]] = {
    1: (-1, 1),
    2: (-2, 1, 2),
    3: (-3, 1, 2),
    4: (-3, -1, 1, 3),
    5: (-4, -1, 2, 3),
    6: (-6, 1, 2, 3),
    7: (-7, 1, 2, 4),
    8: (-7, -1, 1, 2, 5),
    9: (-8, -1, 1, 3, 5),
    10: (-10, 1, 2, 3, 4),
    11: (-11, 1, 2, 3, 5),
    12: (-12, 1, 2, 3, 6),
    13: (-13, 1, 2, 3, 7),
    14: (-14, 1, 2, 4, 7),
    15: (-15, 1, 2, 4, 8),
}


def explicit_generating_set(a: int) -> tuple[int, ...]:
    """A generating set of size n + 1 for [-a, a], where 2**(n-1) <= a < 2**n.

    Values up to 15 are tabulated minimal sets.  Beyond that the set is
    {-a} together with n positive elements: near-powers of two chosen so
    that subsets of the positive part hit every value in [0, a], with
    total exactly a (which makes every witness automatically admissible
    on the positive side).
    """
    if isinstance(a, bool) or not isinstance(a, int) or a < 1:
        raise OutOfRangeError("bound must be a positive int")
    if a <= 15:
        return TABULATED_SETS[a]
    n = a.bit_length()
    sigma = 2 ** (n - 1) - 1
    rest = a - sigma  # in 1..2**(n-1), since 2**(n-1) <= a <= 2**n - 1
    small_powers = [2 ** j for j in range(n - 2)]
    if a == 2 ** (n - 1):
        positives = small_powers + [2 ** (n - 2) - 2, 3]
    elif rest & (rest - 1) == 0 and rest <= 2 ** (n - 2):
        positives = small_powers + [2 ** (n - 2) - 1, rest + 1]
    else:
        positives = small_powers + [2 ** (n - 2), rest]
    return tuple(sorted([-a] + positives))


def lower_bound_size(a: int) -> int:
    """Least c with 2**c >= 2a + 1: a generating set needs at least c elements,
    since its subsets must produce 2a + 1 distinct sums."""
    return (2 * _checked_bound(a)).bit_length()


@dataclass(frozen=True)
class SearchOptions:
    """Knobs for the exhaustive minimal-generating-set search."""

    max_cardinality: Optional[int] = None
    parallel_width: int = 1
    report_all_minima: bool = False
    budget: int = DEFAULT_SEARCH_BUDGET
    prune: bool = True


@dataclass(frozen=True, eq=True)
class MinSearchResult:
    size: int
    witness: tuple[int, ...]
    certificate: GeneratingCertificate = field(hash=False)
    all_minima: Optional[tuple[tuple[int, ...], ...]] = None


def _scan_shard(
    universe: tuple[int, ...],
    a: int,
    size: int,
    prune: bool,
    collect_all: bool,
    shard: int,
    nshards: int,
) -> list[tuple[int, tuple[int, ...]]]:
    """Scan every nshards-th combination starting at `shard`, in lex order.

    Returns (absolute_index, candidate) pairs; stops at the first hit
    unless collecting all of them.
    """
    hits: list[tuple[int, tuple[int, ...]]] = []
    combos = itertools.islice(
        itertools.combinations(universe, size), shard, None, nshards
    )
    for local_index, cand in enumerate(combos):
        if prune:
            pos = sum(v for v in cand if v > 0)
            neg = -sum(v for v in cand if v < 0)
            if pos < a or neg < a:
                continue
        if covers(cand, a):
            hits.append((shard + local_index * nshards, cand))
            if not collect_all:
                break
    return hits


def _scan_level(
    universe: tuple[int, ...],
    a: int,
    size: int,
    prune: bool,
    workers: int,
    collect_all: bool,
) -> list[tuple[int, ...]]:
    if workers <= 1:
        hits = _scan_shard(universe, a, size, prune, collect_all, 0, 1)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(
                    _scan_shard, universe, a, size, prune, collect_all, w, workers
                )
                for w in range(workers)
            ]
            hits = sorted(h for f in futures for h in f.result())
    candidates = [cand for _, cand in hits]
    return candidates if collect_all else candidates[:1]


def min_generating_set(a: int, options: Optional[SearchOptions] = None) -> MinSearchResult:
    """Smallest generating set of [-a, a], by cardinality then lex order.

    Enumerates candidate subsets of the nonzero integers in [-a, a] level
    by level starting at the counting lower bound; within a level,
    combinations are scanned in lexicographic order of the sorted
    universe, so the reported witness is deterministic (and identical for
    any parallel width).  The balanced-endpoint prune is a heuristic: a
    pruned level that yields nothing is rescanned unpruned before the
    search moves up a level.
    """
    opts = options or SearchOptions()
    a = _checked_bound(a)
    if a > opts.budget:
        raise SizeCapError(
            f"exhaustive search capped at a = {opts.budget}; "
            "use explicit_generating_set for larger bounds"
        )
    universe = tuple(v for v in range(-a, a + 1) if v != 0)
    start = lower_bound_size(a)
    stop = opts.max_cardinality if opts.max_cardinality is not None else len(universe)
    if stop < start:
        raise DomainError(
            f"max_cardinality {stop} is below the counting lower bound {start}"
        )
    for size in range(start, stop + 1):
        prune = opts.prune and a != 2
        found = _scan_level(universe, a, size, prune, opts.parallel_width, opts.report_all_minima)
        if not found and prune:
            found = _scan_level(universe, a, size, False, opts.parallel_width, opts.report_all_minima)
        if found:
            witness = found[0]
            certificate = generates(witness, a)
            assert certificate is not None
            return MinSearchResult(
                size=size,
                witness=witness,
                certificate=certificate,
                all_minima=tuple(found) if opts.report_all_minima else None,
            )
    raise SizeCapError(f"no generating set with at most {stop} elements")


def floor_pow2(deg2: Fraction) -> int:
    """Integer part of 2**deg2 for rational deg2 >= 0, decided exactly.

    Clears the denominator -- floor(2**(p/q)) is the integer q-th root of
    2**p -- with a log-comparison bracketing fallback for denominators
    too large to materialize that way.
    """
    q = Fraction(deg2)
    if q < 0:
        raise DomainError("floor_pow2 expects a nonnegative exponent")
    return floor_pow2_rational(q)


def dim_h0(deg2) -> int:
    """Module dimension at degree deg2 (log2 units): 0 below degree 0,
    otherwise n + 1 where 2**(n-1) <= floor(2**deg2) < 2**n.

    Accepts an exact rational or any degree carrier exposing sign() and
    floor_pow2().
    """
    if isinstance(deg2, bool) or isinstance(deg2, float):
        raise DomainError("degree must be an exact rational or degree carrier")
    if isinstance(deg2, (int, Fraction)):
        x = Fraction(deg2)
        if x < 0:
            return 0
        return floor_pow2(x).bit_length() + 1
    if deg2.sign() < 0:
        return 0
    return deg2.floor_pow2().bit_length() + 1
