"""Binary voting games stored extensionally as their set of winning coalitions.

Players are numbered 1..n at the public surface. Internally a coalition is an
int bitmask where player ``p`` occupies bit ``p - 1``; a division is identified
by its yes-set, so the same bitmask stands for both.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction
from functools import cache

from .errors import GameInputError, ScaleError

logger = logging.getLogger(__name__)

MAX_ENUMERATION_N = 5
# Largest n for operations that walk all 2**n coalitions.
MAX_EXPLICIT_N = 20
NONE_WITHIN_N = "none-within-n"

PlayerSet = frozenset[int]


class Outcome(StrEnum):
    YES = "yes"
    NO = "no"


class Side(StrEnum):
    YES = "yes"
    NO = "no"


def bit(player: int) -> int:
    return 1 << (player - 1)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the single-bit masks contained in ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


def submasks(mask: int) -> Iterator[int]:
    """Yield every subset of ``mask`` (including 0 and ``mask`` itself), descending."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def to_players(mask: int) -> tuple[int, ...]:
    return tuple(b.bit_length() for b in iter_bits(mask))


def to_mask(players: Iterable[int], n: int) -> int:
    """Convert 1-based player indices to a bitmask, validating the range."""
    mask = 0
    for p in players:
        if isinstance(p, bool) or not isinstance(p, int):
            raise GameInputError(f"player index must be an int, got {p!r}")
        if not 1 <= p <= n:
            raise GameInputError(f"player {p} out of range 1..{n}")
        mask |= bit(p)
    return mask


@dataclass(frozen=True, slots=True)
class VotingGame:
    """A binary voting game over ``n`` players.

    ``winning`` holds the yes-successful coalitions as bitmasks. No monotonicity
    is assumed: games derived by quarrel rules are frequently non-monotonic.
    """

    n: int
    winning: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise GameInputError(f"player count must be >= 0, got {self.n}")
        full = self.full
        for mask in self.winning:
            if mask < 0 or mask & ~full:
                raise GameInputError(
                    f"coalition {mask:#x} is not a subset of the {self.n} players"
                )

    @classmethod
    def from_table(cls, n: int, table: int) -> VotingGame:
        """Build a game from its truth table (bit ``S`` set iff ``S`` wins)."""
        return cls(n, frozenset(m for m in range(1 << n) if table >> m & 1))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def table(self) -> int:
        table = 0
        for mask in self.winning:
            table |= 1 << mask
        return table

    @property
    def game_id(self) -> str:
        """Stable identifier: player count plus the hex truth table."""
        width = max(1, (1 << self.n) // 4)
        return f"n{self.n}:{self.table:0{width}x}"

    def wins(self, mask: int) -> bool:
        return mask in self.winning

    def masks(self) -> range:
        return range(1 << self.n)

    def winning_sets(self) -> list[tuple[int, ...]]:
        """Winning coalitions as 1-based tuples, sorted ascending by bitmask."""
        return [to_players(m) for m in sorted(self.winning)]

    def __repr__(self) -> str:
        sets = ", ".join("{" + ",".join(map(str, s)) + "}" for s in self.winning_sets())
        return f"VotingGame(n={self.n}, winning=[{sets}])"


def new_from_winning_sets(n: int, winning: Iterable[Iterable[int]]) -> VotingGame:
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise GameInputError(f"player count must be a non-negative int, got {n!r}")
    return VotingGame(n, frozenset(to_mask(s, n) for s in winning))


def new_weighted(weights: Sequence[Fraction | int | str], quota: Fraction | int | str) -> VotingGame:
    """Weighted majority game: ``S`` wins iff its total weight reaches ``quota``."""
    if not weights:
        raise GameInputError("weights must not be empty")
    ws = [Fraction(w) for w in weights]
    q = Fraction(quota)
    if len(ws) > MAX_EXPLICIT_N:
        raise ScaleError("weighted game construction", len(ws), MAX_EXPLICIT_N)
    if any(w < 0 for w in ws):
        raise GameInputError("weights must be nonnegative")
    if q <= 0:
        raise GameInputError(f"quota must be positive, got {q}")
    n = len(ws)
    totals = [Fraction(0)] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        totals[mask] = totals[mask ^ low] + ws[low.bit_length() - 1]
    return VotingGame(n, frozenset(m for m in range(1 << n) if totals[m] >= q))


def check_player(g: VotingGame, i: int) -> int:
    if isinstance(i, bool) or not isinstance(i, int) or not 1 <= i <= g.n:
        raise GameInputError(f"player {i!r} out of range 1..{g.n}")
    return bit(i)


def outcome(g: VotingGame, yes_set: Iterable[int]) -> Outcome:
    return Outcome.YES if g.wins(to_mask(yes_set, g.n)) else Outcome.NO


def complement(g: VotingGame) -> VotingGame:
    """The complement game: ``T`` wins iff the complement of ``T`` loses in ``g``."""
    full = g.full
    return VotingGame(g.n, frozenset(t for t in g.masks() if not g.wins(full ^ t)))


def is_monotonic(g: VotingGame) -> bool:
    # Closure under adding one player implies closure under supersets.
    full = g.full
    return all(g.wins(m | b) for m in g.winning for b in iter_bits(full & ~m))


def violating_pairs(g: VotingGame) -> list[tuple[int, int]]:
    """All ``(T, S)`` with ``T`` a proper subset of ``S``, ``T`` winning and ``S`` losing."""
    full = g.full
    pairs = []
    for t in sorted(g.winning):
        rest = full & ~t
        for extra in sorted(submasks(rest)):
            if extra and not g.wins(t | extra):
                pairs.append((t, t | extra))
    return pairs


def is_non_trivial(g: VotingGame) -> bool:
    return 0 < len(g.winning) < (1 << g.n)


def satisfies_unanimity(g: VotingGame) -> bool:
    return g.wins(g.full) and not g.wins(0)


def yes_decisive_at(g: VotingGame, mask: int, b: int) -> bool:
    return g.wins(mask) != g.wins(mask & ~b)


def no_decisive_at(g: VotingGame, mask: int, b: int) -> bool:
    return g.wins(mask) != g.wins(mask | b)


def is_yes_decisive(g: VotingGame, yes_set: Iterable[int], i: int) -> bool:
    """Whether ``i``, voting yes, flips the outcome by switching to no.

    Membership of the yes-set and of the yes-set without ``i`` differ. This
    covers both the ordinary clause and the non-monotonic one in which ``i``
    is decisive while disagreeing with the outcome.
    """
    b = check_player(g, i)
    mask = to_mask(yes_set, g.n)
    if not mask & b:
        raise GameInputError(f"player {i} must vote yes to be yes-decisive")
    return yes_decisive_at(g, mask, b)


def is_no_decisive(g: VotingGame, yes_set: Iterable[int], i: int) -> bool:
    b = check_player(g, i)
    mask = to_mask(yes_set, g.n)
    if mask & b:
        raise GameInputError(f"player {i} must vote no to be no-decisive")
    return no_decisive_at(g, mask, b)


def is_dummy(g: VotingGame, i: int) -> bool:
    b = check_player(g, i)
    # Yes-decisiveness at S and no-decisiveness at S\{i} coincide, so one side suffices.
    return not any(yes_decisive_at(g, m, b) for m in g.masks() if m & b)


def is_dictator(g: VotingGame, i: int) -> bool:
    b = check_player(g, i)
    return g.wins(b) and not any(g.wins(m) for m in g.masks() if not m & b)


def pair_masks(g: VotingGame, i: int, j: int) -> tuple[int, int]:
    """Validate a quarrelling pair and return its two bits."""
    bi = check_player(g, i)
    bj = check_player(g, j)
    if i == j:
        raise GameInputError(f"a quarrel needs two distinct players, got i=j={i}")
    return bi, bj


def has_effective_cooperation(g: VotingGame, i: int, j: int, side: Side | str) -> bool:
    """Membership of ``g`` in the effective-cooperation class for ``side``."""
    bi, bj = pair_masks(g, i, j)
    side = Side(side)
    rest = g.full & ~(bi | bj)
    if side is Side.YES:
        return any(
            yes_decisive_at(g, s | bi | bj, bi) and yes_decisive_at(g, s | bi | bj, bj)
            for s in submasks(rest)
        )
    return any(
        no_decisive_at(g, s, bi) and no_decisive_at(g, s, bj) for s in submasks(rest)
    )


@dataclass(frozen=True, slots=True)
class MonotonicityReport:
    """Distance from monotonicity.

    ``min_k`` is ``None`` when no k within n suffices (serialized as
    ``"none-within-n"``); that only happens when the empty coalition wins
    and some coalition loses.
    """

    is_monotonic: bool
    min_k: int | None
    violating_pairs: tuple[tuple[int, int], ...]

    @property
    def unbounded(self) -> bool:
        return self.min_k is None

    @property
    def quasi_monotonic(self) -> bool:
        return self.min_k is not None and self.min_k <= 1


def min_k_monotonicity(g: VotingGame) -> MonotonicityReport:
    n = g.n
    if n > MAX_EXPLICIT_N:
        raise ScaleError("k-monotonicity", n, MAX_EXPLICIT_N)
    size = 1 << n
    # largest[T]: size of the largest losing subset of T, -1 if every subset wins.
    largest = [-1] * size
    for t in range(size):
        if not g.wins(t):
            largest[t] = t.bit_count()
        else:
            largest[t] = max((largest[t ^ b] for b in iter_bits(t)), default=-1)
    # loses_above[T]: some superset of T (T included) loses.
    loses_above = [False] * size
    for t in reversed(range(size)):
        loses_above[t] = not g.wins(t) or any(
            loses_above[t | b] for b in iter_bits(g.full & ~t)
        )

    min_k: int | None = 0
    for t in g.winning:
        if not any(loses_above[t | b] for b in iter_bits(g.full & ~t)):
            continue
        if largest[t] < 0:
            min_k = None
            break
        min_k = max(min_k, t.bit_count() - largest[t])

    pairs = tuple(violating_pairs(g))
    report = MonotonicityReport(is_monotonic=not pairs, min_k=min_k, violating_pairs=pairs)
    logger.debug("min_k for %s: %s", g.game_id, NONE_WITHIN_N if min_k is None else min_k)
    return report


def is_k_monotonic(g: VotingGame, k: int) -> bool:
    """The k-monotonicity predicate evaluated literally over all (S, T, K)."""
    for s in g.masks():
        if g.wins(s):
            continue
        for t in submasks(s):
            if t == s or not g.wins(t):
                continue
            members = list(iter_bits(t))
            if not any(
                not g.wins(t & ~sum(ks))
                for size in range(min(k, len(members)) + 1)
                for ks in itertools.combinations(members, size)
            ):
                return False
    return True


@cache
def _monotone_tables(n: int) -> tuple[int, ...]:
    # A monotone function on n players splits on the last player into two
    # monotone functions f0 <= f1 on n - 1 players.
    if n == 0:
        return (0b0, 0b1)
    lower = _monotone_tables(n - 1)
    shift = 1 << (n - 1)
    return tuple(
        sorted(f0 | (f1 << shift) for f0 in lower for f1 in lower if f0 & ~f1 == 0)
    )


def enumerate_monotonic_games(n: int, require_non_trivial: bool = False) -> Iterator[VotingGame]:
    """Yield every monotonic game on ``n`` players exactly once, by truth table."""
    if n > MAX_ENUMERATION_N:
        raise ScaleError("monotonic game enumeration", n, MAX_ENUMERATION_N)
    if n < 0:
        raise GameInputError(f"player count must be >= 0, got {n}")
    everything = (1 << (1 << n)) - 1
    for table in _monotone_tables(n):
        if require_non_trivial and table in (0, everything):
            continue
        yield VotingGame.from_table(n, table)


def permute_players(g: VotingGame, perm: Sequence[int]) -> VotingGame:
    """Relabel players: player ``p`` becomes ``perm[p - 1]``."""
    if sorted(perm) != list(range(1, g.n + 1)):
        raise GameInputError(f"{list(perm)} is not a permutation of 1..{g.n}")
    images = [bit(p) for p in perm]

    def image(mask: int) -> int:
        return sum(images[b.bit_length() - 1] for b in iter_bits(mask))

    return VotingGame(g.n, frozenset(image(m) for m in g.winning))
