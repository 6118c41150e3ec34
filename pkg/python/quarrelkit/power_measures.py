"""A priori voting power: Penrose-Banzhaf, normalized Banzhaf and Shapley-Shubik.

All values are exact :class:`fractions.Fraction` instances. Penrose-Banzhaf
is computed from generalized decisiveness and is therefore defined for
non-monotonic games too; Shapley-Shubik is restricted to monotonic games.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from math import factorial

from .errors import CapabilityError, NormalizationError, ScaleError
from .game_core import (
    VotingGame,
    bit,
    check_player,
    is_monotonic,
    yes_decisive_at,
)

logger = logging.getLogger(__name__)

MAX_POWER_N = 20
MAX_ORDERINGS_N = 8


class Measure(StrEnum):
    PB = "pb"
    BZ_INDEX = "bz"
    SS = "ss"


@dataclass(frozen=True, slots=True)
class PowerReport:
    """Per-player power values for one game, indexed by player - 1.

    ``yes_values`` and ``no_values`` are only populated for Penrose-Banzhaf.
    """

    measure: Measure
    values: tuple[Fraction, ...]
    yes_values: tuple[Fraction, ...] | None = None
    no_values: tuple[Fraction, ...] | None = None

    def __getitem__(self, player: int) -> Fraction:
        return self.values[player - 1]

    @property
    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))


def _check_scale(g: VotingGame) -> None:
    if g.n > MAX_POWER_N:
        raise ScaleError("exact power computation", g.n, MAX_POWER_N)


def decisive_count(g: VotingGame, i: int) -> int:
    """Number of divisions in which ``i`` votes yes and is decisive.

    By the decisiveness mirror this also counts the no-side divisions.
    """
    b = check_player(g, i)
    return sum(1 for m in g.masks() if m & b and yes_decisive_at(g, m, b))


def yes_no_power(g: VotingGame, i: int) -> tuple[Fraction, Fraction]:
    """Yes-voting and no-voting power of ``i`` over all ``2**n`` divisions."""
    _check_scale(g)
    b = check_player(g, i)
    divisions = 1 << g.n
    yes = sum(1 for m in g.masks() if m & b and g.wins(m) != g.wins(m & ~b))
    no = sum(1 for m in g.masks() if not m & b and g.wins(m) != g.wins(m | b))
    return Fraction(yes, divisions), Fraction(no, divisions)


def penrose_banzhaf(g: VotingGame, i: int) -> Fraction:
    """Proportion of all divisions in which ``i`` is decisive."""
    yes, no = yes_no_power(g, i)
    return yes + no


def penrose_banzhaf_report(g: VotingGame) -> PowerReport:
    split = [yes_no_power(g, p) for p in range(1, g.n + 1)]
    return PowerReport(
        Measure.PB,
        tuple(yes + no for yes, no in split),
        tuple(yes for yes, _ in split),
        tuple(no for _, no in split),
    )


def banzhaf_index(g: VotingGame) -> PowerReport:
    raw = penrose_banzhaf_report(g).values
    total = sum(raw, Fraction(0))
    if total == 0:
        raise NormalizationError("Banzhaf index is undefined: every player is a dummy")
    return PowerReport(Measure.BZ_INDEX, tuple(v / total for v in raw))


def _require_monotonic(g: VotingGame) -> None:
    if not is_monotonic(g):
        raise CapabilityError(
            "Shapley-Shubik index is defined only for monotonic games (pivots are not unique otherwise)"
        )


def shapley_shubik(g: VotingGame, i: int) -> Fraction:
    """Shapley-Shubik index by coalition counting.

    Each winning ``S`` in which ``i`` is yes-decisive contributes the share of
    orderings where ``S`` is exactly the prefix ending with ``i``.
    """
    _check_scale(g)
    b = check_player(g, i)
    _require_monotonic(g)
    n = g.n
    total = Fraction(0)
    for m in g.masks():
        if m & b and yes_decisive_at(g, m, b):
            size = m.bit_count()
            total += Fraction(factorial(size - 1) * factorial(n - size), factorial(n))
    return total


def shapley_shubik_by_orderings(g: VotingGame, i: int) -> Fraction:
    """Shapley-Shubik index by walking every ordering of the players."""
    if g.n > MAX_ORDERINGS_N:
        raise ScaleError("ordering enumeration", g.n, MAX_ORDERINGS_N)
    check_player(g, i)
    _require_monotonic(g)
    if g.wins(0):
        return Fraction(0)
    pivotal = 0
    orderings = 0
    for order in itertools.permutations(range(1, g.n + 1)):
        orderings += 1
        prefix = 0
        for player in order:
            prefix |= bit(player)
            if g.wins(prefix):
                pivotal += player == i
                break
    return Fraction(pivotal, orderings)


def shapley_shubik_report(g: VotingGame) -> PowerReport:
    _require_monotonic(g)
    return PowerReport(Measure.SS, tuple(shapley_shubik(g, p) for p in range(1, g.n + 1)))


def power_report(g: VotingGame, measure: Measure | str) -> PowerReport:
    measure = Measure(measure)
    logger.debug("computing %s for %s", measure, g.game_id)
    match measure:
        case Measure.PB:
            return penrose_banzhaf_report(g)
        case Measure.BZ_INDEX:
            return banzhaf_index(g)
        case Measure.SS:
            return shapley_shubik_report(g)
