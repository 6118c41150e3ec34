"""Quarrel rules: transformations that impose a quarrel between two players.

A rule is a point in the degree x scope x direction taxonomy together with
the quarrelling pair ``(i, j)``. Every rule copies divisions in which exactly
one of the pair votes yes; it only rewrites divisions in which both vote yes
(the yes side) and/or both vote no (the no side).
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterator
from dataclasses import dataclass
from enum import StrEnum

from .errors import GameInputError, RuleSyntaxError, ScaleError
from .game_core import (
    MAX_EXPLICIT_N,
    Side,
    VotingGame,
    complement,
    enumerate_monotonic_games,
    has_effective_cooperation,
    is_monotonic,
    iter_bits,
    pair_masks,
    submasks,
)

logger = logging.getLogger(__name__)

MAX_DNQ_N = 4


class Degree(StrEnum):
    WEAK = "weak"
    STRONG = "strong"
    CATACLYSMIC = "cataclysmic"


class Scope(StrEnum):
    SYMMETRIC = "symmetric"
    YES_ONLY = "yes_only"
    NO_ONLY = "no_only"


class Direction(StrEnum):
    RECIPROCAL = "reciprocal"
    NON_RECIPROCAL = "non_reciprocal"


class MonotonicityClass(StrEnum):
    MONOTONIC = "monotonic"
    QUASI_MONOTONIC = "quasi-monotonic"
    SUPREMELY_NON_MONOTONIC = "supremely non-monotonic"


DEGREE_TOKENS = {d.value: d for d in Degree}
SCOPE_TOKENS = {"sym": Scope.SYMMETRIC, "yes": Scope.YES_ONLY, "no": Scope.NO_ONLY}
DIRECTION_TOKENS = {"recip": Direction.RECIPROCAL, "nonrecip": Direction.NON_RECIPROCAL}


@dataclass(frozen=True, slots=True)
class QuarrelKind:
    """A quarrel conception without its pair of players."""

    degree: Degree
    scope: Scope
    direction: Direction

    @property
    def quarrels_yes(self) -> bool:
        return self.scope is not Scope.NO_ONLY

    @property
    def quarrels_no(self) -> bool:
        return self.scope is not Scope.YES_ONLY

    @property
    def effectively_reciprocal(self) -> bool:
        # Weak quarrels read the same whichever player initiates them.
        return self.direction is Direction.RECIPROCAL or self.degree is Degree.WEAK

    @property
    def expected_class(self) -> MonotonicityClass | None:
        """Monotonicity class of the yes-only and symmetric conceptions.

        No-only conceptions are conjugates and carry no classification.
        """
        if self.scope is Scope.NO_ONLY:
            return None
        if self.degree is Degree.WEAK:
            return MonotonicityClass.MONOTONIC
        if self.degree is Degree.STRONG and self.scope is Scope.YES_ONLY:
            return MonotonicityClass.QUASI_MONOTONIC
        return MonotonicityClass.SUPREMELY_NON_MONOTONIC

    @property
    def label(self) -> str:
        scope = next(k for k, v in SCOPE_TOKENS.items() if v is self.scope)
        direction = next(k for k, v in DIRECTION_TOKENS.items() if v is self.direction)
        return f"{self.degree.value}:{scope}:{direction}"

    def between(self, i: int, j: int, unanimity_patch: bool = False) -> QuarrelRule:
        return QuarrelRule(self, i, j, unanimity_patch)

    def __str__(self) -> str:
        return self.label


FM = QuarrelKind(Degree.CATACLYSMIC, Scope.YES_ONLY, Direction.RECIPROCAL)
LV = QuarrelKind(Degree.STRONG, Scope.SYMMETRIC, Direction.NON_RECIPROCAL)
ALIASES = {"fm": FM, "lv": LV}

TYPOLOGY_KINDS = tuple(
    QuarrelKind(degree, scope, direction)
    for degree in Degree
    for scope in (Scope.YES_ONLY, Scope.SYMMETRIC)
    for direction in Direction
)
ALL_KINDS = tuple(
    QuarrelKind(degree, scope, direction)
    for degree in Degree
    for scope in Scope
    for direction in Direction
)


@dataclass(frozen=True, slots=True)
class QuarrelRule:
    """A quarrel conception bound to quarreller ``i`` and target ``j``."""

    kind: QuarrelKind
    i: int
    j: int
    unanimity_patch: bool = False

    def __post_init__(self):
        for name, p in (("i", self.i), ("j", self.j)):
            if isinstance(p, bool) or not isinstance(p, int) or p < 1:
                raise GameInputError(f"{name} must be a positive player index, got {p!r}")
        if self.i == self.j:
            raise GameInputError(f"a quarrel needs two distinct players, got i=j={self.i}")

    @property
    def degree(self) -> Degree:
        return self.kind.degree

    @property
    def scope(self) -> Scope:
        return self.kind.scope

    @property
    def direction(self) -> Direction:
        return self.kind.direction

    def reversed(self) -> QuarrelRule:
        return QuarrelRule(self.kind, self.j, self.i, self.unanimity_patch)

    def __str__(self) -> str:
        patch = "+patch" if self.unanimity_patch else ""
        return f"{self.kind.label}:i={self.i},j={self.j}{patch}"


def parse_rule_text(text: str) -> tuple[QuarrelKind, tuple[int, int] | None]:
    """Parse ``<degree>:<scope>:<direction>[:i=..,j=..]`` or ``fm``/``lv`` aliases."""
    parts = text.split(":")
    offsets = []
    pos = 0
    for part in parts:
        offsets.append(pos)
        pos += len(part) + 1

    head = parts[0].strip().lower()
    if head in ALIASES:
        kind = ALIASES[head]
        used = 1
    else:
        if len(parts) < 3:
            raise RuleSyntaxError("expected <degree>:<scope>:<direction> or an alias", text, 0)
        tokens = [p.strip().lower() for p in parts[:3]]
        for index, (token, table, what) in enumerate(
            zip(tokens, (DEGREE_TOKENS, SCOPE_TOKENS, DIRECTION_TOKENS), ("degree", "scope", "direction"))
        ):
            if token not in table:
                choices = "|".join(table)
                raise RuleSyntaxError(
                    f"unknown {what} {token!r} (expected {choices})", text, offsets[index]
                )
        kind = QuarrelKind(DEGREE_TOKENS[tokens[0]], SCOPE_TOKENS[tokens[1]], DIRECTION_TOKENS[tokens[2]])
        used = 3

    rest = parts[used:]
    if not rest:
        return kind, None
    if len(rest) > 1:
        raise RuleSyntaxError("unexpected trailing field", text, offsets[used + 1])
    return kind, _parse_pair(rest[0], text, offsets[used])


def _parse_pair(field: str, text: str, offset: int) -> tuple[int, int]:
    values: dict[str, int] = {}
    pos = offset
    for item in field.split(","):
        key, sep, value = item.partition("=")
        key = key.strip().lower()
        if not sep or key not in ("i", "j") or key in values:
            raise RuleSyntaxError("expected i=<int>,j=<int>", text, pos)
        try:
            values[key] = int(value)
        except ValueError:
            raise RuleSyntaxError(f"player index {value.strip()!r} is not an integer", text, pos) from None
        pos += len(item) + 1
    if set(values) != {"i", "j"}:
        raise RuleSyntaxError("both i and j are required", text, offset)
    return values["i"], values["j"]


def parse_rule(text: str, unanimity_patch: bool = False) -> QuarrelRule:
    kind, pair = parse_rule_text(text)
    if pair is None:
        raise RuleSyntaxError("rule needs a quarrelling pair i=<int>,j=<int>", text, len(text))
    return kind.between(*pair, unanimity_patch=unanimity_patch)


def _yes_side(kind: QuarrelKind, g: VotingGame, s: int, bi: int, bj: int) -> bool:
    """Whether ``S u {i, j}`` wins after the quarrel."""
    reciprocal = kind.direction is Direction.RECIPROCAL
    match kind.degree:
        case Degree.WEAK:
            return g.wins(s | bi) or g.wins(s | bj)
        case Degree.STRONG:
            return g.wins(s) if reciprocal else g.wins(s | bj)
        case Degree.CATACLYSMIC:
            return g.wins(0) if reciprocal else g.wins(bj)


def _no_side(kind: QuarrelKind, g: VotingGame, s: int, bi: int, bj: int) -> bool:
    """Whether ``S`` (both quarrellers voting no) wins after the quarrel."""
    reciprocal = kind.direction is Direction.RECIPROCAL
    match kind.degree:
        case Degree.WEAK:
            return g.wins(s | bi) and g.wins(s | bj)
        case Degree.STRONG:
            return g.wins(s | bi | bj) if reciprocal else g.wins(s | bi)
        case Degree.CATACLYSMIC:
            return g.wins(g.full) if reciprocal else g.wins(g.full & ~bj)


def _transform(kind: QuarrelKind, g: VotingGame, bi: int, bj: int) -> VotingGame:
    winning = set()
    for s in submasks(g.full & ~(bi | bj)):
        # Divisions where the quarrellers disagree are copied unchanged.
        winning.update(m for m in (s | bi, s | bj) if g.wins(m))
        both = s | bi | bj
        if kind.quarrels_yes:
            if _yes_side(kind, g, s, bi, bj):
                winning.add(both)
        elif g.wins(both):
            winning.add(both)
        if kind.quarrels_no:
            if _no_side(kind, g, s, bi, bj):
                winning.add(s)
        elif g.wins(s):
            winning.add(s)
    return VotingGame(g.n, frozenset(winning))


def apply(rule: QuarrelRule, g: VotingGame) -> VotingGame:
    """Derive the game in which ``rule.i`` quarrels with ``rule.j``."""
    if g.n < 2:
        raise GameInputError(f"quarrels need at least two players, got n={g.n}")
    if g.n > MAX_EXPLICIT_N:
        raise ScaleError("quarrel transformation", g.n, MAX_EXPLICIT_N)
    bi, bj = pair_masks(g, rule.i, rule.j)
    if not is_monotonic(g):
        raise GameInputError("quarrels are defined only over initially monotonic games")

    if rule.scope is Scope.NO_ONLY:
        mirror = QuarrelKind(rule.degree, Scope.YES_ONLY, rule.direction)
        derived = complement(_transform(mirror, complement(g), bi, bj))
    else:
        derived = _transform(rule.kind, g, bi, bj)

    if rule.unanimity_patch:
        derived = VotingGame(g.n, (derived.winning | {g.full}) - {0})
    return derived


def fm_direct(g: VotingGame, i: int, j: int) -> VotingGame:
    """Every coalition containing both quarrellers loses; all else is kept."""
    bi, bj = pair_masks(g, i, j)
    both = bi | bj
    return VotingGame(g.n, frozenset(m for m in g.winning if m & both != both))


def lv_direct(g: VotingGame, i: int, j: int) -> VotingGame:
    """Quarreller ``i`` effectively votes against target ``j``.

    With ``j`` voting yes, ``S`` wins iff ``S \\ {i}`` won; with ``j`` voting
    no, ``S`` wins iff ``S u {i}`` won.
    """
    bi, bj = pair_masks(g, i, j)
    return VotingGame(
        g.n,
        frozenset(m for m in g.masks() if g.wins(m & ~bi if m & bj else m | bi)),
    )


def _check_same_players(g: VotingGame, g_hat: VotingGame) -> None:
    if g.n != g_hat.n:
        raise GameInputError(f"games have different player counts ({g.n} vs {g_hat.n})")


@dataclass(frozen=True, slots=True)
class CSRReport:
    """Cooperative-success reduction conditions for one derivation.

    The ``*_witnesses`` fields list failing divisions (as yes-set bitmasks).
    ``yq2_witness``/``nq2_witness`` hold the division showing the required
    reduction when one exists.
    """

    yq1_holds: bool
    yq2_holds: bool
    nq1_holds: bool
    nq2_holds: bool
    yq2_vacuous: bool
    nq2_vacuous: bool
    yq1_witnesses: tuple[int, ...] = ()
    nq1_witnesses: tuple[int, ...] = ()
    yq2_witness: int | None = None
    nq2_witness: int | None = None

    def holds_for(self, kind: QuarrelKind) -> bool:
        """Whether every condition relevant to the sides ``kind`` quarrels on holds."""
        return (
            self.yq1_holds
            and self.nq1_holds
            and (self.yq2_holds or not kind.quarrels_yes)
            and (self.nq2_holds or not kind.quarrels_no)
        )


def verify_csr(g: VotingGame, g_hat: VotingGame, i: int, j: int) -> CSRReport:
    _check_same_players(g, g_hat)
    bi, bj = pair_masks(g, i, j)
    both = bi | bj
    avoiding = sorted(submasks(g.full & ~both))

    yq1 = tuple(s | both for s in avoiding if g_hat.wins(s | both) and not g.wins(s | both))
    nq1 = tuple(s for s in avoiding if g.wins(s) and not g_hat.wins(s))

    yq2_vacuous = not has_effective_cooperation(g, i, j, Side.YES)
    yq2_witness = next(
        (s | both for s in avoiding if g.wins(s | both) and not g_hat.wins(s | both)), None
    )
    nq2_vacuous = not has_effective_cooperation(g, i, j, Side.NO)
    nq2_witness = next((s for s in avoiding if g_hat.wins(s) and not g.wins(s)), None)

    return CSRReport(
        yq1_holds=not yq1,
        yq2_holds=yq2_vacuous or yq2_witness is not None,
        nq1_holds=not nq1,
        nq2_holds=nq2_vacuous or nq2_witness is not None,
        yq2_vacuous=yq2_vacuous,
        nq2_vacuous=nq2_vacuous,
        yq1_witnesses=yq1,
        nq1_witnesses=nq1,
        yq2_witness=yq2_witness,
        nq2_witness=nq2_witness,
    )


@dataclass(frozen=True, slots=True)
class StrongCSRReport:
    """Elimination variant: wherever both quarrellers were decisive, co-voting now fails."""

    yq_holds: bool
    nq_holds: bool
    yq_witnesses: tuple[int, ...] = ()
    nq_witnesses: tuple[int, ...] = ()

    def holds_for(self, kind: QuarrelKind) -> bool:
        return (self.yq_holds or not kind.quarrels_yes) and (self.nq_holds or not kind.quarrels_no)


def verify_strong_csr(g: VotingGame, g_hat: VotingGame, i: int, j: int) -> StrongCSRReport:
    _check_same_players(g, g_hat)
    bi, bj = pair_masks(g, i, j)
    both = bi | bj
    yq, nq = [], []
    for s in sorted(submasks(g.full & ~both)):
        if g.wins(s | both) and not g.wins(s | bi) and not g.wins(s | bj) and g_hat.wins(s | both):
            yq.append(s | both)
        if not g.wins(s) and g.wins(s | bi) and g.wins(s | bj) and not g_hat.wins(s):
            nq.append(s)
    return StrongCSRReport(not yq, not nq, tuple(yq), tuple(nq))


@dataclass(frozen=True, slots=True)
class AmbushWitness:
    division: int
    player: int


@dataclass(frozen=True, slots=True)
class AmbushReport:
    holds: bool
    witnesses: tuple[AmbushWitness, ...] = ()

    def __bool__(self) -> bool:
        return self.holds


def verify_no_ambush_betrayal(g: VotingGame, g_hat: VotingGame, i: int, j: int) -> AmbushReport:
    """Divisions where exactly one quarreller votes yes must keep their outcome."""
    _check_same_players(g, g_hat)
    bi, bj = pair_masks(g, i, j)
    witnesses = []
    for s in sorted(submasks(g.full & ~(bi | bj))):
        for player, b in ((i, bi), (j, bj)):
            if g.wins(s | b) != g_hat.wins(s | b):
                witnesses.append(AmbushWitness(s | b, player))
    return AmbushReport(not witnesses, tuple(witnesses))


Transform = QuarrelRule | Callable[[VotingGame], VotingGame]


def _as_function(rule: Transform) -> Callable[[VotingGame], VotingGame]:
    if isinstance(rule, QuarrelRule):
        return lambda game: apply(rule, game)
    return rule


def verify_symmetry(rule: Transform, g: VotingGame) -> bool:
    """Whether the transformation commutes with taking complements on ``g``."""
    transform = _as_function(rule)
    return complement(transform(g)) == transform(complement(g))


def verify_reciprocality(rule: QuarrelRule, g: VotingGame) -> bool:
    return apply(rule, g) == apply(rule.reversed(), g)


@dataclass(frozen=True, slots=True)
class NMQWitness:
    """A division showing non-monotonicity over the quarrelling pair.

    ``varied`` is the quarreller whose vote is flipped; ``side`` tells which
    disjunct matched (both quarrellers voting yes, or both voting no).
    """

    division: int
    varied: int
    side: Side


def detect_nmq(g: VotingGame, g_hat: VotingGame, i: int, j: int) -> list[NMQWitness]:
    """All NMQ witnesses for the unordered pair ``{i, j}``, under both role assignments."""
    _check_same_players(g, g_hat)
    bi, bj = pair_masks(g, i, j)
    avoiding = sorted(submasks(g.full & ~(bi | bj)))
    found = []
    for varied, b in ((i, bi), (j, bj)):
        for s in avoiding:
            both = s | bi | bj
            if g.wins(both) and g.wins(both & ~b) and not g_hat.wins(both) and g_hat.wins(both & ~b):
                found.append(NMQWitness(both, varied, Side.YES))
            if not g.wins(s) and not g.wins(s | b) and g_hat.wins(s) and not g_hat.wins(s | b):
                found.append(NMQWitness(s, varied, Side.NO))
    return sorted(found, key=lambda w: (w.division, w.varied, w.side))


def _ordered_pairs(n: int) -> Iterator[tuple[int, int]]:
    return ((a, b) for a in range(1, n + 1) for b in range(1, n + 1) if a != b)


def _dnq_applicable(kind: QuarrelKind, g: VotingGame, a: int, b: int) -> bool:
    """Both quarrellers successful with ``a`` not decisive, on a side ``kind`` quarrels on."""
    ba, bb = pair_masks(g, a, b)
    for s in submasks(g.full & ~(ba | bb)):
        both = s | ba | bb
        if kind.quarrels_yes and g.wins(both) and g.wins(both & ~ba):
            return True
        if kind.quarrels_no and not g.wins(s) and not g.wins(s | ba):
            return True
    return False


@dataclass(frozen=True, slots=True)
class DNQReport:
    holds: bool
    games_checked: int
    applicable_games: int
    counterexample: VotingGame | None = None

    def __bool__(self) -> bool:
        return self.holds


def check_dnq(rule: QuarrelRule | QuarrelKind, n: int) -> DNQReport:
    """Disposition to induce non-monotonicity over quarrellers, checked exhaustively.

    Every non-trivial monotonic game on ``n`` players with an applicable
    division (on the sides the rule quarrels on) must, for some labelling of
    the quarrelling pair, yield a derived game carrying an NMQ witness.
    """
    if n > MAX_DNQ_N:
        raise ScaleError("check_dnq", n, MAX_DNQ_N)
    if n < 2:
        raise GameInputError(f"quarrels need at least two players, got n={n}")
    kind = rule.kind if isinstance(rule, QuarrelRule) else rule
    patch = rule.unanimity_patch if isinstance(rule, QuarrelRule) else False

    checked = applicable = 0
    for g in enumerate_monotonic_games(n, require_non_trivial=True):
        checked += 1
        pairs = list(_ordered_pairs(n))
        if not any(_dnq_applicable(kind, g, a, b) for a, b in pairs):
            continue
        applicable += 1
        if not any(detect_nmq(g, apply(kind.between(a, b, patch), g), a, b) for a, b in pairs):
            logger.debug("DNQ counterexample for %s: %s", kind, g.game_id)
            return DNQReport(False, checked, applicable, g)
    return DNQReport(True, checked, applicable)


@dataclass(frozen=True, slots=True)
class SourceDerivation:
    """A monotonic game from which a given game derives under a quarrel between ``i`` and ``j``."""

    source: VotingGame
    i: int
    j: int


def monotone_source_for(g_hat: VotingGame) -> SourceDerivation | None:
    """Rebuild a monotonic source exhibiting ``g_hat``'s non-monotonicity over a pair.

    Returns ``None`` when ``g_hat`` is monotonic (or has a single player).
    The returned source satisfies YQ-1 and NQ-1 against ``g_hat`` and carries
    an NMQ witness for the pair.
    """
    if g_hat.n < 2:
        return None
    full = g_hat.full
    steps = [
        (t, b)
        for t in sorted(g_hat.winning)
        for b in iter_bits(full & ~t)
        if not g_hat.wins(t | b)
    ]
    if not steps:
        return None

    nonempty = [(t, b) for t, b in steps if t]
    if not nonempty:
        # Only the empty coalition misbehaves: drop it.
        _, b = steps[0]
        other = next(iter_bits(full & ~b))
        return SourceDerivation(
            VotingGame(g_hat.n, g_hat.winning - {0}), b.bit_length(), other.bit_length()
        )

    t, bj = nonempty[0]
    bi = t & -t
    pair = bi | bj
    winning = set()
    for m in range(full + 1):
        if m & pair:
            if any(g_hat.wins(x) for x in submasks(m)):
                winning.add(m)
        elif all(g_hat.wins(m | extra) for extra in submasks(full & ~m)):
            winning.add(m)
    return SourceDerivation(VotingGame(g_hat.n, frozenset(winning)), bi.bit_length(), bj.bit_length())
