"""Quarrel postulates, exhaustive paradox scans and the executable theorem suite."""

from __future__ import annotations

import logging
from collections import defaultdict
from collections.abc import Iterator
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction

from .errors import CapabilityError, GameInputError, ScaleError
from .game_core import (
    NONE_WITHIN_N,
    VotingGame,
    enumerate_monotonic_games,
    is_dummy,
    is_monotonic,
    min_k_monotonicity,
    new_from_winning_sets,
)
from .power_measures import (
    Measure,
    banzhaf_index,
    penrose_banzhaf,
    shapley_shubik,
    yes_no_power,
)
from .quarrel_transforms import (
    ALL_KINDS,
    FM,
    LV,
    TYPOLOGY_KINDS,
    Degree,
    Direction,
    MonotonicityClass,
    QuarrelKind,
    QuarrelRule,
    Scope,
    apply,
    detect_nmq,
    monotone_source_for,
    verify_csr,
)

logger = logging.getLogger(__name__)

MAX_SCAN_N = 4
FAMILY_SIZES = (3, 4, 5)


class Postulate(StrEnum):
    STANDARD = "standard"
    YES_POWER = "yes"
    NO_POWER = "no"


class VerdictStatus(StrEnum):
    HOLDS = "holds"
    VIOLATED = "violated"
    CAPABILITY_LIMITED = "capability_limited"


@dataclass(frozen=True, slots=True)
class PostulateVerdict:
    """Outcome of one postulate check; power values are ``None`` when capability-limited."""

    postulate: Postulate
    measure: Measure
    rule: QuarrelRule
    game_id: str
    status: VerdictStatus
    psi_i_before: Fraction | None = None
    psi_i_after: Fraction | None = None
    psi_j_before: Fraction | None = None
    psi_j_after: Fraction | None = None
    witness: int | None = None
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.status is VerdictStatus.HOLDS

    @property
    def dummy_gains(self) -> bool:
        """A quarreller with no power before the quarrel has some afterwards."""
        return any(
            before == 0 and after is not None and after > 0
            for before, after in (
                (self.psi_i_before, self.psi_i_after),
                (self.psi_j_before, self.psi_j_after),
            )
        )

    @property
    def sort_key(self) -> tuple[str, int, int]:
        return self.game_id, self.rule.i, self.rule.j


def _component(postulate: Postulate, measure: Measure, g: VotingGame, player: int) -> Fraction:
    if postulate is Postulate.STANDARD:
        match measure:
            case Measure.PB:
                return penrose_banzhaf(g, player)
            case Measure.BZ_INDEX:
                return banzhaf_index(g)[player]
            case Measure.SS:
                return shapley_shubik(g, player)
    yes, no = yes_no_power(g, player)
    return yes if postulate is Postulate.YES_POWER else no


def _check_compatible(postulate: Postulate, measure: Measure) -> None:
    if postulate is not Postulate.STANDARD and measure is not Measure.PB:
        raise CapabilityError(
            f"the {postulate} postulate needs a yes/no power split, which only pb provides"
        )


def check_postulate(
    postulate: Postulate | str,
    measure: Measure | str,
    rule: QuarrelRule,
    g: VotingGame,
) -> PostulateVerdict:
    """Whether neither quarreller gains power under ``rule`` applied to ``g``."""
    postulate, measure = Postulate(postulate), Measure(measure)
    _check_compatible(postulate, measure)
    g_hat = apply(rule, g)
    i, j = rule.i, rule.j
    before = (_component(postulate, measure, g, i), _component(postulate, measure, g, j))
    try:
        after = (_component(postulate, measure, g_hat, i), _component(postulate, measure, g_hat, j))
    except CapabilityError as exc:
        return PostulateVerdict(
            postulate, measure, rule, g.game_id, VerdictStatus.CAPABILITY_LIMITED,
            psi_i_before=before[0], psi_j_before=before[1], note=str(exc),
        )

    witness = i if after[0] > before[0] else j if after[1] > before[1] else None
    return PostulateVerdict(
        postulate,
        measure,
        rule,
        g.game_id,
        VerdictStatus.HOLDS if witness is None else VerdictStatus.VIOLATED,
        psi_i_before=before[0],
        psi_i_after=after[0],
        psi_j_before=before[1],
        psi_j_after=after[1],
        witness=witness,
    )


def _ordered_pairs(n: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if a != b]


def _as_kind(rule: QuarrelRule | QuarrelKind) -> tuple[QuarrelKind, bool]:
    if isinstance(rule, QuarrelRule):
        return rule.kind, rule.unanimity_patch
    return rule, False


def iter_verdicts(
    postulate: Postulate | str,
    measure: Measure | str,
    rule: QuarrelRule | QuarrelKind,
    n: int,
) -> Iterator[PostulateVerdict]:
    """Verdicts for every non-trivial monotonic game on ``n`` players and every ordered pair."""
    if n > MAX_SCAN_N:
        raise ScaleError("paradox scan", n, MAX_SCAN_N)
    if n < 2:
        raise GameInputError(f"quarrels need at least two players, got n={n}")
    kind, patch = _as_kind(rule)
    for g in enumerate_monotonic_games(n, require_non_trivial=True):
        for a, b in _ordered_pairs(n):
            yield check_postulate(postulate, measure, kind.between(a, b, patch), g)


def scan_paradox(
    postulate: Postulate | str,
    measure: Measure | str,
    rule: QuarrelRule | QuarrelKind,
    n: int,
) -> list[PostulateVerdict]:
    """All postulate violations, sorted by (game id, i, j)."""
    violations = [
        v for v in iter_verdicts(postulate, measure, rule, n) if v.status is VerdictStatus.VIOLATED
    ]
    logger.debug("scan %s/%s/%s n=%d: %d violations", postulate, measure, rule, n, len(violations))
    return sorted(violations, key=lambda v: v.sort_key)


@dataclass(frozen=True, slots=True)
class TheoremResult:
    """Desk-scale evidence for one claim: no counterexample within ``scope``."""

    theorem: str
    claim: str
    scope: str
    verified: bool
    evidence: int
    counterexample: str | None = None
    kind: QuarrelKind | None = None
    details: dict[str, str] = field(default_factory=dict)


def family_game(kind: QuarrelKind, n: int, i: int = 1, j: int = 2) -> VotingGame:
    """Initial game of the family whose derived games grow ever less monotonic."""
    players = range(1, n + 1)
    subsets = [
        [p for p in players if m >> (p - 1) & 1] for m in range(1 << n)
    ]
    match (kind.degree, kind.scope, kind.direction):
        case (Degree.CATACLYSMIC, Scope.YES_ONLY, Direction.NON_RECIPROCAL):
            chosen = [s for s in subsets if s and s != [j]]
        case (Degree.STRONG, Scope.SYMMETRIC, Direction.RECIPROCAL):
            chosen = [s for s in subsets if i in s or j in s]
        case (Degree.STRONG, Scope.SYMMETRIC, Direction.NON_RECIPROCAL):
            chosen = [s for s in subsets if i in s]
        case (Degree.CATACLYSMIC, Scope.SYMMETRIC, Direction.NON_RECIPROCAL):
            chosen = [s for s in subsets if len(s) >= n - 1]
        case (Degree.CATACLYSMIC, _, Direction.RECIPROCAL):
            chosen = [s for s in subsets if s]
        case _:
            raise GameInputError(f"no growth family for {kind}")
    return new_from_winning_sets(n, chosen)


def grows_without_bound(sequence: list[int | None]) -> bool:
    """Each value is unbounded or strictly exceeds its predecessor."""
    return all(
        b is None or (a is not None and b > a) for a, b in zip(sequence, sequence[1:])
    )


def _format_min_k(value: int | None) -> str:
    return NONE_WITHIN_N if value is None else str(value)


def _derived_games(
    kind: QuarrelKind, n: int
) -> Iterator[tuple[VotingGame, int, int, VotingGame]]:
    for g in enumerate_monotonic_games(n, require_non_trivial=True):
        for a, b in _ordered_pairs(n):
            yield g, a, b, apply(kind.between(a, b), g)


def _sizes(n_max: int) -> range:
    return range(2, n_max + 1)


def _check_cell(kind: QuarrelKind, n_max: int) -> TheoremResult:
    expected = kind.expected_class
    theorem = f"cell:{kind.label}"
    scope = f"n=2..{n_max}, all non-trivial monotonic games, all ordered pairs"

    if expected is MonotonicityClass.SUPREMELY_NON_MONOTONIC:
        sequence = [
            min_k_monotonicity(apply(kind.between(1, 2), family_game(kind, size))).min_k
            for size in FAMILY_SIZES
        ]
        verified = grows_without_bound(sequence)
        return TheoremResult(
            theorem,
            f"{kind.label} is {expected}",
            f"growth family at n={','.join(map(str, FAMILY_SIZES))}",
            verified,
            len(sequence),
            None if verified else "min_k does not grow: " + ", ".join(map(_format_min_k, sequence)),
            kind,
            {"min_k": ", ".join(map(_format_min_k, sequence))},
        )

    bound = 0 if expected is MonotonicityClass.MONOTONIC else 1
    evidence = 0
    attained = 0
    for size in _sizes(n_max):
        for g, a, b, g_hat in _derived_games(kind, size):
            evidence += 1
            min_k = min_k_monotonicity(g_hat).min_k
            if min_k is None or min_k > bound:
                return TheoremResult(
                    theorem,
                    f"{kind.label} is {expected}",
                    scope,
                    False,
                    evidence,
                    f"{g!r} with i={a}, j={b} gives min_k={_format_min_k(min_k)}",
                    kind,
                )
            attained = max(attained, min_k)
    verified = attained == bound
    return TheoremResult(
        theorem,
        f"{kind.label} is {expected}",
        scope,
        verified,
        evidence,
        None if verified else f"bound min_k={bound} never attained",
        kind,
        {"max_min_k": str(attained)},
    )


def _check_dummy_paradox() -> TheoremResult:
    """A dummy quarreller becomes decisive, so any measure with the dummy property rises."""
    failing = []
    evidence = 0
    for kind in TYPOLOGY_KINDS:
        if kind.expected_class is MonotonicityClass.MONOTONIC:
            continue
        violations = scan_paradox(Postulate.STANDARD, Measure.PB, kind, 3)
        gains = [v for v in violations if v.dummy_gains]
        evidence += len(gains)
        structural = any(
            is_dummy(g, p) and not is_dummy(g_hat, p)
            for g, a, b, g_hat in _derived_games(kind, 3)
            for p in (a, b)
        )
        if not gains or not structural:
            failing.append(kind.label)
    return TheoremResult(
        "dummy-paradox",
        "every conception that can break monotonicity violates the quarrel postulate for any measure",
        "n=3, pb instance plus structural dummy check",
        not failing,
        evidence,
        ", ".join(failing) or None,
    )


def _check_monotone_sources(n_max: int) -> TheoremResult:
    evidence = 0
    for kind in ALL_KINDS:
        for size in _sizes(n_max):
            producers: dict[VotingGame, list[tuple[VotingGame, int, int]]] = defaultdict(list)
            for g, a, b, g_hat in _derived_games(kind, size):
                producers[g_hat].append((g, a, b))
            for g_hat, sources in producers.items():
                if is_monotonic(g_hat):
                    continue
                evidence += 1
                rebuilt = monotone_source_for(g_hat)
                same_rule = any(detect_nmq(g, g_hat, a, b) for g, a, b in sources)
                ok = rebuilt is not None and is_monotonic(rebuilt.source)
                if ok:
                    csr = verify_csr(rebuilt.source, g_hat, rebuilt.i, rebuilt.j)
                    ok = (
                        csr.yq1_holds
                        and csr.nq1_holds
                        and bool(detect_nmq(rebuilt.source, g_hat, rebuilt.i, rebuilt.j))
                    )
                if not (ok and same_rule):
                    return TheoremResult(
                        "monotone-source",
                        "every non-monotonic derived game is non-monotonic over some quarrelling pair",
                        f"n=2..{n_max}, all conceptions",
                        False,
                        evidence,
                        f"{kind.label}: {g_hat!r}",
                    )
    return TheoremResult(
        "monotone-source",
        "every non-monotonic derived game is non-monotonic over some quarrelling pair",
        f"n=2..{n_max}, all conceptions",
        True,
        evidence,
    )


def _check_lv_reciprocality() -> TheoremResult:
    g = new_from_winning_sets(2, [[1], [1, 2]])
    forward = apply(LV.between(1, 2), g)
    backward = apply(LV.between(2, 1), g)
    verified = (
        forward == new_from_winning_sets(2, [[], [1]])
        and backward == new_from_winning_sets(2, [[1], [1, 2]])
    )
    return TheoremResult(
        "lv-non-reciprocal",
        "the strong symmetric non-reciprocal conception is not reciprocal",
        "n=2, dictator game",
        verified,
        1,
        None if verified else f"{forward!r} vs {backward!r}",
        LV,
        {"i=1,j=2": repr(forward), "i=2,j=1": repr(backward)},
    )


def _check_weak_postulate(measure: Measure, n_max: int) -> TheoremResult:
    weak = QuarrelKind(Degree.WEAK, Scope.SYMMETRIC, Direction.RECIPROCAL)
    evidence = 0
    for size in _sizes(n_max):
        for verdict in iter_verdicts(Postulate.STANDARD, measure, weak, size):
            evidence += 1
            if not verdict.holds:
                return TheoremResult(
                    f"{measure}-weak-postulate",
                    f"{measure} satisfies the quarrel postulate under symmetric weak quarrels",
                    f"n=2..{n_max}",
                    False,
                    evidence,
                    f"{verdict.game_id} with {verdict.rule}: {verdict.status}",
                    weak,
                )
    return TheoremResult(
        f"{measure}-weak-postulate",
        f"{measure} satisfies the quarrel postulate under symmetric weak quarrels",
        f"n=2..{n_max}",
        True,
        evidence,
        kind=weak,
        details={"non_reciprocal": "formally identical, not tested separately"},
    )


def _check_patched_fm() -> TheoremResult:
    sequence = [
        min_k_monotonicity(
            apply(FM.between(1, 2, unanimity_patch=True), family_game(FM, size))
        ).min_k
        for size in FAMILY_SIZES
    ]
    verified = grows_without_bound(sequence)
    return TheoremResult(
        "fm-unanimity-patch",
        "forcing unanimity does not rescue the cataclysmic yes-only reciprocal conception",
        f"growth family at n={','.join(map(str, FAMILY_SIZES))}",
        verified,
        len(sequence),
        None if verified else ", ".join(map(_format_min_k, sequence)),
        FM,
        {"min_k": ", ".join(map(_format_min_k, sequence))},
    )


def run_theorem_suite(n_max: int = MAX_SCAN_N) -> list[TheoremResult]:
    """Run every claim of the typology and the postulate results at desk scale."""
    if n_max > MAX_SCAN_N:
        raise ScaleError("theorem suite", n_max, MAX_SCAN_N)
    if n_max < 2:
        raise GameInputError(f"theorem suite needs n_max >= 2, got {n_max}")

    results = []
    for kind in TYPOLOGY_KINDS:
        results.append(_check_cell(kind, n_max))
        logger.info("%s: %s", results[-1].theorem, "verified" if results[-1].verified else "FAILED")
    for check in (
        _check_dummy_paradox,
        lambda: _check_monotone_sources(n_max),
        _check_lv_reciprocality,
        lambda: _check_weak_postulate(Measure.SS, n_max),
        lambda: _check_weak_postulate(Measure.PB, n_max),
        _check_patched_fm,
    ):
        results.append(check())
        logger.info("%s: %s", results[-1].theorem, "verified" if results[-1].verified else "FAILED")
    return results
