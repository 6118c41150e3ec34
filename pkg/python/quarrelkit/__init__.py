"""quarrelkit - quarrels in binary voting games

Exact voting-power measures, the degree x scope x direction family of quarrel
rules, k-monotonicity analysis and exhaustive checks of the quarrel postulates
over every monotonic game at desk scale.
"""

from .errors import (
    CapabilityError,
    GameFileError,
    GameInputError,
    NormalizationError,
    QuarrelkitError,
    RuleSyntaxError,
    ScaleError,
)
from .game_core import (
    MonotonicityReport,
    Outcome,
    Side,
    VotingGame,
    complement,
    enumerate_monotonic_games,
    has_effective_cooperation,
    is_dictator,
    is_dummy,
    is_k_monotonic,
    is_monotonic,
    is_no_decisive,
    is_non_trivial,
    is_yes_decisive,
    min_k_monotonicity,
    new_from_winning_sets,
    new_weighted,
    outcome,
    permute_players,
    satisfies_unanimity,
)
from .game_io import dump_game, load_game, parse_game
from .postulate_checker import (
    Postulate,
    PostulateVerdict,
    TheoremResult,
    VerdictStatus,
    check_postulate,
    run_theorem_suite,
    scan_paradox,
)
from .power_measures import (
    Measure,
    PowerReport,
    banzhaf_index,
    penrose_banzhaf,
    power_report,
    shapley_shubik,
    yes_no_power,
)
from .quarrel_transforms import (
    FM,
    LV,
    TYPOLOGY_KINDS,
    CSRReport,
    Degree,
    Direction,
    MonotonicityClass,
    QuarrelKind,
    QuarrelRule,
    Scope,
    apply,
    check_dnq,
    detect_nmq,
    parse_rule,
    verify_csr,
    verify_no_ambush_betrayal,
    verify_reciprocality,
    verify_strong_csr,
    verify_symmetry,
)

__version__ = "0.1.0"

__all__ = [
    "CSRReport",
    "CapabilityError",
    "Degree",
    "Direction",
    "FM",
    "GameFileError",
    "GameInputError",
    "LV",
    "Measure",
    "MonotonicityClass",
    "MonotonicityReport",
    "NormalizationError",
    "Outcome",
    "Postulate",
    "PostulateVerdict",
    "PowerReport",
    "QuarrelKind",
    "QuarrelRule",
    "QuarrelkitError",
    "RuleSyntaxError",
    "ScaleError",
    "Scope",
    "Side",
    "TYPOLOGY_KINDS",
    "TheoremResult",
    "VerdictStatus",
    "VotingGame",
    "apply",
    "banzhaf_index",
    "check_dnq",
    "check_postulate",
    "complement",
    "detect_nmq",
    "dump_game",
    "enumerate_monotonic_games",
    "has_effective_cooperation",
    "is_dictator",
    "is_dummy",
    "is_k_monotonic",
    "is_monotonic",
    "is_no_decisive",
    "is_non_trivial",
    "is_yes_decisive",
    "load_game",
    "min_k_monotonicity",
    "new_from_winning_sets",
    "new_weighted",
    "outcome",
    "parse_game",
    "parse_rule",
    "penrose_banzhaf",
    "permute_players",
    "power_report",
    "run_theorem_suite",
    "satisfies_unanimity",
    "scan_paradox",
    "shapley_shubik",
    "verify_csr",
    "verify_no_ambush_betrayal",
    "verify_reciprocality",
    "verify_strong_csr",
    "verify_symmetry",
    "yes_no_power",
]
