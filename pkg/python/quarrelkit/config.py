"""Run configuration for the command-line front end.

Defaults come from ``QUARRELKIT_*`` environment variables; a ``.env`` file in
the working directory is loaded first.
"""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass
from enum import StrEnum
from pathlib import Path

from dotenv import load_dotenv

from .game_core import MAX_ENUMERATION_N, MAX_EXPLICIT_N
from .postulate_checker import MAX_SCAN_N, Postulate
from .power_measures import MAX_POWER_N, Measure
from .quarrel_transforms import parse_rule_text

ENV_PREFIX = "QUARRELKIT_"


class OutputFormat(StrEnum):
    JSON = "json"
    CSV = "csv"
    TABLE = "table"


class Subcommand(StrEnum):
    POWER = "power"
    QUARREL = "quarrel"
    SCAN = "scan"
    THEOREMS = "theorems"
    KMON = "kmon"
    ENUMERATE = "enumerate"


class EnvDefaults:
    """Defaults read from the environment (after ``.env``)."""

    def __init__(self):
        load_dotenv()
        self.output_format: str = os.getenv(f"{ENV_PREFIX}FORMAT", OutputFormat.JSON.value)
        self.log_level: str = os.getenv(f"{ENV_PREFIX}LOG_LEVEL", "WARNING").upper()
        self.max_scan_n: int = int(os.getenv(f"{ENV_PREFIX}MAX_SCAN_N", str(MAX_SCAN_N)))
        self.max_enum_n: int = int(os.getenv(f"{ENV_PREFIX}MAX_ENUM_N", str(MAX_ENUMERATION_N)))
        self.max_power_n: int = int(os.getenv(f"{ENV_PREFIX}MAX_POWER_N", str(MAX_POWER_N)))
        self.max_kmon_n: int = int(os.getenv(f"{ENV_PREFIX}MAX_KMON_N", str(MAX_EXPLICIT_N)))

    def asdict(self):
        return vars(self)


@dataclass(frozen=True, slots=True)
class RunConfig:
    subcommand: Subcommand
    games: tuple[Path, ...] = ()
    rule: str | None = None
    measures: tuple[Measure, ...] = (Measure.PB,)
    postulate: Postulate = Postulate.STANDARD
    n: int | None = None
    output_format: OutputFormat = OutputFormat.JSON
    out: Path | None = None
    unanimity_patch: bool = False
    non_trivial: bool = False
    log_level: str = "WARNING"
    max_scan_n: int = MAX_SCAN_N
    max_enum_n: int = MAX_ENUMERATION_N
    max_power_n: int = MAX_POWER_N
    max_kmon_n: int = MAX_EXPLICIT_N

    def validate(self) -> None:
        """Raise ``ValueError`` naming the first inconsistent field."""
        if self.max_scan_n < 2 or self.max_scan_n > MAX_SCAN_N:
            raise ValueError(f"max_scan_n must be between 2 and {MAX_SCAN_N}")
        if self.max_enum_n < 0 or self.max_enum_n > MAX_ENUMERATION_N:
            raise ValueError(f"max_enum_n must be between 0 and {MAX_ENUMERATION_N}")
        if self.max_power_n < 1 or self.max_power_n > MAX_POWER_N:
            raise ValueError(f"max_power_n must be between 1 and {MAX_POWER_N}")
        if self.max_kmon_n < 1 or self.max_kmon_n > MAX_EXPLICIT_N:
            raise ValueError(f"max_kmon_n must be between 1 and {MAX_EXPLICIT_N}")
        if self.subcommand in (Subcommand.POWER, Subcommand.QUARREL, Subcommand.KMON) and not self.games:
            raise ValueError(f"{self.subcommand} needs --game")
        if self.subcommand in (Subcommand.QUARREL, Subcommand.SCAN) and not self.rule:
            raise ValueError(f"{self.subcommand} needs --rule")
        if self.rule:
            _, pair = parse_rule_text(self.rule)
            if self.subcommand is Subcommand.QUARREL and pair is None:
                raise ValueError("quarrel needs a rule with i=<int>,j=<int>")
        if self.subcommand in (Subcommand.SCAN, Subcommand.ENUMERATE) and self.n is None:
            raise ValueError(f"{self.subcommand} needs --n")
        if self.n is not None and self.n < 0:
            raise ValueError("n must be >= 0")
        if not self.measures:
            raise ValueError("at least one measure is required")

    def asdict(self):
        return asdict(self)
