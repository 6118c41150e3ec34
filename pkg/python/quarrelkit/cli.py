"""Command-line front end.

Usage:
    quarrelkit power --game g.json --measure pb --measure ss
    quarrelkit quarrel --game g.json --rule fm:i=1,j=2
    quarrelkit scan --rule weak:sym:recip --measure pb --postulate standard --n 3
    quarrelkit theorems --n 4 --format table
    quarrelkit kmon --game g.json
    quarrelkit enumerate --n 3 --non-trivial

Exit codes: 0 clean, 2 usage or input error, 3 violations found, 4 capability
or scale limit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import __version__
from .config import EnvDefaults, OutputFormat, RunConfig, Subcommand
from .errors import CapabilityError, GameInputError, ScaleError
from .game_core import (
    NONE_WITHIN_N,
    VotingGame,
    enumerate_monotonic_games,
    min_k_monotonicity,
    to_players,
)
from .game_io import game_to_dict, load_game, rational
from .postulate_checker import (
    Postulate,
    PostulateVerdict,
    TheoremResult,
    VerdictStatus,
    iter_verdicts,
    run_theorem_suite,
)
from .power_measures import Measure, PowerReport, power_report
from .quarrel_transforms import (
    TYPOLOGY_KINDS,
    Direction,
    QuarrelRule,
    Scope,
    apply,
    detect_nmq,
    parse_rule,
    parse_rule_text,
    verify_csr,
    verify_no_ambush_betrayal,
    verify_reciprocality,
    verify_strong_csr,
    verify_symmetry,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VIOLATIONS = 3
EXIT_CAPABILITY = 4

LOG_FORMAT = "%(asctime)s [%(levelname)8s] %(name)s: %(message)s"
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

Record = dict[str, Any]


@dataclass(frozen=True, slots=True)
class CommandResult:
    """Records produced by one command plus the exit code they imply.

    ``rows`` is the flat view used for csv and table output.
    """

    records: list[Record]
    rows: list[Record] = field(default_factory=list)
    exit_code: int = EXIT_OK
    table: str | None = None


def _players(mask: int) -> list[int]:
    return list(to_players(mask))


def _min_k(value: int | None) -> int | str:
    return NONE_WITHIN_N if value is None else value


def _check_power_scale(config: RunConfig, g: VotingGame) -> None:
    if g.n > config.max_power_n:
        raise ScaleError("power computation", g.n, config.max_power_n)


def _check_kmon_scale(config: RunConfig, g: VotingGame) -> None:
    if g.n > config.max_kmon_n:
        raise ScaleError("k-monotonicity", g.n, config.max_kmon_n)


def _power_record(path: Path, g: VotingGame, report: PowerReport) -> Record:
    players = []
    for p in range(1, g.n + 1):
        entry: Record = {"player": p, "psi": rational(report[p])}
        if report.yes_values is not None and report.no_values is not None:
            entry["psi_yes"] = rational(report.yes_values[p - 1])
            entry["psi_no"] = rational(report.no_values[p - 1])
        players.append(entry)
    return {"game": str(path), "game_id": g.game_id, "measure": report.measure.value, "players": players}


def cmd_power(config: RunConfig) -> CommandResult:
    records, rows = [], []
    for path in config.games:
        g = load_game(path)
        _check_power_scale(config, g)
        for measure in config.measures:
            report = power_report(g, measure)
            record = _power_record(path, g, report)
            records.append(record)
            for entry in record["players"]:
                rows.append({
                    "game": str(path),
                    "measure": report.measure.value,
                    "player": entry["player"],
                    "psi": entry["psi"]["exact"],
                    "psi_decimal": entry["psi"]["decimal"],
                    "psi_yes": entry.get("psi_yes", {}).get("exact", ""),
                    "psi_no": entry.get("psi_no", {}).get("exact", ""),
                })
    logger.info("power: %d game(s), %d measure(s)", len(config.games), len(config.measures))
    return CommandResult(records, rows)


def _monotonicity_record(g: VotingGame) -> Record:
    report = min_k_monotonicity(g)
    return {
        "game_id": g.game_id,
        "is_monotonic": report.is_monotonic,
        "min_k": _min_k(report.min_k),
        "violating_pairs": [[_players(t), _players(s)] for t, s in report.violating_pairs],
    }


def _quarrel_record(path: Path, g: VotingGame, rule: QuarrelRule) -> tuple[Record, list[Record]]:
    g_hat = apply(rule, g)
    csr = verify_csr(g, g_hat, rule.i, rule.j)
    strong = verify_strong_csr(g, g_hat, rule.i, rule.j)
    ambush = verify_no_ambush_betrayal(g, g_hat, rule.i, rule.j)

    diagnostics = {
        "monotonicity": _monotonicity_record(g_hat),
        "csr": {
            "yq1_holds": csr.yq1_holds,
            "yq2_holds": csr.yq2_holds,
            "yq2_vacuous": csr.yq2_vacuous,
            "nq1_holds": csr.nq1_holds,
            "nq2_holds": csr.nq2_holds,
            "nq2_vacuous": csr.nq2_vacuous,
        },
        "strong_csr": {"yq_holds": strong.yq_holds, "nq_holds": strong.nq_holds},
        "no_ambush_betrayal": ambush.holds,
        "symmetric_here": verify_symmetry(rule, g),
        "reciprocal_here": verify_reciprocality(rule, g),
        "nmq_witnesses": [
            {"division": _players(w.division), "varied": w.varied, "side": w.side.value}
            for w in detect_nmq(g, g_hat, rule.i, rule.j)
        ],
    }
    record = {**game_to_dict(g_hat), "source": str(path), "rule": str(rule), "diagnostics": diagnostics}
    pairs = [("winning", record["winning"])]
    pairs += [(f"monotonicity.{k}", v) for k, v in diagnostics["monotonicity"].items()]
    pairs += [(f"csr.{k}", v) for k, v in diagnostics["csr"].items()]
    pairs += [
        (k, diagnostics[k])
        for k in ("strong_csr", "no_ambush_betrayal", "symmetric_here", "reciprocal_here", "nmq_witnesses")
    ]
    rows = [{"source": str(path), "key": k, "value": json.dumps(v)} for k, v in pairs]
    logger.info("quarrel %s on %s -> %s", rule, g.game_id, g_hat.game_id)
    return record, rows


def cmd_quarrel(config: RunConfig) -> CommandResult:
    rule = parse_rule(config.rule or "", unanimity_patch=config.unanimity_patch)
    records, rows = [], []
    for path in config.games:
        g = load_game(path)
        _check_kmon_scale(config, g)
        record, game_rows = _quarrel_record(path, g, rule)
        records.append(record)
        rows += game_rows
    return CommandResult(records, rows)


def _verdict_record(v: PostulateVerdict) -> Record:
    def value(x):
        return rational(x) if x is not None else None

    return {
        "game_id": v.game_id,
        "rule": str(v.rule),
        "i": v.rule.i,
        "j": v.rule.j,
        "postulate": v.postulate.value,
        "measure": v.measure.value,
        "status": v.status.value,
        "psi_i_before": value(v.psi_i_before),
        "psi_i_after": value(v.psi_i_after),
        "psi_j_before": value(v.psi_j_before),
        "psi_j_after": value(v.psi_j_after),
        "witness": v.witness,
    }


def _flat_verdict(record: Record) -> Record:
    return {
        k: (v["exact"] if isinstance(v, dict) else "" if v is None else v)
        for k, v in record.items()
    }


def cmd_scan(config: RunConfig) -> CommandResult:
    if config.n is not None and config.n > config.max_scan_n:
        raise ScaleError("scan", config.n, config.max_scan_n)
    kind, _ = parse_rule_text(config.rule or "")
    family = kind.between(1, 2, config.unanimity_patch)
    violations: list[PostulateVerdict] = []
    limited = 0
    for measure in config.measures:
        for verdict in iter_verdicts(config.postulate, measure, family, config.n or 0):
            if verdict.status is VerdictStatus.VIOLATED:
                violations.append(verdict)
            elif verdict.status is VerdictStatus.CAPABILITY_LIMITED:
                limited += 1
    violations.sort(key=lambda v: (v.sort_key, v.measure))
    records = [_verdict_record(v) for v in violations]
    logger.info("scan %s n=%s: %d violation(s), %d capability-limited", kind, config.n, len(records), limited)
    return CommandResult(
        records,
        [_flat_verdict(r) for r in records],
        EXIT_VIOLATIONS if records else EXIT_OK,
    )


def _theorem_record(result: TheoremResult) -> Record:
    return {
        "theorem": result.theorem,
        "claim": result.claim,
        "scope": result.scope,
        "verified": result.verified,
        "evidence": result.evidence,
        "counterexample": result.counterexample,
        "details": dict(sorted(result.details.items())),
    }


def render_typology(results: Sequence[TheoremResult]) -> str:
    """Degree by (scope, direction) grid with verdicts and evidence counts."""
    by_kind = {r.kind: r for r in results if r.theorem.startswith("cell:")}
    columns = [(scope, direction) for scope in (Scope.YES_ONLY, Scope.SYMMETRIC) for direction in Direction]
    rows = []
    for degree in dict.fromkeys(k.degree for k in TYPOLOGY_KINDS):
        row: Record = {"degree": degree.value}
        for scope, direction in columns:
            kind = next(k for k in TYPOLOGY_KINDS if (k.degree, k.scope, k.direction) == (degree, scope, direction))
            result = by_kind.get(kind)
            header = f"{'asym' if scope is Scope.YES_ONLY else 'sym'} {'recip' if direction is Direction.RECIPROCAL else 'non-recip'}"
            if result is None:
                row[header] = "-"
            else:
                mark = "ok" if result.verified else "FAIL"
                row[header] = f"{kind.expected_class} [{mark}, {result.evidence}]"
        rows.append(row)
    others = [
        {"theorem": r.theorem, "verified": "ok" if r.verified else "FAIL", "evidence": r.evidence, "scope": r.scope}
        for r in results
        if not r.theorem.startswith("cell:")
    ]
    return render_table(rows) + "\n\n" + render_table(others)


def cmd_theorems(config: RunConfig) -> CommandResult:
    n_max = config.n if config.n is not None else config.max_scan_n
    if n_max > config.max_scan_n:
        raise ScaleError("theorem suite", n_max, config.max_scan_n)
    results = run_theorem_suite(n_max)
    records = [_theorem_record(r) for r in results]
    rows = [{**r, "details": json.dumps(r["details"], sort_keys=True)} for r in records]
    failed = [r.theorem for r in results if not r.verified]
    if failed:
        logger.warning("unverified: %s", ", ".join(failed))
    return CommandResult(
        records, rows, EXIT_VIOLATIONS if failed else EXIT_OK, table=render_typology(results)
    )


def cmd_kmon(config: RunConfig) -> CommandResult:
    records = []
    for path in config.games:
        g = load_game(path)
        _check_kmon_scale(config, g)
        records.append({"game": str(path), **_monotonicity_record(g)})
    rows = [
        {**r, "violating_pairs": len(r["violating_pairs"])} for r in records
    ]
    return CommandResult(records, rows)


def cmd_enumerate(config: RunConfig) -> CommandResult:
    n = config.n or 0
    if n > config.max_enum_n:
        raise ScaleError("enumerate", n, config.max_enum_n)
    records = [
        {**game_to_dict(g), "game_id": g.game_id}
        for g in enumerate_monotonic_games(n, require_non_trivial=config.non_trivial)
    ]
    rows = [{"game_id": r["game_id"], "winning": json.dumps(r["winning"])} for r in records]
    return CommandResult(records, rows)


COMMANDS = {
    Subcommand.POWER: cmd_power,
    Subcommand.QUARREL: cmd_quarrel,
    Subcommand.SCAN: cmd_scan,
    Subcommand.THEOREMS: cmd_theorems,
    Subcommand.KMON: cmd_kmon,
    Subcommand.ENUMERATE: cmd_enumerate,
}


def render_table(rows: Sequence[Record]) -> str:
    if not rows:
        return "(no rows)"
    headers = list(rows[0])
    cells = [[str(row.get(h, "")) for h in headers] for row in rows]
    widths = [max(len(h), *(len(c[k]) for c in cells)) for k, h in enumerate(headers)]
    lines = [
        " | ".join(h.ljust(w) for h, w in zip(headers, widths)),
        "-+-".join("-" * w for w in widths),
    ]
    lines += [" | ".join(c.ljust(w) for c, w in zip(cell, widths)) for cell in cells]
    return "\n".join(line.rstrip() for line in lines)


def render(result: CommandResult, output_format: OutputFormat) -> str:
    match output_format:
        case OutputFormat.JSON:
            return "".join(json.dumps(r, sort_keys=True) + "\n" for r in result.records)
        case OutputFormat.CSV:
            buffer = io.StringIO()
            if result.rows:
                writer = csv.DictWriter(buffer, fieldnames=list(result.rows[0]), lineterminator="\n")
                writer.writeheader()
                writer.writerows(result.rows)
            return buffer.getvalue()
        case OutputFormat.TABLE:
            return (result.table or render_table(result.rows)) + "\n"


def build_parser(defaults: EnvDefaults) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=[f.value for f in OutputFormat],
                        default=defaults.output_format, help="output format (default: %(default)s)")
    common.add_argument("--out", type=Path, help="write output to this file instead of stdout")
    common.add_argument("--log-level", default=defaults.log_level,
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"], type=str.upper)
    common.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v for INFO, -vv for DEBUG")

    parser = argparse.ArgumentParser(prog="quarrelkit", description="Quarrels in binary voting games.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    power = sub.add_parser("power", parents=[common], help="voting power of every player")
    power.add_argument("--game", action="append", type=Path, required=True)
    power.add_argument("--measure", action="append", choices=[m.value for m in Measure])

    quarrel = sub.add_parser("quarrel", parents=[common], help="apply a quarrel rule and diagnose it")
    quarrel.add_argument("--game", action="append", type=Path, required=True)
    quarrel.add_argument("--rule", required=True, help="<degree>:<scope>:<direction>:i=..,j=.. or fm/lv:i=..,j=..")
    quarrel.add_argument("--unanimity-patch", action="store_true")

    scan = sub.add_parser("scan", parents=[common], help="exhaustive quarrel postulate scan")
    scan.add_argument("--rule", required=True, help="rule family, pair optional and ignored")
    scan.add_argument("--measure", action="append", choices=[m.value for m in Measure])
    scan.add_argument("--postulate", choices=[p.value for p in Postulate], default=Postulate.STANDARD.value)
    scan.add_argument("--n", type=int, required=True)
    scan.add_argument("--unanimity-patch", action="store_true")

    theorems = sub.add_parser("theorems", parents=[common], help="run the theorem suite")
    theorems.add_argument("--n", type=int, help=f"largest exhaustive n (default {defaults.max_scan_n})")

    kmon = sub.add_parser("kmon", parents=[common], help="k-monotonicity report")
    kmon.add_argument("--game", action="append", type=Path, required=True)

    enumerate_ = sub.add_parser("enumerate", parents=[common], help="list monotonic games")
    enumerate_.add_argument("--n", type=int, required=True)
    enumerate_.add_argument("--non-trivial", action="store_true")
    return parser


def config_from_args(args: argparse.Namespace, defaults: EnvDefaults) -> RunConfig:
    level = args.log_level
    if args.verbose:
        level = "DEBUG" if args.verbose > 1 else "INFO"
    measures = tuple(Measure(m) for m in (getattr(args, "measure", None) or [Measure.PB.value]))
    return RunConfig(
        subcommand=Subcommand(args.subcommand),
        games=tuple(getattr(args, "game", None) or ()),
        rule=getattr(args, "rule", None),
        measures=tuple(dict.fromkeys(measures)),
        postulate=Postulate(getattr(args, "postulate", Postulate.STANDARD.value)),
        n=getattr(args, "n", None),
        output_format=OutputFormat(args.output_format),
        out=args.out,
        unanimity_patch=getattr(args, "unanimity_patch", False),
        non_trivial=getattr(args, "non_trivial", False),
        log_level=level,
        max_scan_n=defaults.max_scan_n,
        max_enum_n=defaults.max_enum_n,
        max_power_n=defaults.max_power_n,
        max_kmon_n=defaults.max_kmon_n,
    )


def _fail(message: str, code: int) -> int:
    print(f"quarrelkit: error: {message}", file=sys.stderr)
    return code


def main(argv: Sequence[str] | None = None) -> int:
    defaults = EnvDefaults()
    parser = build_parser(defaults)
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args, defaults)
        config.validate()
    except ValueError as exc:
        return _fail(str(exc), EXIT_USAGE)

    logging.basicConfig(level=config.log_level, format=LOG_FORMAT, datefmt=LOG_DATE_FORMAT, stream=sys.stderr)
    try:
        result = COMMANDS[config.subcommand](config)
    except CapabilityError as exc:
        return _fail(str(exc), EXIT_CAPABILITY)
    except GameInputError as exc:
        return _fail(str(exc), EXIT_USAGE)

    text = render(result, config.output_format)
    if config.out is not None:
        config.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
