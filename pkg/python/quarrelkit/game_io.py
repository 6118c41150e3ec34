"""Game file codec and the JSON shape of exact rationals.

A game file holds either ``{"n": int, "winning": [[int, ...], ...]}`` or
``{"n": int, "weights": [number, ...], "quota": number}`` with 1-based players.
Weights and quota may also be given as ``"p/q"`` strings. Extra keys are
ignored, so emitted derived games (which carry diagnostics) load back as is.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import GameFileError, GameInputError
from .game_core import VotingGame, new_from_winning_sets, new_weighted


def rational(x: Fraction) -> dict[str, str]:
    """Exact ``p/q`` form plus a 12-significant-digit decimal."""
    return {"exact": f"{x.numerator}/{x.denominator}", "decimal": f"{float(x):.12g}"}


def _number(value: Any, what: str, source: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, int | float | str):
        raise GameFileError(f"{what} must be a number or 'p/q' string, got {value!r}", source)
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise GameFileError(f"{what} {value!r} is not a rational number", source) from None


def game_from_dict(data: Any, source: str = "<game>") -> VotingGame:
    if not isinstance(data, dict):
        raise GameFileError("a game must be a JSON object", source)
    n = data.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise GameFileError(f"'n' must be a non-negative integer, got {n!r}", source)

    try:
        if "winning" in data:
            winning = data["winning"]
            if not isinstance(winning, list) or not all(isinstance(s, list) for s in winning):
                raise GameFileError("'winning' must be a list of player lists", source)
            return new_from_winning_sets(n, winning)
        if "weights" in data and "quota" in data:
            weights = data["weights"]
            if not isinstance(weights, list):
                raise GameFileError("'weights' must be a list", source)
            if len(weights) != n:
                raise GameFileError(f"'weights' has {len(weights)} entries for n={n}", source)
            return new_weighted(
                [_number(w, "weight", source) for w in weights],
                _number(data["quota"], "quota", source),
            )
    except GameFileError:
        raise
    except GameInputError as exc:
        raise GameFileError(str(exc), source) from exc
    raise GameFileError("expected either 'winning' or 'weights' and 'quota'", source)


def parse_game(text: str, source: str = "<string>") -> VotingGame:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GameFileError(exc.msg, source, exc.lineno, exc.colno) from exc
    return game_from_dict(data, source)


def load_game(path: str | Path) -> VotingGame:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise GameFileError(exc.strerror or str(exc), str(path)) from exc
    except UnicodeDecodeError as exc:
        raise GameFileError(f"not valid UTF-8 at byte {exc.start}", str(path)) from exc
    return parse_game(text, str(path))


def game_to_dict(g: VotingGame) -> dict[str, Any]:
    return {"n": g.n, "winning": [list(s) for s in g.winning_sets()]}


def dump_game(g: VotingGame) -> str:
    return json.dumps(game_to_dict(g), sort_keys=True)
