"""
Tests for the game file codec and rational serialization
"""

import json
from fractions import Fraction

import pytest

try:
    from quarrelkit import (
        FM,
        GameFileError,
        GameInputError,
        ScaleError,
        apply,
        dump_game,
        load_game,
        new_from_winning_sets,
        new_weighted,
        parse_game,
    )
    from quarrelkit.game_io import game_to_dict, rational
except ImportError:
    pytest.fail("quarrelkit not importable - run 'uv sync' first")


def test_parse_winning_form(dictator3):
    g = parse_game('{"n": 3, "winning": [[1], [1, 2], [1, 3], [1, 2, 3]]}')
    assert g == dictator3


def test_parse_weighted_form(majority3):
    assert parse_game('{"n": 3, "weights": [1, 1, 1], "quota": 2}') == majority3


def test_parse_rational_strings():
    g = parse_game('{"n": 2, "weights": ["1/3", "2/3"], "quota": "2/3"}')
    assert g == new_weighted([Fraction(1, 3), Fraction(2, 3)], Fraction(2, 3))


def test_extra_keys_are_ignored():
    g = parse_game('{"n": 2, "winning": [[1, 2]], "rule": "fm:i=1,j=2", "diagnostics": {}}')
    assert g == new_from_winning_sets(2, [[1, 2]])


def test_round_trip_of_derived_game(dictator3):
    derived = apply(FM.between(1, 2), dictator3)
    assert parse_game(dump_game(derived)) == derived


def test_dump_is_deterministic(majority3):
    text = dump_game(majority3)
    assert text == dump_game(new_weighted([1, 1, 1], 2))
    assert json.loads(text) == {"n": 3, "winning": [[1, 2], [1, 3], [2, 3], [1, 2, 3]]}


def test_empty_coalition_is_an_empty_list():
    assert game_to_dict(new_from_winning_sets(2, [[], [1]])) == {"n": 2, "winning": [[], [1]]}


def test_bad_json_reports_line_and_column():
    with pytest.raises(GameFileError) as exc_info:
        parse_game('{"n": 2,\n "winning": [[1],}', "broken.json")

    assert exc_info.value.path == "broken.json"
    assert exc_info.value.line == 2
    assert exc_info.value.column > 0
    assert str(exc_info.value).startswith("broken.json:2:")


@pytest.mark.parametrize(
    "text,message",
    [
        ("[1, 2]", "must be a JSON object"),
        ('{"n": -1, "winning": []}', "'n' must be a non-negative integer"),
        ('{"n": true, "winning": []}', "'n' must be a non-negative integer"),
        ('{"n": 2}', "expected either 'winning' or 'weights' and 'quota'"),
        ('{"n": 2, "winning": [1, 2]}', "'winning' must be a list of player lists"),
        ('{"n": 2, "winning": [[3]]}', "player 3 out of range 1..2"),
        ('{"n": 3, "weights": [1, 1], "quota": 1}', "'weights' has 2 entries for n=3"),
        ('{"n": 2, "weights": [1, "x"], "quota": 1}', "is not a rational number"),
        ('{"n": 2, "weights": [1, 1], "quota": 0}', "quota must be positive"),
    ],
)
def test_malformed_games(text, message):
    with pytest.raises(GameFileError) as exc_info:
        parse_game(text)

    assert message in str(exc_info.value)


def test_game_file_error_is_an_input_error():
    assert issubclass(GameFileError, GameInputError)


def test_load_game_from_disk(tmp_path, veto3):
    path = tmp_path / "veto.json"
    path.write_text(dump_game(veto3), encoding="utf-8")
    assert load_game(path) == veto3


def test_load_missing_file(tmp_path):
    with pytest.raises(GameFileError) as exc_info:
        load_game(tmp_path / "absent.json")

    assert "absent.json" in str(exc_info.value)


def test_load_file_that_is_not_utf8(tmp_path):
    path = tmp_path / "latin1.json"
    path.write_bytes(b'{"n": 2, "winning": [[1]], "x": "\xff"}')
    with pytest.raises(GameFileError) as exc_info:
        load_game(path)

    assert exc_info.value.path == str(path)
    assert str(exc_info.value) == f"{path}: not valid UTF-8 at byte 33"


def test_weighted_file_beyond_player_limit():
    weights = ", ".join(["1"] * 21)
    with pytest.raises(ScaleError):
        parse_game(f'{{"n": 21, "weights": [{weights}], "quota": 11}}')


def test_rational_shape():
    assert rational(Fraction(1, 3)) == {"exact": "1/3", "decimal": "0.333333333333"}
    assert rational(Fraction(1)) == {"exact": "1/1", "decimal": "1"}
