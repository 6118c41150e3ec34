import os

import pytest
from dotenv import load_dotenv
from hypothesis import strategies as st

from quarrelkit import VotingGame, new_from_winning_sets

load_dotenv()


class Config:
    """Configuration shared by the exhaustive sweeps."""

    def __init__(self):
        self.max_n: int = int(os.getenv("QUARRELKIT_TEST_MAX_N", "4"))

    def asdict(self):
        return vars(self)


@pytest.fixture(scope="session")
def test_config():
    """Get the test configuration object."""
    return Config()


@st.composite
def arbitrary_games(draw, min_n: int = 1, max_n: int = 4) -> VotingGame:
    """Any game at all, monotonic or not, drawn by truth table."""
    n = draw(st.integers(min_n, max_n))
    table = draw(st.integers(0, (1 << (1 << n)) - 1))
    return VotingGame.from_table(n, table)


@pytest.fixture
def dictator3():
    """Player 1 decides alone, players 2 and 3 are dummies."""
    return new_from_winning_sets(3, [[1], [1, 2], [1, 3], [1, 2, 3]])


@pytest.fixture
def dictator2():
    return new_from_winning_sets(2, [[1], [1, 2]])


@pytest.fixture
def majority3():
    return new_from_winning_sets(3, [[1, 2], [1, 3], [2, 3], [1, 2, 3]])


@pytest.fixture
def veto3():
    """Player 1 holds a veto and needs one partner."""
    return new_from_winning_sets(3, [[1, 2, 3], [1, 2], [1, 3]])


@pytest.fixture
def unanimity2():
    return new_from_winning_sets(2, [[1, 2]])


@pytest.fixture
def all_nonempty4():
    return new_from_winning_sets(
        4, [[p for p in range(1, 5) if m >> (p - 1) & 1] for m in range(1, 16)]
    )


def pytest_configure(config):
    """Configure pytest settings globally."""
    # Exhaustive sweeps at n=4 walk every monotonic game and every ordered pair
    config.option.timeout = 300
