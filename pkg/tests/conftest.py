from pathlib import Path

import pytest

from tsproject import make_template

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def running_tpl():
    """X and Y drive each other with lags 1/2, Y drives Z at lags 0 and 5."""
    return make_template(
        ["X", "Y", "Z"],
        directed=[("X", 2, "X"), ("X", 1, "Y"), ("Y", 2, "X"), ("Y", 0, "Z"), ("Y", 5, "Z")],
    )


@pytest.fixture
def b1_tpl():
    """Two autoregressive variables with coprime-ish periods 5 and 3, Y -> X."""
    return make_template(
        ["X", "Y"],
        directed=[("X", 5, "X"), ("Y", 3, "Y"), ("Y", 1, "X")],
    )


@pytest.fixture
def b2_tpl():
    """Lag-1 chain X3 -> {X2 -> X1, X4 -> X5} with lag-1 auto-edges everywhere."""
    variables = ["X1", "X2", "X3", "X4", "X5"]
    return make_template(
        variables,
        directed=[(v, 1, v) for v in variables]
        + [("X2", 1, "X1"), ("X3", 1, "X2"), ("X3", 1, "X4"), ("X4", 1, "X5")],
    )


@pytest.fixture
def fig3_tpl():
    """Small ts-ADMG with a contemporaneous-free 2-cycle and one bidirected entry."""
    return make_template(
        ["X1", "X2", "X3"],
        directed=[("X2", 1, "X3"), ("X3", 1, "X2"), ("X2", 1, "X2")],
        bidirected=[("X2", 1, "X1")],
    )


@pytest.fixture
def toy_tpl():
    """Chain 1 -> 2 -> 3 -> 4 with back-edges 4 -> 3 and 3 -> 2, all lags 1."""
    return make_template(
        ["1", "2", "3", "4"],
        directed=[("1", 1, "2"), ("2", 1, "3"), ("3", 1, "4"), ("4", 1, "3"), ("3", 1, "2")],
    )
