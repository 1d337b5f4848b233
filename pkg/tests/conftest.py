import numpy as np
import pytest

from spacediscovery.compensation import explore
from spacediscovery.environment import GridConfig, exploration_schedule, init_object
from spacediscovery.optics import make_retina
from spacediscovery.pipeline import origin_grid_index, rng_streams

M0 = np.array([0.1, -1.5, 2.2, -3.0])


@pytest.fixture(scope="session")
def small_world():
    """Retina, object, schedule and explored atlas on a coarse 21x21 grid."""
    rngs = rng_streams(11)
    retina = make_retina(rngs["retina"])
    obj = init_object(rngs["object"])
    g = GridConfig(21)
    schedule = exploration_schedule(rngs["schedule"], g, 0.1)
    atlas, episodes = explore(retina, obj, schedule, M0, rng=rngs["compensation"],
                              origin_grid_index=origin_grid_index(g), spacing=g.spacing)
    return {"retina": retina, "object": obj, "grid": g, "schedule": schedule, "atlas": atlas,
            "episodes": episodes}


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


ACCEPTANCE = []


def record(criterion, ok, detail):
    """Log one acceptance line; the test asserts ``ok`` afterwards."""
    ACCEPTANCE.append(f"{'PASS' if ok else 'FAIL'}  {criterion}: {detail}")
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
