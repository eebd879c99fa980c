import random

import pytest
from hypothesis import HealthCheck, settings

from spiral_voronoi import SeedSet

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def random_seeds(seed, n, width=1.0, height=1.0):
    rng = random.Random(seed)
    return SeedSet(tuple((rng.random() * width, rng.random() * height) for _ in range(n)))


@pytest.fixture
def rand_seeds():
    return random_seeds


def pytest_terminal_summary(terminalreporter):
    acceptance = __import__("sys").modules.get("test_acceptance")
    results = getattr(acceptance, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results, key=int):
        terminalreporter.write_line(results[key])
