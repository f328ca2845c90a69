import random

import pytest
from hypothesis import HealthCheck, settings

from nildom.nil2 import Nil2Element, cdim

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


def rand_element(rng: random.Random, n: int, bound: int = 6) -> Nil2Element:
    return Nil2Element(
        tuple(rng.randint(-bound, bound) for _ in range(n)),
        tuple(rng.randint(-bound, bound) for _ in range(cdim(n))),
    )


def rand_gens(rng: random.Random, n: int, k: int | None = None, bound: int = 6) -> list[Nil2Element]:
    k = rng.randint(1, 3) if k is None else k
    return [rand_element(rng, n, bound) for _ in range(k)]


@pytest.fixture
def rng():
    return random.Random(20240611)


# acceptance criteria report lines, printed in the terminal summary
ACCEPTANCE: dict[int, str] = {}


def record(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
