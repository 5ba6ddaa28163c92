import random

import pytest

from contentlab.parser import parse_ring

# canonical ring text for every ring kind the library supports
RING_TEXTS = [
    "Int",
    "IntMod(12)",
    "GF(7)",
    "Q",
    "Q[x]",
    "Int[T]",
    "GF(5)[x]",
    "Int[T][U]",
    "Q[x,y]",
    "Hahn(Z,Q)",
    "Hahn(LexZ(2),Q)",
    "Hahn(Quad(2),Q)",
    "Q[x]/(x^2)",
    "GF(3)[x]/(1 + x^2)",
]
RINGS = {text: parse_ring(text) for text in RING_TEXTS}


def sample(R, n, seed=0, coeff=9, degree=3):
    rng = random.Random(f"{R}:{seed}")
    return [R.random(rng, coeff, degree) for _ in range(n)]


@pytest.fixture(params=RING_TEXTS)
def ring(request):
    return RINGS[request.param]


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
