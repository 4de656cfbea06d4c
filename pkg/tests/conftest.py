import json
import random
from pathlib import Path

import pytest

from conjtrace.ring import RingElem, RingId, parse_elem
from conjtrace.words import Word

GOLDEN = Path(__file__).parent / "golden"

SEED = 1729


def load_golden(name):
    return json.loads((GOLDEN / f"{name}.json").read_text())


def golden_elem(ring, text):
    """Loose element notation, plus 'w^k' for powers of the generator."""
    if "^" in text:
        sym, k = text.split("^")
        return ring.gen() ** int(k)
    return parse_elem(ring, text)


def random_word(rng, symbols=("a", "b"), max_len=12):
    letters = []
    for _ in range(rng.randint(0, max_len)):
        letters.append((rng.choice(symbols), rng.choice((1, -1))))
    return Word(tuple(letters))


def random_elem(rng, ring, bound=1000):
    b = 0 if ring is RingId.INTEGERS else rng.randint(-bound, bound)
    return RingElem(ring, rng.randint(-bound, bound), b)


@pytest.fixture
def rng():
    return random.Random(SEED)


ALL_RINGS = list(RingId)
QUADRATIC_RINGS = [r for r in RingId if r is not RingId.INTEGERS]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
