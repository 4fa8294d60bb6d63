import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from unionvals import Game, UnionGame, make_game
from fractions import Fraction
from unionvals.randgames import random_blocks, random_game

FIXTURES = Path(__file__).parent / "fixtures"

G1_WORTHS = {"1": 0, "2": 2, "3": 2, "1,2": 4, "1,3": 3, "2,3": 5, "1,2,3": 12}
G1_PARTITION = [["1", "2"], ["3"]]


def g1_game() -> Game:
    return make_game(["1", "2", "3"], G1_WORTHS)


def g1() -> UnionGame:
    return UnionGame.from_names(g1_game(), G1_PARTITION)


@pytest.fixture
def G1():
    return g1()


def corpus(count, ns=(3, 4, 5, 6), seed=20201, bounds=(-10, 10)):
    """Seeded union games cycling through roster sizes and every union count 1..n."""
    rng = random.Random(seed)
    out = []
    for t in range(count):
        n = ns[t % len(ns)]
        m = rng.randint(1, n)
        game = random_game(rng, n, bounds)
        out.append(UnionGame(game, random_blocks(rng, n, m)))
    return out


@st.composite
def union_games(draw, min_n=1, max_n=5, lo=-20, hi=20):
    n = draw(st.integers(min_n, max_n))
    worths = draw(st.lists(st.integers(lo, hi), min_size=(1 << n) - 1, max_size=(1 << n) - 1))
    labels = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    used = sorted(set(labels))
    blocks = tuple(sum(1 << i for i, lab in enumerate(labels) if lab == k) for k in used)
    game = Game(tuple(str(i + 1) for i in range(n)), (Fraction(0),) + tuple(Fraction(w) for w in worths))
    return UnionGame(game, blocks)


def pytest_terminal_summary(terminalreporter):
    results = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" not in nodeid or rep.when not in ("call", "setup"):
                continue
            name = nodeid.split("::test_criterion_")[1]
            number = name.split("_")[0]
            ok = outcome == "passed"
            results.setdefault(number, []).append((name, ok))
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results, key=int):
        cases = results[number]
        failed = [n for n, ok in cases if not ok]
        title = cases[0][0].split("[")[0]
        status = "PASS" if not failed else "FAIL"
        line = f"{status}  criterion {title}"
        if len(cases) > 1:
            line += f"  ({len(cases) - len(failed)}/{len(cases)} cases)"
        if failed:
            line += "  failing: " + ", ".join(n.split("[", 1)[1].rstrip("]") if "[" in n else n for n in failed)
        terminalreporter.write_line(line)
