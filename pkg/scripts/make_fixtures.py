"""Regenerate the committed test fixtures.

    python scripts/make_fixtures.py

Writes tests/fixtures/g1.json, the golden ``table`` output for it, and one
game document per unclaimed matrix cell for which a counterexample exists.
Cells with no witness in the budget are listed in the index with ``null``.
"""

import io
import json
from pathlib import Path

from unionvals import UnionGame, make_game, search_counterexample
from unionvals.axioms import CLAIMED, MATRIX_COLUMNS, MATRIX_ROWS, matrix_unions
from unionvals.cli import main
from unionvals.game import format_rational
from unionvals.gamefile import serialize_game

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"
SEED = 0
TRIALS = 10_000


def write_g1():
    g = make_game(["1", "2", "3"], {"1": 0, "2": 2, "3": 2, "1,2": 4, "1,3": 3, "2,3": 5, "1,2,3": 12})
    ug = UnionGame.from_names(g, [["1", "2"], ["3"]])
    (FIXTURES / "g1.json").write_text(serialize_game(ug), encoding="utf-8")
    out = io.StringIO()
    main(["table", "--game", str(FIXTURES / "g1.json")], out=out)
    (FIXTURES / "g1_table.txt").write_text(out.getvalue(), encoding="utf-8")


def write_witnesses():
    wdir = FIXTURES / "witnesses"
    wdir.mkdir(exist_ok=True)
    index = {}
    for v in MATRIX_ROWS:
        for a in MATRIX_COLUMNS:
            if a in CLAIMED[v]:
                continue
            key = f"{v.value}__{a.value}"
            index[key] = None
            for n in (3, 4, 5):
                rep = search_counterexample(v, a, n, matrix_unions(n), TRIALS, SEED)
                if rep.violated:
                    w = rep.witness
                    (wdir / f"{key}.json").write_text(serialize_game(w.ug), encoding="utf-8")
                    index[key] = {
                        "value": v.value,
                        "axiom": a.value,
                        "n": n,
                        "trial": rep.trials - 1,
                        "players": list(w.players),
                        "lhs": format_rational(w.lhs),
                        "rhs": format_rational(w.rhs),
                    }
                    break
    (wdir / "index.json").write_text(json.dumps(index, indent=2) + "\n", encoding="utf-8")


if __name__ == "__main__":
    write_g1()
    write_witnesses()
