"""Executable axiom checkers, randomized counterexample search and the property matrix.

Every checker is an exact decision over rationals.  A violated report carries a
``Witness`` holding the offending union game, so ``recheck`` can replay it.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .base import Allocation, BaseValue, ed, esd
from .coalitional import CoalitionalValueId
from .errors import InvalidSearchSpace
from .game import (
    MAX_PLAYERS,
    Game,
    UnionGame,
    bcpa_reduction,
    bits,
    format_rational,
    quotient_game,
    quotient_star_game,
    remap_partition,
    split_off,
    trivial_partition,
)
from .randgames import DEFAULT_WORTH_BOUNDS, random_union_game, trial_rng


class AxiomId(str, enum.Enum):
    CED = "ced"
    CESD = "cesd"
    QGP = "qgp"
    QSGP = "qsgp"
    BCU = "bcu"
    EIU = "eiu"
    DMIVIU = "dmiviu"
    BCPA = "bcpa"
    EFFICIENCY = "efficiency"
    BLOCK_ORDER_INVARIANCE = "block-order-invariance"

    @property
    def label(self) -> str:
        return {AxiomId.QSGP: "Q*GP", AxiomId.BLOCK_ORDER_INVARIANCE: "ORDER"}.get(self, self.name)

    @classmethod
    def parse(cls, s: Union[str, "AxiomId"]) -> "AxiomId":
        if isinstance(s, cls):
            return s
        key = s.strip().lower().replace("_", "-").replace("*", "s")
        for a in cls:
            if key in (a.value, a.name.lower().replace("_", "-")):
                return a
        raise ValueError(f"unknown axiom {s!r}")


class Verdict(str, enum.Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    NOT_APPLICABLE = "not-applicable"
    HOLDS_WITHIN_BUDGET = "holds-within-budget"


@dataclass(frozen=True)
class Witness:
    ug: UnionGame
    players: tuple[str, ...]
    lhs: Fraction
    rhs: Fraction
    detail: str = ""

    def describe(self) -> str:
        who = ",".join(self.players)
        return f"{self.detail} ({who}): {format_rational(self.lhs)} != {format_rational(self.rhs)}"


@dataclass(frozen=True)
class AxiomReport:
    axiom: Optional[AxiomId]
    value: CoalitionalValueId
    verdict: Verdict
    witness: Optional[Witness] = None
    vacuous: bool = False
    trials: Optional[int] = None
    note: str = ""

    @property
    def violated(self) -> bool:
        return self.verdict is Verdict.VIOLATED

    def summary(self) -> str:
        name = self.axiom.label if self.axiom else "coalitional"
        line = f"{self.value.label} {name}: {self.verdict.value}"
        if self.vacuous:
            line += " (vacuous)"
        if self.trials is not None:
            line += f" after {self.trials} trial{'s' if self.trials != 1 else ''}"
        if self.witness is not None:
            line += f"; {self.witness.describe()}"
        return line


ValueArg = Union[CoalitionalValueId, str]
Memo = dict


def _evaluate(value: CoalitionalValueId, ug: UnionGame, memo: Optional[Memo]) -> Allocation:
    if memo is None:
        return value(ug)
    key = (value, ug)
    if key not in memo:
        memo[key] = value(ug)
    return memo[key]


def _report(axiom, value, witness=None, vacuous=False) -> AxiomReport:
    if witness is not None:
        return AxiomReport(axiom, value, Verdict.VIOLATED, witness)
    return AxiomReport(axiom, value, Verdict.HOLDS, vacuous=vacuous)


def _same_block_pairs(ug: UnionGame):
    for k, b in enumerate(ug.blocks):
        for i, j in itertools.combinations(bits(b), 2):
            yield k, i, j


def _check_quotient(axiom, value, ug, memo, quotient):
    value = CoalitionalValueId.parse(value)
    alloc = _evaluate(value, ug, memo)
    q = quotient(ug)
    qalloc = _evaluate(value, trivial_partition(q), memo)
    g = ug.game
    for k, b in enumerate(ug.blocks):
        total = sum((alloc[g.players[i]] for i in bits(b)), Fraction(0))
        if total != qalloc[str(k + 1)]:
            w = Witness(ug, g.members(b), total, qalloc[str(k + 1)], f"union {k + 1} total vs quotient payoff")
            return _report(axiom, value, w)
    return _report(axiom, value)


def check_qgp(value: ValueArg, ug: UnionGame, memo: Optional[Memo] = None) -> AxiomReport:
    """Each union's total equals the union's payoff in the quotient game."""
    return _check_quotient(AxiomId.QGP, value, ug, memo, quotient_game)


def check_qstar_gp(value: ValueArg, ug: UnionGame, memo: Optional[Memo] = None) -> AxiomReport:
    """Each union's total equals the union's payoff in the quotient* game."""
    return _check_quotient(AxiomId.QSGP, value, ug, memo, quotient_star_game)


def check_bcu(value: ValueArg, ug: UnionGame, memo: Optional[Memo] = None) -> AxiomReport:
    value = CoalitionalValueId.parse(value)
    g = ug.game
    alloc = _evaluate(value, ug, memo)
    vacuous = True
    for _, i, j in _same_block_pairs(ug):
        vacuous = False
        pi, pj = g.players[i], g.players[j]
        lhs = alloc[pi] - _evaluate(value, split_off(ug, j), memo)[pi]
        rhs = alloc[pj] - _evaluate(value, split_off(ug, i), memo)[pj]
        if lhs != rhs:
            return _report(AxiomId.BCU, value, Witness(ug, (pi, pj), lhs, rhs, "loss when partner leaves"))
    return _report(AxiomId.BCU, value, vacuous=vacuous)


def check_eiu(value: ValueArg, ug: UnionGame, memo: Optional[Memo] = None) -> AxiomReport:
    value = CoalitionalValueId.parse(value)
    g = ug.game
    alloc = _evaluate(value, ug, memo)
    vacuous = True
    for _, i, j in _same_block_pairs(ug):
        vacuous = False
        pi, pj = g.players[i], g.players[j]
        if alloc[pi] != alloc[pj]:
            return _report(AxiomId.EIU, value, Witness(ug, (pi, pj), alloc[pi], alloc[pj], "payoffs inside union"))
    return _report(AxiomId.EIU, value, vacuous=vacuous)


def check_dmiviu(value: ValueArg, ug: UnionGame, memo: Optional[Memo] = None) -> AxiomReport:
    value = CoalitionalValueId.parse(value)
    g = ug.game
    alloc = _evaluate(value, ug, memo)
    vacuous = True
    for _, i, j in _same_block_pairs(ug):
        vacuous = False
        pi, pj = g.players[i], g.players[j]
        lhs = alloc[pi] - alloc[pj]
        rhs = g.singleton(i) - g.singleton(j)
        if lhs != rhs:
            return _report(AxiomId.DMIVIU, value, Witness(ug, (pi, pj), lhs, rhs, "payoff gap vs singleton gap"))
    return _report(AxiomId.DMIVIU, value, vacuous=vacuous)


def check_bcpa(value: ValueArg, ug: UnionGame, memo: Optional[Memo] = None) -> AxiomReport:
    value = CoalitionalValueId.parse(value)
    g = ug.game
    alloc = _evaluate(value, ug, memo)
    vacuous = True
    for k, i, j in _same_block_pairs(ug):
        vacuous = False
        pi, pj = g.players[i], g.players[j]
        lhs = alloc[pi] - _evaluate(value, bcpa_reduction(ug, k, i), memo)[pi]
        rhs = alloc[pj] - _evaluate(value, bcpa_reduction(ug, k, j), memo)[pj]
        if lhs != rhs:
            return _report(AxiomId.BCPA, value, Witness(ug, (pi, pj), lhs, rhs, "loss when union partners vanish"))
    return _report(AxiomId.BCPA, value, vacuous=vacuous)


def check_coalitional(value: ValueArg, base: BaseValue, g: Game, memo: Optional[Memo] = None) -> AxiomReport:
    """Does ``value`` at the all-singleton partition reproduce ``base``?"""
    value = CoalitionalValueId.parse(value)
    axiom = {ed: AxiomId.CED, esd: AxiomId.CESD}.get(base)
    ug = trivial_partition(g)
    alloc = _evaluate(value, ug, memo)
    expected = base(g)
    for p in g.players:
        if alloc[p] != expected[p]:
            name = getattr(base, "__name__", "base value")
            return _report(axiom, value, Witness(ug, (p,), alloc[p], expected[p], f"singleton partition vs {name}"))
    return _report(axiom, value)


def check_efficiency(value: ValueArg, ug: UnionGame, memo: Optional[Memo] = None) -> AxiomReport:
    value = CoalitionalValueId.parse(value)
    g = ug.game
    total = sum(_evaluate(value, ug, memo).values(), Fraction(0))
    if total != g.v(g.grand):
        return _report(AxiomId.EFFICIENCY, value, Witness(ug, g.players, total, g.v(g.grand), "sum of payoffs vs v(N)"))
    return _report(AxiomId.EFFICIENCY, value)


def check_block_order(value: ValueArg, ug: UnionGame, memo: Optional[Memo] = None) -> AxiomReport:
    """Relisting the unions in another order must not change any payoff.

    All orders are tried for up to five unions; beyond that, rotations and the reversal.
    """
    value = CoalitionalValueId.parse(value)
    alloc = _evaluate(value, ug, memo)
    m = ug.m
    if m <= 5:
        orders = itertools.permutations(range(m))
    else:
        rot = [tuple((s + k) % m for k in range(m)) for s in range(m)]
        orders = rot + [tuple(reversed(range(m)))]
    for order in orders:
        other = _evaluate(value, remap_partition(ug, order), memo)
        for p in ug.game.players:
            if alloc[p] != other[p]:
                w = Witness(ug, (p,), alloc[p], other[p], f"union order {[k + 1 for k in order]}")
                return _report(AxiomId.BLOCK_ORDER_INVARIANCE, value, w)
    return _report(AxiomId.BLOCK_ORDER_INVARIANCE, value)


Checker = Callable[[ValueArg, UnionGame, Optional[Memo]], AxiomReport]

CHECKERS: dict[AxiomId, Checker] = {
    AxiomId.CED: lambda value, ug, memo=None: check_coalitional(value, ed, ug.game, memo),
    AxiomId.CESD: lambda value, ug, memo=None: check_coalitional(value, esd, ug.game, memo),
    AxiomId.QGP: check_qgp,
    AxiomId.QSGP: check_qstar_gp,
    AxiomId.BCU: check_bcu,
    AxiomId.EIU: check_eiu,
    AxiomId.DMIVIU: check_dmiviu,
    AxiomId.BCPA: check_bcpa,
    AxiomId.EFFICIENCY: check_efficiency,
    AxiomId.BLOCK_ORDER_INVARIANCE: check_block_order,
}


def check(value: ValueArg, axiom: Union[AxiomId, str], ug: UnionGame, memo: Optional[Memo] = None) -> AxiomReport:
    return CHECKERS[AxiomId.parse(axiom)](CoalitionalValueId.parse(value), ug, memo)


def recheck(report: AxiomReport) -> AxiomReport:
    """Replay a violated report's witness through the same checker."""
    if report.witness is None or report.axiom is None:
        raise ValueError("report has no replayable witness")
    return check(report.value, report.axiom, report.witness.ug)


# -- search ---------------------------------------------------------------------------


def _validate_space(n: int, ms: Sequence[int], trials: int, worth_bounds) -> None:
    if not 2 <= n <= MAX_PLAYERS:
        raise InvalidSearchSpace(f"need 2 <= n <= {MAX_PLAYERS}, got n={n}")
    if not ms or any(not 1 <= m <= n for m in ms):
        raise InvalidSearchSpace(f"need 1 <= m <= n, got m={list(ms)} with n={n}")
    if trials < 1:
        raise InvalidSearchSpace("trials must be positive")
    lo, hi = worth_bounds
    if lo > hi:
        raise InvalidSearchSpace(f"empty worth range {lo}..{hi}")


def _as_ms(m: Union[int, Sequence[int]]) -> tuple[int, ...]:
    return (m,) if isinstance(m, int) else tuple(m)


def trial_game(seed: int, n: int, m: int, t: int, worth_bounds=DEFAULT_WORTH_BOUNDS) -> UnionGame:
    """The game drawn for trial ``t``; a pure function of its arguments."""
    return random_union_game(trial_rng(seed, n, m, tuple(worth_bounds), t), n, m, worth_bounds)


def search_counterexample(
    value: ValueArg,
    axiom: Union[AxiomId, str],
    n: int,
    m: Union[int, Sequence[int]],
    trials: int,
    seed: int,
    worth_bounds=DEFAULT_WORTH_BOUNDS,
) -> AxiomReport:
    """Draw up to ``trials`` random games and stop at the first violation.

    ``m`` may be a sequence of union counts; trial ``t`` then uses ``m[t % len(m)]``.
    When no game in the budget had anything to test (e.g. every union a
    singleton for a pairwise axiom), the verdict is ``not-applicable``.
    """
    value = CoalitionalValueId.parse(value)
    axiom = AxiomId.parse(axiom)
    ms = _as_ms(m)
    _validate_space(n, ms, trials, worth_bounds)
    checker = CHECKERS[axiom]
    all_vacuous = True
    for t in range(trials):
        ug = trial_game(seed, n, ms[t % len(ms)], t, worth_bounds)
        rep = checker(value, ug, {})
        if rep.violated:
            return AxiomReport(axiom, value, Verdict.VIOLATED, rep.witness, trials=t + 1)
        all_vacuous = all_vacuous and rep.vacuous
    if all_vacuous:
        return AxiomReport(axiom, value, Verdict.NOT_APPLICABLE, vacuous=True, trials=trials)
    return AxiomReport(axiom, value, Verdict.HOLDS_WITHIN_BUDGET, trials=trials)


# -- value x property matrix ---------------------------------------------------------------

V = CoalitionalValueId
A = AxiomId

MATRIX_COLUMNS = (A.CED, A.CESD, A.QGP, A.QSGP, A.BCU, A.EIU, A.DMIVIU, A.BCPA)
MATRIX_ROWS = (V.ED_U, V.ESD1_U, V.ESD2_U, V.ESD3_U, V.ESD4_U, V.ESD5_U)

# Cells the property table claims (checkmarks); every other cell in the grid is a dash.
CLAIMED: dict[CoalitionalValueId, frozenset[AxiomId]] = {
    V.ED_U: frozenset({A.CED, A.QGP, A.BCU}),
    V.ESD1_U: frozenset({A.CESD, A.QGP, A.EIU}),
    V.ESD2_U: frozenset({A.CESD, A.QGP, A.DMIVIU}),
    V.ESD3_U: frozenset({A.CESD, A.QSGP, A.BCU}),
    V.ESD4_U: frozenset({A.CESD, A.QGP, A.BCPA}),
    V.ESD5_U: frozenset({A.CESD, A.QGP, A.BCU}),
}

# Dash cells that are known to hold; annotated instead of treated as surprises.
KNOWN_DASH_NOTES: dict[tuple[CoalitionalValueId, AxiomId], str] = {
    (V.ED_U, A.EIU): "text/table discrepancy: ED^U gives equal shares inside every union, so EIU holds",
    (V.ED_U, A.QSGP): "ED^U depends only on v(N); quotient and quotient* agree on the grand coalition",
    (V.ESD3_U, A.DMIVIU): "ESD3^U payoffs in one union differ exactly by their singleton worths",
}


@dataclass(frozen=True)
class MatrixCell:
    value: CoalitionalValueId
    axiom: AxiomId
    claimed: bool
    report: AxiomReport
    n: Optional[int] = None
    m: Optional[int] = None
    trial: Optional[int] = None
    note: str = ""

    @property
    def symbol(self) -> str:
        if self.claimed:
            return "FAIL" if self.report.violated else "ok"
        return "x" if self.report.violated else "~"

    @property
    def failed(self) -> bool:
        """A claimed property was violated."""
        return self.claimed and self.report.violated


@dataclass
class AxiomMatrix:
    ns: tuple[int, ...]
    trials: int
    seed: int
    worth_bounds: tuple[int, int]
    cells: dict[tuple[CoalitionalValueId, AxiomId], MatrixCell] = field(default_factory=dict)

    def __getitem__(self, key) -> MatrixCell:
        return self.cells[key]

    @property
    def ok(self) -> bool:
        return not any(c.failed for c in self.cells.values())

    def render(self) -> str:
        lo, hi = self.worth_bounds
        lines = [
            f"axiom matrix: n={','.join(map(str, self.ns))} trials={self.trials} seed={self.seed} worths={lo}..{hi}",
            "",
            f"{'':<8}" + "".join(f"{a.label:>8}" for a in MATRIX_COLUMNS),
        ]
        for v in MATRIX_ROWS:
            lines.append(f"{v.label:<8}" + "".join(f"{self.cells[v, a].symbol:>8}" for a in MATRIX_COLUMNS))
        lines += [
            "",
            "ok = claimed, held on every trial; FAIL = claimed, violated;",
            "x = not claimed, witness found; ~ = not claimed, held within budget",
        ]
        witnesses = [c for c in self._ordered() if c.report.violated]
        if witnesses:
            lines += ["", "witnesses:"]
            for c in witnesses:
                lines.append(
                    f"  {c.value.label} {c.axiom.label}: n={c.n} m={c.m} trial={c.trial} "
                    f"partition={_partition_str(c.report.witness.ug)} {c.report.witness.describe()}"
                )
        held = [c for c in self._ordered() if not c.claimed and not c.report.violated]
        if held:
            lines += ["", "unclaimed but held:"]
            for c in held:
                lines.append(f"  {c.value.label} {c.axiom.label}: {c.note or 'no witness within budget'}")
        return "\n".join(lines) + "\n"

    def _ordered(self):
        for v in MATRIX_ROWS:
            for a in MATRIX_COLUMNS:
                yield self.cells[v, a]


def _partition_str(ug: UnionGame) -> str:
    return "".join("{" + ",".join(b) + "}" for b in ug.partition())


def matrix_unions(n: int) -> tuple[int, ...]:
    """Union counts used for ``n`` players: 2..n-1, or just 1..n for tiny rosters."""
    return tuple(range(2, n)) if n >= 3 else tuple(range(1, n + 1))


def axiom_matrix(
    n: Union[int, Sequence[int]] = (3, 4, 5),
    trials: int = 10_000,
    seed: int = 0,
    worth_bounds=DEFAULT_WORTH_BOUNDS,
) -> AxiomMatrix:
    """Run every cell of the value x property grid on seeded random games.

    Claimed cells are checked on every trial.  Unclaimed cells stop at their
    first witness; the games drawn are exactly those ``search_counterexample``
    draws with ``m=matrix_unions(n)``, so each witness can be reproduced there.
    """
    ns = _as_ms(n)
    worth_bounds = tuple(worth_bounds)
    for k in ns:
        _validate_space(k, matrix_unions(k), trials, worth_bounds)
    result = AxiomMatrix(ns, trials, seed, worth_bounds)
    found: dict[tuple, tuple] = {}
    claimed_fail: dict[tuple, tuple] = {}
    for k in ns:
        ms = matrix_unions(k)
        for t in range(trials):
            m = ms[t % len(ms)]
            ug = trial_game(seed, k, m, t, worth_bounds)
            for v in MATRIX_ROWS:
                memo: Memo = {}
                for a in MATRIX_COLUMNS:
                    key = (v, a)
                    claimed = a in CLAIMED[v]
                    if key in found or key in claimed_fail:
                        continue
                    rep = CHECKERS[a](v, ug, memo)
                    if rep.violated:
                        target = claimed_fail if claimed else found
                        target[key] = (AxiomReport(a, v, Verdict.VIOLATED, rep.witness, trials=t + 1), k, m, t)
    total = trials * len(ns)
    for v in MATRIX_ROWS:
        for a in MATRIX_COLUMNS:
            key = (v, a)
            claimed = a in CLAIMED[v]
            note = KNOWN_DASH_NOTES.get(key, "")
            hit = claimed_fail.get(key) or found.get(key)
            if hit:
                rep, k, m, t = hit
                result.cells[key] = MatrixCell(v, a, claimed, rep, k, m, t, note)
            else:
                verdict = Verdict.HOLDS if claimed else Verdict.HOLDS_WITHIN_BUDGET
                rep = AxiomReport(a, v, verdict, trials=total, note=note)
                result.cells[key] = MatrixCell(v, a, claimed, rep, note=note)
    return result
