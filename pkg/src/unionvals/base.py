"""Single-game values: equal division, equal surplus division, Shapley, Banzhaf.

Every value maps a ``Game`` to an allocation, a dict from player name to an
exact ``Fraction`` in roster order.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable

from .game import Game

Allocation = dict[str, Fraction]
BaseValue = Callable[[Game], Allocation]


def ed(g: Game) -> Allocation:
    share = g.v(g.grand) / g.n
    return {p: share for p in g.players}


def esd(g: Game) -> Allocation:
    singles = [g.singleton(i) for i in range(g.n)]
    share = (g.v(g.grand) - sum(singles, Fraction(0))) / g.n
    return {p: singles[i] + share for i, p in enumerate(g.players)}


def shapley(g: Game) -> Allocation:
    """Shapley value by subset enumeration with weights s!(n-s-1)!/n!."""
    n = g.n
    weights = [Fraction(factorial(s) * factorial(n - s - 1), factorial(n)) for s in range(n)]
    sizes = [bin(m).count("1") for m in range(1 << n)]
    w = g.worths
    out = {}
    for i, p in enumerate(g.players):
        bit = 1 << i
        total = Fraction(0)
        for s in range(1 << n):
            if not s & bit:
                total += weights[sizes[s]] * (w[s | bit] - w[s])
        out[p] = total
    return out


def banzhaf(g: Game) -> Allocation:
    """Normalised-by-coalitions Banzhaf value; not efficient in general."""
    n = g.n
    w = g.worths
    scale = Fraction(1, 1 << (n - 1))
    out = {}
    for i, p in enumerate(g.players):
        bit = 1 << i
        total = sum(w[s | bit] - w[s] for s in range(1 << n) if not s & bit)
        out[p] = scale * total
    return out


BASE_VALUES: dict[str, BaseValue] = {
    "ed": ed,
    "esd": esd,
    "shapley": shapley,
    "banzhaf": banzhaf,
}
