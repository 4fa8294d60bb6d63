"""Values for games with a priori unions.

Union indices are 0-based throughout the library; the quotient game names
union ``k`` as player ``str(k + 1)``.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from math import prod
from typing import Callable, Union

from .base import Allocation, BaseValue, banzhaf, ed, esd, shapley
from .errors import CoalitionOutsideBlock, WeightUndefined
from .game import Game, UnionGame, bits, popcount, submasks

CoalitionalValue = Callable[[UnionGame], Allocation]


# -- two-step procedure --------------------------------------------------------


def modified_game(ug: UnionGame, r: int, s: int) -> Game:
    """Game among the unions where union ``r`` is represented only by coalition ``s``."""
    if s & ~ug.blocks[r]:
        raise CoalitionOutsideBlock(f"coalition {ug.game.members(s)} is not inside union {r + 1}")
    g = ug.game
    m = ug.m
    rbit = 1 << r
    worths = [Fraction(0)]
    for h in range(1, 1 << m):
        mask = ug.union_mask(bits(h & ~rbit))
        if h & rbit:
            mask |= s
        worths.append(g.v(mask))
    return Game(tuple(str(k + 1) for k in range(m)), tuple(worths))


def reduced_game(ug: UnionGame, r: int, f: BaseValue) -> Game:
    """Game inside union ``r``: a coalition S is worth what ``f`` gives union ``r`` in the modified game.

    The empty coalition is pinned to 0 so the result is a valid game, even when
    ``f`` would assign the empty representative a nonzero share.
    """
    g = ug.game
    block = ug.blocks[r]
    idx = bits(block)
    rname = str(r + 1)
    worths = [Fraction(0)]
    for sub in range(1, 1 << len(idx)):
        s = 0
        for j, i in enumerate(idx):
            if sub >> j & 1:
                s |= 1 << i
        worths.append(f(modified_game(ug, r, s))[rname])
    return Game(tuple(g.players[i] for i in idx), tuple(worths))


def owen_procedure(ug: UnionGame, f: BaseValue) -> Allocation:
    """Apply ``f`` between unions, then again inside each union on its reduced game."""
    payoff: dict[str, Fraction] = {}
    for r in range(ug.m):
        payoff.update(f(reduced_game(ug, r, f)))
    return {p: payoff[p] for p in ug.game.players}


def owen(ug: UnionGame) -> Allocation:
    return owen_procedure(ug, shapley)


def banzhaf_owen(ug: UnionGame) -> Allocation:
    return owen_procedure(ug, banzhaf)


# -- closed forms ----------------------------------------------------------------


def _block_parts(ug: UnionGame):
    g = ug.game
    block_worths = [g.v(b) for b in ug.blocks]
    surplus = g.v(g.grand) - sum(block_worths, Fraction(0))
    return g, block_worths, surplus


def ed_u(ug: UnionGame) -> Allocation:
    g = ug.game
    total = g.v(g.grand)
    out = {}
    for i, p in enumerate(g.players):
        k = ug.block_of(i)
        out[p] = total / (ug.m * popcount(ug.blocks[k]))
    return out


def esd1_u(ug: UnionGame) -> Allocation:
    g, block_worths, surplus = _block_parts(ug)
    out = {}
    for i, p in enumerate(g.players):
        k = ug.block_of(i)
        pk = popcount(ug.blocks[k])
        out[p] = block_worths[k] / pk + surplus / (ug.m * pk)
    return out


def esd2_u(ug: UnionGame) -> Allocation:
    g, block_worths, surplus = _block_parts(ug)
    inner = []
    for k, b in enumerate(ug.blocks):
        singles = sum((g.singleton(j) for j in bits(b)), Fraction(0))
        inner.append((block_worths[k] - singles) / popcount(b))
    out = {}
    for i, p in enumerate(g.players):
        k = ug.block_of(i)
        out[p] = g.singleton(i) + inner[k] + surplus / (ug.m * popcount(ug.blocks[k]))
    return out


def esd3_u(ug: UnionGame) -> Allocation:
    g = ug.game
    surplus = g.v(g.grand) - sum((g.singleton(j) for j in range(g.n)), Fraction(0))
    out = {}
    for i, p in enumerate(g.players):
        k = ug.block_of(i)
        out[p] = g.singleton(i) + surplus / (ug.m * popcount(ug.blocks[k]))
    return out


def esd4_correction(ug: UnionGame) -> Allocation:
    """What the two-step equal surplus value adds on top of ``esd2_u``.

    For i in union k with O the players outside k:
    (mean_t v(t) - v(i))/m + (v(O + i) - mean_t v(O + t))/m, t ranging over union k.
    """
    g = ug.game
    out = {}
    for i, p in enumerate(g.players):
        k = ug.block_of(i)
        block = ug.blocks[k]
        members = bits(block)
        pk = len(members)
        outside = g.grand & ~block
        mean_single = sum((g.singleton(t) for t in members), Fraction(0)) / pk
        mean_outside = sum((g.v(outside | 1 << t) for t in members), Fraction(0)) / pk
        out[p] = (mean_single - g.singleton(i) + g.v(outside | 1 << i) - mean_outside) / ug.m
    return out


def esd4_u(ug: UnionGame) -> Allocation:
    base = esd2_u(ug)
    corr = esd4_correction(ug)
    return {p: base[p] + corr[p] for p in base}


def esd5_weight(m: int, pk: int, t: int) -> Fraction:
    """Weight of a coalition of size ``t`` inside a union of size ``pk`` when there are ``m`` unions.

    The general case (2 <= pk - t <= pk - 2) multiplies the ratios (pk-j-t)/(pk-j)
    for j = 0..z-2 with z = pk - t; adding them instead breaks balanced
    contributions once a union has five or more members.
    """
    if m < 1 or pk < 2 or not 1 <= t <= pk - 1:
        raise WeightUndefined(f"no weight for m={m}, p_k={pk}, t={t}")
    if pk == 2 and t == 1:
        return Fraction(1, 2)
    if pk > 2 and t == 1:
        return Fraction(1, pk) * (1 + sum((Fraction(1, m + j) for j in range(1, pk - 1)), Fraction(0)))
    if pk > 2 and t == pk - 1:
        return Fraction(m, (m + 1) * pk)
    z = pk - t
    if pk > 3 and 2 <= z <= pk - 2:
        lead = Fraction(m + z - 1, (pk - z + 1) * (m + z))
        return lead * prod((Fraction(pk - j - t, pk - j) for j in range(z - 1)), start=Fraction(1))
    raise WeightUndefined(f"no weight for m={m}, p_k={pk}, t={t}")  # unreachable for valid ranges


def esd5_correction(ug: UnionGame) -> Allocation:
    """Weighted subset sums that turn ``esd1_u`` into ``esd5_u``.

    Only strict nonempty subsets of a union contribute, so singleton unions get 0.
    """
    g = ug.game
    out = {p: Fraction(0) for p in g.players}
    for block in ug.blocks:
        members = bits(block)
        pk = len(members)
        if pk == 1:
            continue
        for sub in submasks(block):
            if sub == 0 or sub == block:
                continue
            worth = g.v(sub)
            if not worth:
                continue
            t = popcount(sub)
            wt = esd5_weight(ug.m, pk, t)
            gain = wt * worth / t
            loss = wt * worth / (pk - t)
            for i in members:
                out[g.players[i]] += gain if sub >> i & 1 else -loss
    return out


def esd5_u(ug: UnionGame) -> Allocation:
    base = esd1_u(ug)
    corr = esd5_correction(ug)
    return {p: base[p] + corr[p] for p in base}


class CoalitionalValueId(str, enum.Enum):
    ED_U = "edu"
    ESD1_U = "esd1u"
    ESD2_U = "esd2u"
    ESD3_U = "esd3u"
    ESD4_U = "esd4u"
    ESD5_U = "esd5u"
    OWEN = "owen"
    BANZHAF_OWEN = "banzhaf-owen"

    @property
    def label(self) -> str:
        return _LABELS[self]

    def __call__(self, ug: UnionGame) -> Allocation:
        return COALITIONAL_VALUES[self](ug)

    @classmethod
    def parse(cls, s: Union[str, "CoalitionalValueId"]) -> "CoalitionalValueId":
        if isinstance(s, cls):
            return s
        key = s.strip().lower().replace("_", "").replace("-", "")
        for v in cls:
            if key in (v.value.replace("-", ""), v.name.lower().replace("_", "")):
                return v
        raise ValueError(f"unknown coalitional value {s!r}")


_LABELS = {
    CoalitionalValueId.ED_U: "ED^U",
    CoalitionalValueId.ESD1_U: "ESD1^U",
    CoalitionalValueId.ESD2_U: "ESD2^U",
    CoalitionalValueId.ESD3_U: "ESD3^U",
    CoalitionalValueId.ESD4_U: "ESD4^U",
    CoalitionalValueId.ESD5_U: "ESD5^U",
    CoalitionalValueId.OWEN: "Owen",
    CoalitionalValueId.BANZHAF_OWEN: "Banzhaf-Owen",
}

COALITIONAL_VALUES: dict[CoalitionalValueId, CoalitionalValue] = {
    CoalitionalValueId.ED_U: ed_u,
    CoalitionalValueId.ESD1_U: esd1_u,
    CoalitionalValueId.ESD2_U: esd2_u,
    CoalitionalValueId.ESD3_U: esd3_u,
    CoalitionalValueId.ESD4_U: esd4_u,
    CoalitionalValueId.ESD5_U: esd5_u,
    CoalitionalValueId.OWEN: owen,
    CoalitionalValueId.BANZHAF_OWEN: banzhaf_owen,
}

# Value each coalitional value collapses to at the all-singleton partition.
BASE_OF: dict[CoalitionalValueId, BaseValue] = {
    CoalitionalValueId.ED_U: ed,
    CoalitionalValueId.ESD1_U: esd,
    CoalitionalValueId.ESD2_U: esd,
    CoalitionalValueId.ESD3_U: esd,
    CoalitionalValueId.ESD4_U: esd,
    CoalitionalValueId.ESD5_U: esd,
    CoalitionalValueId.OWEN: shapley,
    CoalitionalValueId.BANZHAF_OWEN: banzhaf,
}
