"""Games, coalitions and a priori unions.

Coalitions are encoded as integer bitmasks over the roster: bit ``i`` is set
when ``players[i]`` is a member.  All worths are exact ``Fraction`` objects.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import (
    CoalitionOutsideBlock,
    DuplicatePlayer,
    EmptyRestriction,
    InvalidPartition,
    MissingCoalition,
    NonzeroEmptyWorth,
    RosterTooLarge,
    SingletonSplit,
    UnknownPlayer,
    UnknownPlayerInCoalition,
)

MAX_PLAYERS = 20

Rational = Union[int, Fraction, str]
CoalitionLike = Union[int, str, Iterable[str]]

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


def as_rational(x) -> Fraction:
    """Coerce ``x`` to an exact Fraction.

    Accepts ints, Fractions and literals of the form ``p``, ``-p`` or ``p/q``.
    Floats are rejected: they would smuggle rounding into exact identities.
    """
    if isinstance(x, bool):
        raise TypeError(f"not a rational: {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not _RATIONAL_RE.match(s):
            raise ValueError(f"malformed rational literal {x!r}")
        if "/" in s and int(s.split("/")[1]) == 0:
            raise ValueError(f"zero denominator in {x!r}")
        return Fraction(s)
    raise TypeError(f"not a rational: {x!r}")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def submasks(mask: int) -> Iterable[int]:
    """Every submask of ``mask`` including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class Game:
    """A TU-game: an ordered roster and a worth for each of its 2**n coalitions."""

    players: tuple[str, ...]
    worths: tuple[Fraction, ...]

    def __post_init__(self):
        n = len(self.players)
        if n == 0:
            raise ValueError("a game needs at least one player")
        if n > MAX_PLAYERS:
            raise RosterTooLarge(f"{n} players exceeds the limit of {MAX_PLAYERS}")
        seen = set()
        for p in self.players:
            if not isinstance(p, str) or not p:
                raise ValueError(f"player names must be nonempty strings, got {p!r}")
            if "," in p:
                raise ValueError(f"player name {p!r} may not contain a comma")
            if p in seen:
                raise DuplicatePlayer(p)
            seen.add(p)
        if len(self.worths) != 1 << n:
            raise ValueError("worth table must have 2**n entries")
        if self.worths[0] != 0:
            raise NonzeroEmptyWorth(f"v(empty) = {self.worths[0]}")

    @property
    def n(self) -> int:
        return len(self.players)

    @property
    def grand(self) -> int:
        return (1 << self.n) - 1

    def index(self, name: str) -> int:
        try:
            return self.players.index(name)
        except ValueError:
            raise UnknownPlayer(name) from None

    def mask(self, coalition: CoalitionLike) -> int:
        """Bitmask of a coalition given as names, a comma-joined key or a mask."""
        if isinstance(coalition, int):
            if coalition < 0 or coalition > self.grand:
                raise UnknownPlayerInCoalition(f"mask {coalition} outside roster")
            return coalition
        if isinstance(coalition, str):
            coalition = [c for c in coalition.split(",") if c] if coalition else []
        m = 0
        for name in coalition:
            try:
                m |= 1 << self.players.index(name)
            except ValueError:
                raise UnknownPlayerInCoalition(name) from None
        return m

    def members(self, mask: int) -> tuple[str, ...]:
        return tuple(self.players[i] for i in bits(mask))

    def v(self, mask: int) -> Fraction:
        return self.worths[mask]

    def worth(self, coalition: CoalitionLike) -> Fraction:
        return self.worths[self.mask(coalition)]

    def singleton(self, i: int) -> Fraction:
        return self.worths[1 << i]


def make_game(
    roster: Sequence[str],
    worth_entries: Mapping,
    *,
    mode: str = "strict",
    default_worth: Rational = 0,
) -> Game:
    """Build a validated game from a coalition -> worth mapping.

    Coalition keys may be comma-joined names, iterables of names or masks.
    In ``strict`` mode every nonempty coalition must be listed exactly once;
    in ``sparse`` mode missing coalitions take ``default_worth``.
    """
    roster = tuple(roster)
    if mode not in ("strict", "sparse"):
        raise ValueError(f"unknown mode {mode!r}")
    if len(roster) > MAX_PLAYERS:
        raise RosterTooLarge(f"{len(roster)} players exceeds the limit of {MAX_PLAYERS}")
    if len(set(roster)) != len(roster):
        dup = next(p for p in roster if roster.count(p) > 1)
        raise DuplicatePlayer(dup)
    n = len(roster)
    probe = Game(roster, (Fraction(0),) * (1 << n))
    table: dict[int, Fraction] = {}
    for key, value in worth_entries.items():
        m = probe.mask(key)
        if m in table:
            raise ValueError(f"coalition {key!r} listed twice")
        table[m] = as_rational(value)
    if table.get(0, 0) != 0:
        raise NonzeroEmptyWorth(f"v(empty) = {table[0]}")
    default = as_rational(default_worth)
    worths = [Fraction(0)]
    for m in range(1, 1 << n):
        if m in table:
            worths.append(table[m])
        elif mode == "strict":
            raise MissingCoalition(",".join(probe.members(m)))
        else:
            worths.append(default)
    return Game(roster, tuple(worths))


def game_from_function(roster: Sequence[str], fn) -> Game:
    """Game whose worth on mask ``S`` is ``fn(S)``; ``fn(0)`` is ignored."""
    n = len(roster)
    return Game(tuple(roster), (Fraction(0),) + tuple(as_rational(fn(m)) for m in range(1, 1 << n)))


def zero_normalized(g: Game) -> Game:
    singles = [g.singleton(i) for i in range(g.n)]
    return Game(
        g.players,
        tuple(g.worths[m] - sum((singles[i] for i in bits(m)), Fraction(0)) for m in range(1 << g.n)),
    )


def restrict_to(g: Game, keep: CoalitionLike) -> Game:
    """Subgame on the players of ``keep``, roster order preserved."""
    keep_mask = g.mask(keep)
    if keep_mask == 0:
        raise EmptyRestriction("cannot restrict a game to the empty coalition")
    idx = bits(keep_mask)
    worths = []
    for sub in range(1 << len(idx)):
        full = 0
        for j, i in enumerate(idx):
            if sub >> j & 1:
                full |= 1 << i
        worths.append(g.worths[full])
    return Game(tuple(g.players[i] for i in idx), tuple(worths))


@dataclass(frozen=True)
class UnionGame:
    """A game together with a partition of its roster into a priori unions.

    ``blocks`` holds one bitmask per union, in the order the unions were given.
    """

    game: Game
    blocks: tuple[int, ...]

    def __post_init__(self):
        seen = 0
        for b in self.blocks:
            if b == 0:
                raise InvalidPartition("empty block")
            if b & seen:
                raise InvalidPartition("blocks overlap")
            seen |= b
        if seen != self.game.grand:
            raise InvalidPartition("blocks do not cover the roster")

    @classmethod
    def from_names(cls, game: Game, partition: Iterable[Iterable[str]] | None = None) -> "UnionGame":
        if partition is None:
            return trivial_partition(game)
        blocks = []
        for block in partition:
            block = list(block)
            m = game.mask(block)
            if popcount(m) != len(block):
                raise InvalidPartition(f"block {block!r} repeats a player")
            blocks.append(m)
        return cls(game, tuple(blocks))

    @property
    def m(self) -> int:
        return len(self.blocks)

    def sizes(self) -> list[int]:
        return [popcount(b) for b in self.blocks]

    def block_of(self, player: Union[int, str]) -> int:
        """0-based index of the union containing ``player`` (name or roster index)."""
        i = self.game.index(player) if isinstance(player, str) else player
        if not 0 <= i < self.game.n:
            raise UnknownPlayer(str(player))
        for k, b in enumerate(self.blocks):
            if b >> i & 1:
                return k
        raise UnknownPlayer(str(player))  # unreachable for a valid partition

    def union_mask(self, ks: Iterable[int]) -> int:
        m = 0
        for k in ks:
            m |= self.blocks[k]
        return m

    def partition(self) -> list[list[str]]:
        return [list(self.game.members(b)) for b in self.blocks]

    def __str__(self):
        parts = " ".join("{" + ",".join(b) + "}" for b in self.partition())
        return f"UnionGame(players={list(self.game.players)}, partition={parts})"


def trivial_partition(g: Game) -> UnionGame:
    """All-singleton partition, in roster order."""
    return UnionGame(g, tuple(1 << i for i in range(g.n)))


def block_of(ug: UnionGame, player: Union[int, str]) -> int:
    return ug.block_of(player)


def split_off(ug: UnionGame, player: Union[int, str]) -> UnionGame:
    """Move ``player`` out of its union into a new singleton placed right after it."""
    i = ug.game.index(player) if isinstance(player, str) else player
    k = ug.block_of(i)
    if popcount(ug.blocks[k]) == 1:
        raise SingletonSplit(f"player {ug.game.players[i]} is already alone in its union")
    bit = 1 << i
    blocks = ug.blocks[:k] + (ug.blocks[k] & ~bit, bit) + ug.blocks[k + 1 :]
    return UnionGame(ug.game, blocks)


def _quotient_worths(ug: UnionGame, fn) -> Game:
    m = ug.m
    names = tuple(str(k + 1) for k in range(m))
    worths = [Fraction(0)]
    for r in range(1, 1 << m):
        worths.append(fn(r))
    return Game(names, tuple(worths))


def quotient_game(ug: UnionGame) -> Game:
    """The game played by the unions; union ``k`` becomes player ``str(k+1)``."""
    return _quotient_worths(ug, lambda r: ug.game.v(ug.union_mask(bits(r))))


def quotient_star_game(ug: UnionGame) -> Game:
    """Unions play with additive worths of their members; only all unions get v(N)."""
    g = ug.game
    block_singles = [sum((g.singleton(i) for i in bits(b)), Fraction(0)) for b in ug.blocks]
    full = (1 << ug.m) - 1

    def worth(r):
        if r == full:
            return g.v(g.grand)
        return sum((block_singles[k] for k in bits(r)), Fraction(0))

    return _quotient_worths(ug, worth)


def bcpa_reduction(ug: UnionGame, k: int, player: Union[int, str]) -> UnionGame:
    """Delete every member of union ``k`` except ``player``, who stays as a singleton union.

    The reduced game keeps the surviving players in roster order and ``m`` unions
    in their original positions.
    """
    g = ug.game
    i = g.index(player) if isinstance(player, str) else player
    if not ug.blocks[k] >> i & 1:
        raise CoalitionOutsideBlock(f"player {g.players[i]} is not in union {k + 1}")
    keep = (g.grand & ~ug.blocks[k]) | (1 << i)
    sub = restrict_to(g, keep)
    names = []
    for j, b in enumerate(ug.blocks):
        names.append([g.players[i]] if j == k else list(g.members(b)))
    return UnionGame.from_names(sub, names)


def remap_partition(ug: UnionGame, order: Sequence[int]) -> UnionGame:
    """Same game, unions listed in the order ``order`` (a permutation of block indices)."""
    return UnionGame(ug.game, tuple(ug.blocks[k] for k in order))
