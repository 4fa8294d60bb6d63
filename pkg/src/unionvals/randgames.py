"""Seeded random games and partitions for property checks and counterexample search."""

from __future__ import annotations

import random
from fractions import Fraction

from .game import Game, UnionGame

DEFAULT_WORTH_BOUNDS = (-10, 10)


def trial_rng(seed: int, *key) -> random.Random:
    """Independent generator for one trial, derived only from ``seed`` and ``key``.

    String seeding is hashed with SHA-512 by ``random``, so the stream does not
    depend on PYTHONHASHSEED or on the order trials are run in.
    """
    return random.Random("/".join(str(x) for x in (seed, *key)))


def random_game(rng: random.Random, n: int, worth_bounds=DEFAULT_WORTH_BOUNDS, names=None) -> Game:
    lo, hi = worth_bounds
    names = tuple(names) if names is not None else tuple(str(i + 1) for i in range(n))
    worths = (Fraction(0),) + tuple(Fraction(rng.randint(lo, hi)) for _ in range((1 << n) - 1))
    return Game(names, worths)


def random_blocks(rng: random.Random, n: int, m: int) -> tuple[int, ...]:
    """Random surjection of n players onto m labels, redrawn until every label is used."""
    while True:
        labels = [rng.randrange(m) for _ in range(n)]
        if len(set(labels)) == m:
            break
    blocks = [0] * m
    for i, k in enumerate(labels):
        blocks[k] |= 1 << i
    return tuple(blocks)


def blocks_from_sizes(sizes) -> tuple[int, ...]:
    """Contiguous blocks of the given sizes over players 0..sum(sizes)-1."""
    out = []
    start = 0
    for s in sizes:
        out.append(((1 << s) - 1) << start)
        start += s
    return tuple(out)


def random_union_game(rng: random.Random, n: int, m: int, worth_bounds=DEFAULT_WORTH_BOUNDS) -> UnionGame:
    game = random_game(rng, n, worth_bounds)
    return UnionGame(game, random_blocks(rng, n, m))
