"""JSON game documents.

A document looks like::

    {
      "players": ["1", "2", "3"],
      "mode": "strict",
      "coalitions": {"1": "0", "2": "2", "1,2": "4", ...},
      "partition": [["1", "2"], ["3"]]
    }

Coalition keys are comma-joined member names in roster order; the empty
coalition is never listed.  Worths are rational literals ("3", "-3", "3/2").
``partition`` is optional and defaults to all singletons.  ``default_worth``
is only meaningful in ``sparse`` mode.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .errors import DocumentSyntaxError, DocumentValidationError, UnionValsError
from .game import Game, UnionGame, as_rational, bits, format_rational, make_game, popcount

FIELDS = ("players", "mode", "default_worth", "coalitions", "partition")


@dataclass(frozen=True)
class GameDocument:
    players: tuple[str, ...]
    coalitions: tuple[tuple[str, str], ...]
    partition: Optional[tuple[tuple[str, ...], ...]] = None
    default_worth: Optional[str] = None
    mode: str = "strict"


def _literal(value, where: str) -> str:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise DocumentSyntaxError(f"{where}: expected a rational literal string, got {value!r}")
    try:
        return format_rational(as_rational(value))
    except ValueError as exc:
        raise DocumentSyntaxError(f"{where}: {exc}") from None


def _key_order(players: tuple[str, ...]):
    pos = {p: i for i, p in enumerate(players)}

    def order(key: str):
        idx = [pos[p] for p in key.split(",")]
        return (len(idx), idx)

    return order


def load_document(text: str) -> GameDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise DocumentSyntaxError("top level must be an object")
    mode = raw.get("mode", "strict")
    if mode not in ("strict", "sparse"):
        raise DocumentSyntaxError(f"mode: expected 'strict' or 'sparse', got {mode!r}")
    unknown = sorted(set(raw) - set(FIELDS))
    if unknown and mode == "strict":
        raise DocumentSyntaxError(f"unknown field(s): {', '.join(unknown)}")

    players = raw.get("players")
    if not isinstance(players, list) or not all(isinstance(p, str) for p in players):
        raise DocumentSyntaxError("players: expected a list of strings")
    players = tuple(players)
    if not players:
        raise DocumentValidationError("players: roster is empty")
    for p in players:
        if not p or "," in p:
            raise DocumentValidationError(f"players: invalid name {p!r}")
    if len(set(players)) != len(players):
        raise DocumentValidationError("players: duplicate player name")
    pos = {p: i for i, p in enumerate(players)}

    coalitions = raw.get("coalitions", {})
    if not isinstance(coalitions, dict):
        raise DocumentSyntaxError("coalitions: expected an object")
    entries = []
    for key, value in coalitions.items():
        where = f"coalitions[{key!r}]"
        names = key.split(",") if key else []
        if not names:
            raise DocumentValidationError(f"{where}: the empty coalition is never listed")
        for name in names:
            if name not in pos:
                raise DocumentValidationError(f"{where}: unknown player {name!r}")
        idx = [pos[name] for name in names]
        if idx != sorted(set(idx)):
            raise DocumentValidationError(f"{where}: members must be distinct and in roster order")
        entries.append((key, _literal(value, where)))
    entries.sort(key=lambda kv: _key_order(players)(kv[0]))

    default = raw.get("default_worth")
    if default is not None:
        default = _literal(default, "default_worth")

    partition = raw.get("partition")
    if partition is not None:
        if not isinstance(partition, list) or not all(
            isinstance(b, list) and all(isinstance(p, str) for p in b) for b in partition
        ):
            raise DocumentSyntaxError("partition: expected a list of lists of player names")
        partition = tuple(tuple(b) for b in partition)

    return GameDocument(players, tuple(entries), partition, default, mode)


def to_union_game(doc: GameDocument) -> UnionGame:
    try:
        game = make_game(
            doc.players,
            dict(doc.coalitions),
            mode=doc.mode,
            default_worth=doc.default_worth if doc.default_worth is not None else 0,
        )
        if doc.partition is None:
            return UnionGame.from_names(game)
        for block in doc.partition:
            for name in block:
                if name not in doc.players:
                    raise DocumentValidationError(f"partition: unknown player {name!r}")
        return UnionGame.from_names(game, doc.partition)
    except DocumentValidationError:
        raise
    except UnionValsError as exc:
        raise DocumentValidationError(f"{type(exc).__name__}: {exc}") from exc


def from_union_game(ug: UnionGame) -> GameDocument:
    """Canonical strict document: every coalition, sorted by size then roster position."""
    g = ug.game
    masks = sorted(range(1, 1 << g.n), key=lambda m: (popcount(m), bits(m)))
    coalitions = tuple((",".join(g.members(m)), format_rational(g.v(m))) for m in masks)
    partition = tuple(tuple(b) for b in ug.partition())
    return GameDocument(g.players, coalitions, partition)


def from_game(g: Game) -> GameDocument:
    doc = from_union_game(UnionGame(g, tuple(1 << i for i in range(g.n))))
    return GameDocument(doc.players, doc.coalitions)


def dump_document(doc: GameDocument) -> str:
    """Byte-deterministic JSON text, one coalition per line."""
    lines = ["{"]
    body = [f'  "players": {json.dumps(list(doc.players), ensure_ascii=False)}', f'  "mode": {json.dumps(doc.mode)}']
    if doc.default_worth is not None:
        body.append(f'  "default_worth": {json.dumps(doc.default_worth)}')
    coal = [f"    {json.dumps(k, ensure_ascii=False)}: {json.dumps(v)}" for k, v in doc.coalitions]
    body.append('  "coalitions": {' + ("\n" + ",\n".join(coal) + "\n  }" if coal else "}"))
    if doc.partition is not None:
        body.append(f'  "partition": {json.dumps([list(b) for b in doc.partition], ensure_ascii=False)}')
    lines.append(",\n".join(body))
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_game(text: str) -> UnionGame:
    return to_union_game(load_document(text))


def serialize_game(ug: UnionGame) -> str:
    return dump_document(from_union_game(ug))


def read_game(path) -> UnionGame:
    with open(path, encoding="utf-8") as fh:
        return parse_game(fh.read())
