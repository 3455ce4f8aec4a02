"""JSON game files and ``builtin:`` pseudo-paths.

File layout::

    {"players": 3, "worth": {"1,2": 1, "1,3": 1, "1,2,3": 1}}

Keys are ascending comma-separated 1-based players, ``""`` is the empty
coalition (must be 0 when present) and missing coalitions are worth 0.
"""

from __future__ import annotations

import json
from pathlib import Path
from urllib.parse import parse_qsl

import numpy as np

from .catalog import builtin_game
from .games import MAX_PLAYERS, GameError, TuGame, format_coalition, parse_coalition


class GameFileError(GameError):
    """Malformed game input; the CLI maps it to exit code 2."""


def _no_duplicates(pairs):
    seen = {}
    for key, value in pairs:
        if key in seen:
            raise GameFileError(f"duplicate key {key!r}")
        seen[key] = value
    return seen


def parse_game_text(text: str, source: str = "<string>") -> TuGame:
    try:
        doc = json.loads(text, object_pairs_hook=_no_duplicates)
    except json.JSONDecodeError as e:
        raise GameFileError(f"{source}:{e.lineno}:{e.colno}: {e.msg}") from None
    except GameFileError as e:
        raise GameFileError(f"{source}: {e}") from None
    if not isinstance(doc, dict):
        raise GameFileError(f"{source}: top level must be an object")
    unknown = set(doc) - {"players", "worth"}
    if unknown:
        raise GameFileError(f"{source}: unknown keys {sorted(unknown)}")
    n = doc.get("players")
    if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= MAX_PLAYERS:
        raise GameFileError(f"{source}: 'players' must be an integer in 1..{MAX_PLAYERS}, got {n!r}")
    worth = doc.get("worth", {})
    if not isinstance(worth, dict):
        raise GameFileError(f"{source}: 'worth' must be an object")
    table = np.zeros(1 << n)
    masks: dict[int, str] = {}
    for key, value in worth.items():
        try:
            mask = parse_coalition(key)
        except GameError as e:
            raise GameFileError(f"{source}: worth key {key!r}: {e}") from None
        if mask >= 1 << n:
            raise GameFileError(f"{source}: worth key {key!r} names a player beyond {n}")
        if mask in masks:
            raise GameFileError(f"{source}: worth keys {masks[mask]!r} and {key!r} name the same coalition")
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise GameFileError(f"{source}: worth key {key!r}: expected a number, got {value!r}")
        if mask == 0 and value != 0:
            raise GameFileError(f"{source}: worth of the empty coalition \"\" must be 0, got {value!r}")
        masks[mask] = key
        table[mask] = float(value)
    try:
        return TuGame(n, table)
    except GameError as e:
        raise GameFileError(f"{source}: {e}") from None


def parse_builtin(path: str) -> TuGame:
    """``builtin:name?key=value&...``, e.g. ``builtin:bankruptcy?E=200&c=100,200,300``."""
    body = path[len("builtin:"):]
    name, _, query = body.partition("?")
    params: dict = {}
    for key, value in parse_qsl(query, keep_blank_values=True, strict_parsing=bool(query)):
        if key in ("c", "costs"):
            params[key] = [v for v in value.split(",") if v]
        elif key == "S":
            params[key] = [int(v) for v in value.split(",") if v]
        else:
            params[key] = value
    try:
        return builtin_game(name, **params)
    except GameError as e:
        raise GameFileError(f"{path}: {e}") from None


def load_game(path: str | Path) -> TuGame:
    path = str(path)
    if path.startswith("builtin:"):
        try:
            return parse_builtin(path)
        except ValueError as e:
            if isinstance(e, GameFileError):
                raise
            raise GameFileError(f"{path}: {e}") from None
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise GameFileError(f"{path}: {e.strerror}") from None
    return parse_game_text(text, path)


def game_to_dict(u: TuGame) -> dict:
    """All ``2^n`` entries in ascending mask order; floats keep full precision."""
    return {"players": u.n, "worth": {format_coalition(m): float(w) for m, w in enumerate(u.worth)}}


def dumps_game(u: TuGame) -> str:
    return json.dumps(game_to_dict(u), indent=2) + "\n"


def write_game(u: TuGame, path: str | Path) -> None:
    Path(path).write_text(dumps_game(u), encoding="utf-8")
