"""Cooperative TU games as coalition tables: game maps, values and lattice Hodge theory."""

__version__ = "0.1.0"

from .catalog import airport_game, bankruptcy_game, builtin_game, glove_game, majority_game, random_game
from .gamefile import GameFileError, load_game, write_game
from .games import (
    GameError,
    TuGame,
    coalition,
    format_coalition,
    is_cohesive,
    is_superadditive,
    members,
    parse_coalition,
    unanimity_coordinates,
    unanimity_game,
)
from .maps import GameMap, get_map, hamiache, mobius, potential_map, shoga, shoga_scaled, synergy
from .values import banzhaf, probabilistic_value, shapley, shoga_via_quotient

__all__ = [
    "GameError",
    "GameFileError",
    "GameMap",
    "TuGame",
    "__version__",
    "airport_game",
    "bankruptcy_game",
    "banzhaf",
    "builtin_game",
    "coalition",
    "format_coalition",
    "get_map",
    "glove_game",
    "hamiache",
    "is_cohesive",
    "is_superadditive",
    "load_game",
    "majority_game",
    "members",
    "mobius",
    "parse_coalition",
    "potential_map",
    "probabilistic_value",
    "random_game",
    "shapley",
    "shoga",
    "shoga_scaled",
    "shoga_via_quotient",
    "synergy",
    "unanimity_coordinates",
    "unanimity_game",
    "write_game",
]
