"""Health boosters: rotating quote widgets and the dodge-ball game."""

from .game import Ball, GameConfig, GameState, Move, game_step, new_game, snapshot
from .quotes import (
    Quote,
    QuoteKind,
    QuoteRotator,
    QuoteSet,
    default_quotes,
    load_quotes,
    next_quote,
    parse_quotes,
)

__all__ = [
    "Ball",
    "GameConfig",
    "GameState",
    "Move",
    "game_step",
    "new_game",
    "snapshot",
    "Quote",
    "QuoteKind",
    "QuoteRotator",
    "QuoteSet",
    "default_quotes",
    "load_quotes",
    "next_quote",
    "parse_quotes",
]
