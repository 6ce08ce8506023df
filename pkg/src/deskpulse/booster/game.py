"""Server-authoritative dodge-ball game.

The play field is the unit square; the avatar slides along the floor and
balls fall from the top. Each hit costs one life; surviving a full
recharge interval without a hit restores one (capped). The state is a
plain value: stepping is a pure function of (state, input, config), with
the RNG state carried as a 64-bit integer, so identical input tapes replay
to identical states on every platform.

Timers are tracked in whole ticks to keep "exactly 15.0 s" exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import NamedTuple

from ..errors import GameOver, ValidationError

_MASK64 = (1 << 64) - 1


def _splitmix64(state: int) -> tuple[int, int]:
    """One SplitMix64 step: (new_state, output word)."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


def _rand01(state: int) -> tuple[int, float]:
    state, word = _splitmix64(state)
    return state, (word >> 11) * 2.0**-53


class Move(str, Enum):
    LEFT = "left"
    RIGHT = "right"
    STAY = "stay"


class Ball(NamedTuple):
    x: float
    y: float
    fall_speed: float


@dataclass(frozen=True)
class GameConfig:
    initial_lives: int = 3
    max_lives: int = 3
    recharge_seconds: float = 15.0
    ball_spawn_rate: float = 1.0  # balls per second (expected)
    fall_speed_min: float = 0.25  # field heights per second
    fall_speed_max: float = 0.60
    avatar_half_width: float = 0.05
    ball_radius: float = 0.03
    tick: float = 1.0 / 30.0
    avatar_step: float = 0.02  # horizontal move per tick

    def __post_init__(self):
        for name in (
            "initial_lives",
            "max_lives",
            "recharge_seconds",
            "ball_spawn_rate",
            "fall_speed_min",
            "fall_speed_max",
            "avatar_half_width",
            "ball_radius",
            "tick",
            "avatar_step",
        ):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0:
                raise ValidationError(f"{name} must be strictly positive, got {value!r}")
        if self.initial_lives > self.max_lives:
            raise ValidationError("initial_lives must not exceed max_lives")
        if self.fall_speed_min > self.fall_speed_max:
            raise ValidationError("fall_speed_min must not exceed fall_speed_max")

    @property
    def recharge_ticks(self) -> int:
        return max(1, math.ceil(self.recharge_seconds / self.tick - 1e-9))


@dataclass(frozen=True)
class GameState:
    avatar_x: float
    balls: tuple[Ball, ...]
    lives: int
    unhit_ticks: int
    elapsed_ticks: int
    over: bool
    rng: int
    seed: int

    def unhit_elapsed(self, cfg: GameConfig) -> float:
        return self.unhit_ticks * cfg.tick

    def elapsed(self, cfg: GameConfig) -> float:
        return self.elapsed_ticks * cfg.tick

    def score(self, cfg: GameConfig) -> float:
        """Survival time in seconds."""
        return self.elapsed(cfg)


def new_game(seed: int, cfg: GameConfig | None = None) -> GameState:
    cfg = cfg or GameConfig()
    rng, _ = _splitmix64(seed & _MASK64)
    return GameState(
        avatar_x=0.5,
        balls=(),
        lives=cfg.initial_lives,
        unhit_ticks=0,
        elapsed_ticks=0,
        over=False,
        rng=rng,
        seed=seed,
    )


def game_step(state: GameState, move: Move, cfg: GameConfig | None = None) -> GameState:
    """Advance the game by one tick. Raises GameOver on a finished game."""
    cfg = cfg or GameConfig()
    if state.over:
        raise GameOver("game is over; start a new session")
    move = Move(move)

    avatar_x = state.avatar_x
    if move == Move.LEFT:
        avatar_x = max(0.0, avatar_x - cfg.avatar_step)
    elif move == Move.RIGHT:
        avatar_x = min(1.0, avatar_x + cfg.avatar_step)

    hits = 0
    kept: list[Ball] = []
    reach = cfg.avatar_half_width + cfg.ball_radius
    for ball in state.balls:
        y = ball.y - ball.fall_speed * cfg.tick
        if y <= cfg.ball_radius and abs(ball.x - avatar_x) <= reach:
            hits += 1
            continue
        if y < 0.0:
            continue  # missed; falls off the floor
        kept.append(Ball(ball.x, y, ball.fall_speed))

    rng = state.rng
    rng, roll = _rand01(rng)
    if roll < cfg.ball_spawn_rate * cfg.tick:
        rng, bx = _rand01(rng)
        rng, bs = _rand01(rng)
        speed = cfg.fall_speed_min + bs * (cfg.fall_speed_max - cfg.fall_speed_min)
        kept.append(Ball(bx, 1.0, speed))

    lives = state.lives
    if hits:
        lives = max(0, lives - hits)
        unhit_ticks = 0
    else:
        unhit_ticks = state.unhit_ticks + 1
        if unhit_ticks >= cfg.recharge_ticks:
            lives = min(cfg.max_lives, lives + 1)
            unhit_ticks = 0

    return GameState(
        avatar_x=avatar_x,
        balls=tuple(kept),
        lives=lives,
        unhit_ticks=unhit_ticks,
        elapsed_ticks=state.elapsed_ticks + 1,
        over=lives == 0,
        rng=rng,
        seed=state.seed,
    )


def snapshot(state: GameState, cfg: GameConfig | None = None) -> dict:
    """Wire form of the game state, one dict per tick."""
    cfg = cfg or GameConfig()
    return {
        "avatar_x": state.avatar_x,
        "balls": [
            {"x": b.x, "y": b.y, "fall_speed": b.fall_speed} for b in state.balls
        ],
        "lives": state.lives,
        "unhit_elapsed": round(state.unhit_elapsed(cfg), 6),
        "elapsed": round(state.elapsed(cfg), 6),
        "over": state.over,
        "score": round(state.score(cfg), 6),
    }
