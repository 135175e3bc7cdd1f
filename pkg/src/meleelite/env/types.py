"""Simulator state and configuration records."""

from dataclasses import dataclass, field
from enum import IntEnum


class ActionState(IntEnum):
    IDLE = 0
    WALK = 1
    DASH = 2
    JUMPSQUAT = 3
    AIRBORNE = 4
    ATTACK = 5
    HITSTUN = 6
    SHIELD = 7
    DODGE = 8
    RESPAWN = 9


NUM_ACTION_STATES = len(ActionState)

# Move slots every character defines.
MOVE_SLOTS = ("jab", "side", "up", "down", "special", "grab")


@dataclass
class PlayerState:
    """One player's full state at a tick.

    ``state_frame`` meaning depends on ``state``:
      ATTACK    frames elapsed since the attack started (0-based)
      JUMPSQUAT frames elapsed since the squat started
      HITSTUN   frames of stun remaining
      DODGE     frames of dodge remaining (invulnerable while above recovery)
      RESPAWN   frames of spawn invulnerability remaining
      others    0
    """

    x: float
    y: float
    vx: float
    vy: float
    facing: int
    damage: float
    state: ActionState
    state_frame: int
    move: str  # active move slot, "" unless attacking
    hit_used: bool  # current attack already connected or was blocked
    jumps_left: int
    kos_taken: int
    character: str

    def copy(self) -> "PlayerState":
        return PlayerState(
            self.x, self.y, self.vx, self.vy, self.facing, self.damage,
            self.state, self.state_frame, self.move, self.hit_used,
            self.jumps_left, self.kos_taken, self.character,
        )


@dataclass
class GameState:
    tick: int
    p1: PlayerState
    p2: PlayerState
    rng_seed: int  # reserved for stochastic mechanics; physics never reads it

    def player(self, seat: int) -> PlayerState:
        return self.p1 if seat == 1 else self.p2


@dataclass(frozen=True)
class MoveConfig:
    startup: int
    active: int
    recovery: int
    damage: float
    base_knockback: float
    knockback_growth: float
    # Hitbox relative to the player, in facing direction: (dx, dy, width, height).
    hitbox: tuple[float, float, float, float]
    lunge: float = 0.0  # forward velocity forced during startup+active frames

    @property
    def total_frames(self) -> int:
        return self.startup + self.active + self.recovery


@dataclass(frozen=True)
class CharacterConfig:
    name: str
    walk_speed: float
    dash_speed: float
    air_speed: float
    jump_velocity: float
    weight: float
    moves: dict[str, MoveConfig]


@dataclass(frozen=True)
class StageConfig:
    platform_half_width: float
    blast_left: float
    blast_right: float
    blast_bottom: float
    blast_top: float
    respawn_x: float
    respawn_y: float
    respawn_invuln: int
    spawn_offset: float


@dataclass(frozen=True)
class PhysicsConfig:
    gravity: float
    friction: float
    terminal_fall_speed: float
    jumpsquat_frames: int
    dodge_invuln_frames: int
    dodge_recovery_frames: int
    air_jumps: int
    air_jump_ratio: float
    hurtbox_width: float
    hurtbox_height: float
    hitstun_base: float
    hitstun_per_knockback: float
    hitstun_max: int
    knockback_up_ratio: float


@dataclass(frozen=True)
class Roster:
    physics: PhysicsConfig
    stage: StageConfig
    characters: dict[str, CharacterConfig]

    @property
    def character_names(self) -> tuple[str, ...]:
        return tuple(self.characters.keys())


@dataclass
class HitEvent:
    attacker: int  # seat 1 or 2
    damage_dealt: float
    blocked: bool = False


@dataclass
class KoEvent:
    victim: int  # seat 1 or 2


@dataclass
class StepEvents:
    hits: list[HitEvent] = field(default_factory=list)
    kos: list[KoEvent] = field(default_factory=list)
    reward_p1: float = 0.0
    reward_p2: float = 0.0
