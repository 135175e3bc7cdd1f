"""Roster loading: physics, stage and character tables from a YAML file."""

import importlib.resources

import yaml

from ..errors import ConfigError
from .types import (
    MOVE_SLOTS,
    CharacterConfig,
    MoveConfig,
    PhysicsConfig,
    Roster,
    StageConfig,
)


def _require(mapping: dict, key: str, where: str):
    if key not in mapping:
        raise ConfigError(f"missing key {key!r} in {where}")
    return mapping[key]


def _parse_move(name: str, raw: dict, where: str) -> MoveConfig:
    hitbox = _require(raw, "hitbox", where)
    if len(hitbox) != 4:
        raise ConfigError(f"{where}: hitbox must be [dx, dy, width, height]")
    move = MoveConfig(
        startup=int(_require(raw, "startup", where)),
        active=int(_require(raw, "active", where)),
        recovery=int(_require(raw, "recovery", where)),
        damage=float(_require(raw, "damage", where)),
        base_knockback=float(_require(raw, "base_knockback", where)),
        knockback_growth=float(_require(raw, "knockback_growth", where)),
        hitbox=tuple(float(v) for v in hitbox),
        lunge=float(raw.get("lunge", 0.0)),
    )
    if move.startup < 1 or move.active < 1 or move.recovery < 1:
        raise ConfigError(f"{where}: frame counts must be >= 1")
    return move


def _parse_character(name: str, raw: dict) -> CharacterConfig:
    where = f"character {name!r}"
    moves_raw = _require(raw, "moves", where)
    missing = [slot for slot in MOVE_SLOTS if slot not in moves_raw]
    if missing:
        raise ConfigError(f"{where}: missing move slots {missing}")
    char = CharacterConfig(
        name=name,
        walk_speed=float(_require(raw, "walk_speed", where)),
        dash_speed=float(_require(raw, "dash_speed", where)),
        air_speed=float(_require(raw, "air_speed", where)),
        jump_velocity=float(_require(raw, "jump_velocity", where)),
        weight=float(_require(raw, "weight", where)),
        moves={
            slot: _parse_move(slot, moves_raw[slot], f"{where} move {slot!r}")
            for slot in MOVE_SLOTS
        },
    )
    for attr in ("walk_speed", "dash_speed", "air_speed", "jump_velocity", "weight"):
        if getattr(char, attr) <= 0:
            raise ConfigError(f"{where}: {attr} must be > 0")
    return char


def parse_roster(text: str) -> Roster:
    doc = yaml.safe_load(text)
    if not isinstance(doc, dict):
        raise ConfigError("roster file must be a mapping")

    phys_raw = _require(doc, "physics", "roster")
    physics = PhysicsConfig(
        gravity=float(_require(phys_raw, "gravity", "physics")),
        friction=float(_require(phys_raw, "friction", "physics")),
        terminal_fall_speed=float(_require(phys_raw, "terminal_fall_speed", "physics")),
        jumpsquat_frames=int(_require(phys_raw, "jumpsquat_frames", "physics")),
        dodge_invuln_frames=int(_require(phys_raw, "dodge_invuln_frames", "physics")),
        dodge_recovery_frames=int(_require(phys_raw, "dodge_recovery_frames", "physics")),
        air_jumps=int(_require(phys_raw, "air_jumps", "physics")),
        air_jump_ratio=float(_require(phys_raw, "air_jump_ratio", "physics")),
        hurtbox_width=float(_require(phys_raw, "hurtbox_width", "physics")),
        hurtbox_height=float(_require(phys_raw, "hurtbox_height", "physics")),
        hitstun_base=float(_require(phys_raw, "hitstun_base", "physics")),
        hitstun_per_knockback=float(_require(phys_raw, "hitstun_per_knockback", "physics")),
        hitstun_max=int(_require(phys_raw, "hitstun_max", "physics")),
        knockback_up_ratio=float(_require(phys_raw, "knockback_up_ratio", "physics")),
    )

    stage_raw = _require(doc, "stage", "roster")
    respawn = _require(stage_raw, "respawn_point", "stage")
    stage = StageConfig(
        platform_half_width=float(_require(stage_raw, "platform_half_width", "stage")),
        blast_left=float(_require(stage_raw, "blast_left", "stage")),
        blast_right=float(_require(stage_raw, "blast_right", "stage")),
        blast_bottom=float(_require(stage_raw, "blast_bottom", "stage")),
        blast_top=float(_require(stage_raw, "blast_top", "stage")),
        respawn_x=float(respawn[0]),
        respawn_y=float(respawn[1]),
        respawn_invuln=int(_require(stage_raw, "respawn_invuln", "stage")),
        spawn_offset=float(_require(stage_raw, "spawn_offset", "stage")),
    )
    if not (stage.blast_left < -stage.platform_half_width
            and stage.blast_right > stage.platform_half_width
            and stage.blast_bottom < 0.0 < stage.blast_top):
        raise ConfigError("blast boundaries must strictly contain the platform")

    chars_raw = _require(doc, "characters", "roster")
    if not chars_raw:
        raise ConfigError("roster defines no characters")
    characters = {name: _parse_character(name, raw) for name, raw in chars_raw.items()}
    return Roster(physics=physics, stage=stage, characters=characters)


def load_roster(path: str) -> Roster:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_roster(fh.read())


def default_roster() -> Roster:
    text = (
        importlib.resources.files("meleelite.data")
        .joinpath("default_roster.yaml")
        .read_text(encoding="utf-8")
    )
    return parse_roster(text)
