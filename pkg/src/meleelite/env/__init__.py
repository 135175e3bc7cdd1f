from .actions import (
    NUM_ACTIONS,
    NEUTRAL_ACTION,
    ControllerAction,
    decode_action,
    encode_action,
    mirror_action,
)
from .cpu import ScriptedCpu
from .observe import OBS_SCHEMA_VERSION, P1, P2, ObservationEncoder
from .roster import default_roster, load_roster, parse_roster
from .sim import MeleeLite, TICK_RATE_HZ, mirror_state, swap_players
from .types import (
    ActionState,
    CharacterConfig,
    GameState,
    MoveConfig,
    PhysicsConfig,
    PlayerState,
    Roster,
    StageConfig,
    StepEvents,
)

__all__ = [
    "NUM_ACTIONS", "NEUTRAL_ACTION", "ControllerAction", "decode_action",
    "encode_action", "mirror_action", "ScriptedCpu", "OBS_SCHEMA_VERSION",
    "P1", "P2", "ObservationEncoder", "default_roster", "load_roster",
    "parse_roster", "MeleeLite", "TICK_RATE_HZ", "mirror_state", "swap_players",
    "ActionState", "CharacterConfig", "GameState", "MoveConfig",
    "PhysicsConfig", "PlayerState", "Roster", "StageConfig", "StepEvents",
]
