"""Flat observation vectors from one player's perspective.

Layout (schema version 1):
  [self block, opponent block, one-hot self character, one-hot opponent character]

Per-player block (18 features):
  x, y, vx, vy, facing, damage/100,
  one-hot action state (10), normalized state-frame counter, jumps_left
"""

import numpy as np

from ..errors import ConfigError
from .types import ActionState, GameState, NUM_ACTION_STATES, PlayerState, Roster

OBS_SCHEMA_VERSION = 1

PLAYER_BLOCK_DIM = 6 + NUM_ACTION_STATES + 2  # 18

P1, P2 = 1, 2


class ObservationEncoder:
    """Encodes game states for a fixed roster (character one-hot ordering)."""

    def __init__(self, roster: Roster):
        self.roster = roster
        self._char_index = {name: i for i, name in enumerate(roster.character_names)}
        self.num_characters = len(self._char_index)
        self.dim = 2 * PLAYER_BLOCK_DIM + 2 * self.num_characters

    def _frame_norm(self, p: PlayerState) -> float:
        phys = self.roster.physics
        if p.state == ActionState.ATTACK:
            total = self.roster.characters[p.character].moves[p.move].total_frames
            return p.state_frame / total
        if p.state == ActionState.HITSTUN:
            return p.state_frame / phys.hitstun_max
        if p.state == ActionState.DODGE:
            return p.state_frame / (phys.dodge_invuln_frames + phys.dodge_recovery_frames)
        if p.state == ActionState.RESPAWN:
            return p.state_frame / max(1, self.roster.stage.respawn_invuln)
        if p.state == ActionState.JUMPSQUAT:
            return p.state_frame / phys.jumpsquat_frames
        return 0.0

    def _player_block(self, out: np.ndarray, base: int, p: PlayerState) -> None:
        out[base + 0] = p.x
        out[base + 1] = p.y
        out[base + 2] = p.vx
        out[base + 3] = p.vy
        out[base + 4] = p.facing
        out[base + 5] = p.damage / 100.0
        out[base + 6 + int(p.state)] = 1.0
        out[base + 6 + NUM_ACTION_STATES] = self._frame_norm(p)
        out[base + 7 + NUM_ACTION_STATES] = p.jumps_left

    def observe(self, state: GameState, perspective: int) -> np.ndarray:
        if perspective == P1:
            me, opp = state.p1, state.p2
        elif perspective == P2:
            me, opp = state.p2, state.p1
        else:
            raise ConfigError(f"perspective must be {P1} or {P2}, got {perspective}")
        out = np.zeros(self.dim, dtype=np.float32)
        self._player_block(out, 0, me)
        self._player_block(out, PLAYER_BLOCK_DIM, opp)
        base = 2 * PLAYER_BLOCK_DIM
        out[base + self._char_index[me.character]] = 1.0
        out[base + self.num_characters + self._char_index[opp.character]] = 1.0
        return out
