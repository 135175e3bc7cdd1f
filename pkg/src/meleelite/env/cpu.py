"""Scripted CPU opponent.

A small finite-state script: approach the opponent, and once in range commit
to a fixed two-attack string (jab into forward special). The special carries
the CPU forward even off the ledge, and the script never jumps to recover, so
a player who baits the string at the edge can make the CPU eliminate itself.
"""

from .actions import NEUTRAL_ACTION, encode_action
from .types import ActionState, GameState, Roster

_APPROACH = "approach"
_STRING_JAB = "string_jab"
_STRING_SPECIAL = "string_special"


class ScriptedCpu:
    """Stateful controller for one seat. Create one instance per match."""

    def __init__(self, roster: Roster):
        self.roster = roster
        self._phase = _APPROACH

    def reset(self) -> None:
        self._phase = _APPROACH

    def _reach(self, character: str) -> float:
        jab = self.roster.characters[character].moves["jab"].hitbox
        return jab[0] + jab[2] + self.roster.physics.hurtbox_width / 2.0

    def act(self, state: GameState, perspective: int, rng=None) -> int:
        me = state.p1 if perspective == 1 else state.p2
        opp = state.p2 if perspective == 1 else state.p1

        if me.state in (ActionState.HITSTUN, ActionState.JUMPSQUAT, ActionState.DODGE):
            self._phase = _APPROACH
            return NEUTRAL_ACTION

        dx = opp.x - me.x
        toward = "e" if dx > 0 else ("w" if dx < 0 else ("e" if me.facing >= 0 else "w"))

        if me.state == ActionState.ATTACK:
            if self._phase == _STRING_JAB and me.move == "jab":
                # Buffer the follow-up; the input lands once the jab ends.
                return encode_action(toward, "b")
            if self._phase == _STRING_SPECIAL and me.move == "special":
                return encode_action(toward, "none")
            self._phase = _APPROACH
            return NEUTRAL_ACTION

        if me.state == ActionState.AIRBORNE:
            # Drift toward the opponent; never jumps back to the stage.
            self._phase = _APPROACH
            return encode_action(toward, "none")

        if self._phase == _STRING_JAB:
            # Jab just ended: commit to the forward special.
            self._phase = _STRING_SPECIAL
            return encode_action(toward, "b")
        if self._phase == _STRING_SPECIAL:
            self._phase = _APPROACH

        in_range = abs(dx) <= self._reach(me.character) and abs(opp.y - me.y) <= 2.0
        if in_range:
            self._phase = _STRING_JAB
            return encode_action("neutral", "a")
        return encode_action(toward, "none")


def cpu_policy(state: GameState, perspective: int, rng, cpu: ScriptedCpu) -> int:
    """Functional wrapper over a ScriptedCpu instance."""
    return cpu.act(state, perspective, rng)
