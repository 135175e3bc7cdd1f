"""Discrete controller: 9 stick positions x 6 buttons = 54 actions.

Action index convention: index = stick * 6 + button.
"""

from dataclasses import dataclass

from ..errors import InputError

STICKS = ("neutral", "n", "ne", "e", "se", "s", "sw", "w", "nw")
BUTTONS = ("none", "a", "b", "x", "l", "z")

NUM_STICKS = len(STICKS)
NUM_BUTTONS = len(BUTTONS)
NUM_ACTIONS = NUM_STICKS * NUM_BUTTONS  # 54

# (dx, dy) per stick position, dy > 0 pointing up.
STICK_VECTORS = {
    "neutral": (0, 0),
    "n": (0, 1),
    "ne": (1, 1),
    "e": (1, 0),
    "se": (1, -1),
    "s": (0, -1),
    "sw": (-1, -1),
    "w": (-1, 0),
    "nw": (-1, 1),
}

# Left-right reflection of each stick position.
_MIRROR_STICK = {
    "neutral": "neutral",
    "n": "n",
    "ne": "nw",
    "e": "w",
    "se": "sw",
    "s": "s",
    "sw": "se",
    "w": "e",
    "nw": "ne",
}

NEUTRAL_ACTION = 0  # (neutral, none)


@dataclass(frozen=True)
class ControllerAction:
    stick: str
    button: str

    @property
    def stick_dx(self) -> int:
        return STICK_VECTORS[self.stick][0]

    @property
    def stick_dy(self) -> int:
        return STICK_VECTORS[self.stick][1]


def decode_action(index: int) -> ControllerAction:
    """Map an action index 0..53 to its (stick, button) pair."""
    if not 0 <= index < NUM_ACTIONS:
        raise InputError(f"action index {index} out of range 0..{NUM_ACTIONS - 1}")
    stick, button = divmod(index, NUM_BUTTONS)
    return ControllerAction(STICKS[stick], BUTTONS[button])


def encode_action(stick: str, button: str) -> int:
    try:
        return STICKS.index(stick) * NUM_BUTTONS + BUTTONS.index(button)
    except ValueError as exc:
        raise InputError(f"unknown stick/button pair ({stick!r}, {button!r})") from exc


def mirror_action(index: int) -> int:
    """Reflect an action left-right (e.g. dash east becomes dash west)."""
    ca = decode_action(index)
    return encode_action(_MIRROR_STICK[ca.stick], ca.button)
