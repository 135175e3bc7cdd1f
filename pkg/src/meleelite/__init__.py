"""MeleeLite: self-play deep RL on a deterministic fighting-game simulator."""

__version__ = "0.1.0"
