"""A running match: simulator state plus observation encoding."""

from ..errors import ConfigError
from .observe import ObservationEncoder
from .sim import MeleeLite


class GameSession:
    """One live match. step() advances a tick; observe() encodes a seat's view."""

    def __init__(self, sim: MeleeLite, encoder: ObservationEncoder,
                 p1_character: str, p2_character: str, seed: int = 0):
        if encoder.roster is not sim.roster:
            raise ConfigError("encoder and simulator must share a roster")
        self.sim = sim
        self.encoder = encoder
        self.state = sim.new_game(p1_character, p2_character, seed)

    @property
    def obs_dim(self) -> int:
        return self.encoder.dim

    @property
    def tick(self) -> int:
        return self.state.tick

    def step(self, a1: int, a2: int):
        self.state, events = self.sim.step(self.state, a1, a2)
        return events

    def observe(self, seat: int):
        return self.encoder.observe(self.state, seat)

    def character(self, seat: int) -> str:
        return self.state.player(seat).character
