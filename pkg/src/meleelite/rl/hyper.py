"""Run hyperparameters: one record holding every tunable constant."""

import math
from dataclasses import dataclass, field, fields

import yaml

from ..errors import ConfigError


def discount_from_halflife(halflife_seconds: float, tick_rate_hz: float) -> float:
    """Per-tick discount such that reward halflife_seconds ahead is worth half."""
    if halflife_seconds <= 0 or tick_rate_hz <= 0:
        raise ConfigError("halflife and tick rate must be positive")
    return 0.5 ** (1.0 / (halflife_seconds * tick_rate_hz))


DEFAULT_DISCOUNT = discount_from_halflife(2.0, 30.0)  # 2**(-1/60)


@dataclass
class Hyperparams:
    epsilon: float = 0.02            # uniform exploration mix
    tau: float = 1.0                 # Boltzmann inverse temperature
    discount: float = DEFAULT_DISCOUNT
    n_step: int = 10                 # bootstrap horizon
    learning_rate: float = 1e-4
    entropy_scale: float = 1e-2      # constant shift in the policy-gradient rule
    kl_bound: float = 1e-6           # trust-region policy-change budget
    cg_iters: int = 15
    damage_weight: float = 0.01      # score units per percent dealt
    cg_damping: float = 1e-5         # relative diagonal damping for CG
    entropy_bonus_form: bool = False  # per-sample -log pi bonus instead of constant shift
    kl_state_cap: int = 0            # curvature-batch subsample size, 0 = use all states

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if not 0.0 <= self.epsilon <= 1.0:
            raise ConfigError(f"epsilon must be in [0, 1], got {self.epsilon}")
        if not 0.0 < self.discount < 1.0:
            raise ConfigError(f"discount must be in (0, 1), got {self.discount}")
        if self.n_step < 1:
            raise ConfigError(f"n_step must be >= 1, got {self.n_step}")
        if self.kl_bound <= 0:
            raise ConfigError(f"kl_bound must be > 0, got {self.kl_bound}")
        if self.cg_iters < 1:
            raise ConfigError(f"cg_iters must be >= 1, got {self.cg_iters}")
        for name in ("tau", "learning_rate", "damage_weight", "entropy_scale", "cg_damping"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"{name} must be finite")

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def replace(self, **overrides) -> "Hyperparams":
        values = self.to_dict()
        values.update(overrides)
        return Hyperparams(**values)

    @classmethod
    def from_file(cls, path: str) -> "Hyperparams":
        with open(path, "r", encoding="utf-8") as fh:
            doc = yaml.safe_load(fh) or {}
        if not isinstance(doc, dict):
            raise ConfigError("hyperparameter file must be a mapping")
        known = {f.name for f in fields(cls)}
        unknown = set(doc) - known
        if unknown:
            raise ConfigError(f"unknown hyperparameters {sorted(unknown)}")
        return cls(**doc)
