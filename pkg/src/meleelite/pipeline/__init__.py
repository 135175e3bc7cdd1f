from .actors import (
    Actor,
    DEFAULT_SEGMENT_LEN,
    EPISODE_TICKS,
    InProcessSink,
    RewardMeter,
    SocketSink,
    TickCounter,
)
from .experience import (
    Experience,
    FrameReader,
    SCHEMA_VERSION,
    decode_experience,
    decode_frame,
    encode_experience,
)
from .policies import CpuDriver, IdleDriver, NetDriver, NetPolicy
from .ring import CircularQueue
from .server import ExperienceIngest
from .snapshots import SnapshotStore
from .trainer import (
    ActorCriticLearner,
    SarsaLearner,
    TrainerStats,
    experience_to_trajectory,
    make_learner,
    train_step,
    trainer_loop,
)

__all__ = [
    "Actor", "DEFAULT_SEGMENT_LEN", "EPISODE_TICKS", "InProcessSink",
    "RewardMeter", "SocketSink", "TickCounter", "Experience", "FrameReader",
    "SCHEMA_VERSION", "decode_experience", "decode_frame", "encode_experience",
    "CpuDriver", "IdleDriver", "NetDriver", "NetPolicy", "CircularQueue",
    "ExperienceIngest", "SnapshotStore", "ActorCriticLearner", "SarsaLearner",
    "TrainerStats", "experience_to_trajectory", "make_learner", "train_step",
    "trainer_loop",
]
