"""Experience segments and their wire encoding.

Frame layout: u32-LE payload length, payload bytes, u32-LE CRC32(payload).

Payload (schema version 1):
  u32 schema_version, u32 snapshot_version,
  u8 len + utf8 agent character, u8 len + utf8 opponent character,
  u32 tuple count L, u32 observation dim,
  f32[L * obs_dim] observations, u16[L] actions, f32[L] rewards, f32[L] probs
"""

import struct
import zlib
from dataclasses import dataclass

import numpy as np

from ..errors import ProtocolError

SCHEMA_VERSION = 1
MAX_FRAME_BYTES = 16 * 1024 * 1024


@dataclass
class Experience:
    schema_version: int
    agent_character: str
    opponent_character: str
    snapshot_version: int
    observations: np.ndarray  # (L, obs_dim) float32
    actions: np.ndarray  # (L,) uint16
    rewards: np.ndarray  # (L,) float32
    behavior_probs: np.ndarray  # (L,) float32

    def __len__(self) -> int:
        return len(self.actions)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Experience):
            return NotImplemented
        return (
            self.schema_version == other.schema_version
            and self.agent_character == other.agent_character
            and self.opponent_character == other.opponent_character
            and self.snapshot_version == other.snapshot_version
            and np.array_equal(self.observations, other.observations)
            and np.array_equal(self.actions, other.actions)
            and np.array_equal(self.rewards, other.rewards)
            and np.array_equal(self.behavior_probs, other.behavior_probs)
        )


def _pack_str(s: str) -> bytes:
    raw = s.encode("utf-8")
    if len(raw) > 255:
        raise ProtocolError(f"string too long to encode: {len(raw)} bytes")
    return struct.pack("<B", len(raw)) + raw


def encode_experience(exp: Experience) -> bytes:
    """Serialize to a complete frame (length prefix + payload + CRC32)."""
    L = len(exp)
    obs = np.ascontiguousarray(exp.observations, dtype="<f4")
    obs_dim = obs.shape[1] if obs.ndim == 2 else 0
    payload = b"".join((
        struct.pack("<II", exp.schema_version, exp.snapshot_version),
        _pack_str(exp.agent_character),
        _pack_str(exp.opponent_character),
        struct.pack("<II", L, obs_dim),
        obs.tobytes(),
        np.ascontiguousarray(exp.actions, dtype="<u2").tobytes(),
        np.ascontiguousarray(exp.rewards, dtype="<f4").tobytes(),
        np.ascontiguousarray(exp.behavior_probs, dtype="<f4").tobytes(),
    ))
    crc = zlib.crc32(payload) & 0xFFFFFFFF
    return struct.pack("<I", len(payload)) + payload + struct.pack("<I", crc)


def decode_frame(frame: bytes) -> bytes:
    """Strip and verify the length/CRC framing; returns the payload."""
    if len(frame) < 8:
        raise ProtocolError(f"frame of {len(frame)} bytes is shorter than the framing")
    (length,) = struct.unpack_from("<I", frame, 0)
    if length > MAX_FRAME_BYTES:
        raise ProtocolError(f"frame payload of {length} bytes exceeds the {MAX_FRAME_BYTES} cap")
    if len(frame) != length + 8:
        raise ProtocolError(f"frame truncated: header says {length}, got {len(frame) - 8}")
    payload = frame[4:4 + length]
    (crc_stored,) = struct.unpack_from("<I", frame, 4 + length)
    if zlib.crc32(payload) & 0xFFFFFFFF != crc_stored:
        raise ProtocolError("frame CRC mismatch")
    return payload


def decode_experience(frame: bytes) -> Experience:
    payload = decode_frame(frame)
    try:
        pos = 0
        schema_version, snapshot_version = struct.unpack_from("<II", payload, pos)
        pos += 8
        if schema_version != SCHEMA_VERSION:
            raise ProtocolError(f"unknown experience schema version {schema_version}")

        def take_str(pos):
            (n,) = struct.unpack_from("<B", payload, pos)
            s = payload[pos + 1:pos + 1 + n].decode("utf-8")
            if len(payload) < pos + 1 + n:
                raise ProtocolError("truncated string field")
            return s, pos + 1 + n

        agent, pos = take_str(pos)
        opponent, pos = take_str(pos)
        L, obs_dim = struct.unpack_from("<II", payload, pos)
        pos += 8
        expected = pos + 4 * L * obs_dim + 2 * L + 4 * L + 4 * L
        if len(payload) != expected:
            raise ProtocolError(
                f"payload length {len(payload)} does not match declared shape ({expected})"
            )
        obs = np.frombuffer(payload, dtype="<f4", count=L * obs_dim, offset=pos)
        pos += 4 * L * obs_dim
        actions = np.frombuffer(payload, dtype="<u2", count=L, offset=pos)
        pos += 2 * L
        rewards = np.frombuffer(payload, dtype="<f4", count=L, offset=pos)
        pos += 4 * L
        probs = np.frombuffer(payload, dtype="<f4", count=L, offset=pos)
    except struct.error as exc:
        raise ProtocolError(f"malformed experience payload: {exc}") from exc
    return Experience(
        schema_version=schema_version,
        agent_character=agent,
        opponent_character=opponent,
        snapshot_version=snapshot_version,
        observations=obs.reshape(L, obs_dim).copy(),
        actions=actions.copy(),
        rewards=rewards.copy(),
        behavior_probs=probs.copy(),
    )


class FrameReader:
    """Incremental frame splitter for a byte stream.

    ``feed`` returns complete frames; a CRC failure drops that frame only,
    while an insane length prefix poisons the stream (caller should close).
    """

    def __init__(self):
        self._buf = bytearray()
        self.dropped = 0

    def feed(self, data: bytes) -> list:
        self._buf.extend(data)
        frames = []
        while True:
            if len(self._buf) < 4:
                break
            (length,) = struct.unpack_from("<I", self._buf, 0)
            if length > MAX_FRAME_BYTES:
                raise ProtocolError(f"stream declares oversized frame of {length} bytes")
            total = 4 + length + 4
            if len(self._buf) < total:
                break
            frame = bytes(self._buf[:total])
            del self._buf[:total]
            try:
                decode_frame(frame)
            except ProtocolError:
                self.dropped += 1
                continue
            frames.append(frame)
        return frames
