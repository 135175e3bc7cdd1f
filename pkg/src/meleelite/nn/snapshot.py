"""Bit-exact network snapshot format.

Layout: magic "MLPSNAP1", then a payload of little-endian u32s and f32s:
format version, layer count, per-layer (in_dim, out_dim), then per layer all
weights row-major followed by the bias vector, and finally a u32 CRC32 of the
payload (everything between the magic and the CRC).
"""

import struct
import zlib

import numpy as np

from ..errors import SnapshotCorrupt
from .mlp import DEFAULT_ALPHA, NetworkParams

MAGIC = b"MLPSNAP1"
FORMAT_VERSION = 1


def encode_params(params: NetworkParams) -> bytes:
    header = struct.pack("<II", FORMAT_VERSION, len(params.weights))
    for w in params.weights:
        header += struct.pack("<II", w.shape[1], w.shape[0])
    body = b"".join(
        np.ascontiguousarray(w, dtype="<f4").tobytes() + np.ascontiguousarray(b, dtype="<f4").tobytes()
        for w, b in zip(params.weights, params.biases)
    )
    payload = header + body
    crc = zlib.crc32(payload) & 0xFFFFFFFF
    return MAGIC + payload + struct.pack("<I", crc)


def decode_params(blob: bytes, alpha: float = DEFAULT_ALPHA) -> NetworkParams:
    if len(blob) < len(MAGIC) + 12 or blob[: len(MAGIC)] != MAGIC:
        raise SnapshotCorrupt("bad magic or truncated snapshot")
    payload, crc_bytes = blob[len(MAGIC):-4], blob[-4:]
    (crc_stored,) = struct.unpack("<I", crc_bytes)
    if zlib.crc32(payload) & 0xFFFFFFFF != crc_stored:
        raise SnapshotCorrupt("snapshot CRC mismatch")

    version, layer_count = struct.unpack_from("<II", payload, 0)
    if version != FORMAT_VERSION:
        raise SnapshotCorrupt(f"unsupported snapshot format version {version}")
    dims = []
    pos = 8
    for _ in range(layer_count):
        in_dim, out_dim = struct.unpack_from("<II", payload, pos)
        dims.append((in_dim, out_dim))
        pos += 8

    expected = pos + sum(4 * (i * o + o) for i, o in dims)
    if len(payload) != expected:
        raise SnapshotCorrupt("snapshot payload length does not match header")

    weights, biases = [], []
    for in_dim, out_dim in dims:
        w = np.frombuffer(payload, dtype="<f4", count=in_dim * out_dim, offset=pos)
        pos += 4 * in_dim * out_dim
        b = np.frombuffer(payload, dtype="<f4", count=out_dim, offset=pos)
        pos += 4 * out_dim
        weights.append(w.reshape(out_dim, in_dim).copy())
        biases.append(b.copy())
    return NetworkParams(weights, biases, alpha)
