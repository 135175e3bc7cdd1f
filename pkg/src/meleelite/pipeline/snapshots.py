"""Versioned on-disk parameter snapshots with atomic publication.

Files are written to a temporary name and renamed into place, so a concurrent
reader sees either the previous complete file or the new complete file, never
a partial write. A LATEST pointer file is updated the same way.
"""

import os
import re
import tempfile
import threading

from ..errors import NotReady, SnapshotNotFound
from ..nn.snapshot import decode_params, encode_params

_SNAP_RE = re.compile(r"^(\d{8})\.mlpsnap$")
LATEST_NAME = "LATEST"


class SnapshotStore:
    """Directory of versioned snapshots; one writer, many readers."""

    def __init__(self, directory: str):
        self.directory = directory
        os.makedirs(directory, exist_ok=True)
        self._write_lock = threading.Lock()
        self._next_version = self._scan_max() + 1

    def _scan_max(self) -> int:
        best = 0
        for name in os.listdir(self.directory):
            m = _SNAP_RE.match(name)
            if m:
                best = max(best, int(m.group(1)))
        return best

    def _path(self, version: int) -> str:
        return os.path.join(self.directory, f"{version:08d}.mlpsnap")

    def versions(self) -> list:
        out = []
        for name in os.listdir(self.directory):
            m = _SNAP_RE.match(name)
            if m:
                out.append(int(m.group(1)))
        return sorted(out)

    def latest_version(self):
        """Newest published version, or None when the store is empty."""
        try:
            with open(os.path.join(self.directory, LATEST_NAME), "r", encoding="ascii") as fh:
                return int(fh.read().strip())
        except (FileNotFoundError, ValueError):
            versions = self.versions()
            return versions[-1] if versions else None

    def _atomic_write(self, final_path: str, data: bytes) -> None:
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(data)
            os.replace(tmp, final_path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise

    def write(self, params) -> int:
        """Publish a snapshot; returns its (strictly increasing) version."""
        with self._write_lock:
            version = self._next_version
            self._next_version += 1
            self._atomic_write(self._path(version), encode_params(params))
            self._atomic_write(
                os.path.join(self.directory, LATEST_NAME), f"{version:08d}\n".encode("ascii")
            )
            return version

    def read(self, version=None):
        """Load (params, version); version=None means the latest snapshot."""
        if version is None:
            version = self.latest_version()
            if version is None:
                raise NotReady(f"snapshot store {self.directory} is empty")
        path = self._path(version)
        try:
            with open(path, "rb") as fh:
                blob = fh.read()
        except FileNotFoundError as exc:
            raise SnapshotNotFound(f"snapshot version {version} not found") from exc
        return decode_params(blob), version
