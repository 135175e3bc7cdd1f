"""Bounded ring of the most recent experiences."""

import threading

from ..errors import ConfigError, NotReady


class CircularQueue:
    """FIFO-evicting ring with uniform with-replacement sampling.

    Thread-safe: many producers push while one consumer samples.
    """

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ConfigError(f"queue capacity must be >= 1, got {capacity}")
        self.capacity = capacity
        self._slots = [None] * capacity
        self._write = 0
        self._count = 0
        self.total_received = 0
        self._lock = threading.Lock()

    def __len__(self) -> int:
        with self._lock:
            return self._count

    def push(self, item) -> None:
        with self._lock:
            self._slots[self._write] = item
            self._write = (self._write + 1) % self.capacity
            if self._count < self.capacity:
                self._count += 1
            self.total_received += 1

    def sample_batch(self, batch_size: int, rng) -> list:
        if batch_size < 1:
            raise ConfigError(f"batch size must be >= 1, got {batch_size}")
        with self._lock:
            if self._count == 0:
                raise NotReady("experience queue is empty")
            idx = rng.integers(0, self._count, size=batch_size)
            if self._count < self.capacity:
                return [self._slots[i] for i in idx]
            # Full ring: occupied slots are everything; oldest sits at _write.
            return [self._slots[(self._write + i) % self.capacity] for i in idx]

    def snapshot_items(self) -> list:
        """All occupied slots, oldest first (for tests and draining)."""
        with self._lock:
            if self._count < self.capacity:
                return [s for s in self._slots[: self._count]]
            return [self._slots[(self._write + i) % self.capacity] for i in range(self._count)]
