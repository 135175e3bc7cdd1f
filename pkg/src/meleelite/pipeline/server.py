"""TCP ingest for experience frames shipped by out-of-process actors."""

import logging
import socket
import threading

from ..errors import ProtocolError
from .experience import FrameReader, decode_experience

logger = logging.getLogger(__name__)


class ExperienceIngest:
    """Accepts connections and feeds decoded experiences into a queue."""

    def __init__(self, host: str, port: int, queue):
        self.queue = queue
        self._server = socket.create_server((host, port))
        self._server.settimeout(0.2)
        self.address = self._server.getsockname()
        self._stop = threading.Event()
        self._threads: list = []
        self.frames_received = 0
        self.frames_dropped = 0
        self._accept_thread = threading.Thread(target=self._accept_loop, daemon=True)

    def start(self) -> "ExperienceIngest":
        self._accept_thread.start()
        return self

    def _accept_loop(self) -> None:
        while not self._stop.is_set():
            try:
                conn, addr = self._server.accept()
            except socket.timeout:
                continue
            except OSError:
                break
            t = threading.Thread(target=self._serve, args=(conn, addr), daemon=True)
            t.start()
            self._threads.append(t)
        self._server.close()

    def _serve(self, conn: socket.socket, addr) -> None:
        reader = FrameReader()
        crc_dropped = 0
        conn.settimeout(0.2)
        try:
            while not self._stop.is_set():
                try:
                    data = conn.recv(65536)
                except socket.timeout:
                    continue
                except OSError:
                    break
                if not data:
                    break
                try:
                    frames = reader.feed(data)
                except ProtocolError as exc:
                    logger.warning("closing actor connection %s: %s", addr, exc)
                    break
                if reader.dropped > crc_dropped:
                    self.frames_dropped += reader.dropped - crc_dropped
                    crc_dropped = reader.dropped
                for frame in frames:
                    try:
                        self.queue.push(decode_experience(frame))
                        self.frames_received += 1
                    except ProtocolError as exc:
                        self.frames_dropped += 1
                        logger.warning("dropped bad frame from %s: %s", addr, exc)
        finally:
            conn.close()

    def stop(self) -> None:
        self._stop.set()
