"""Out-of-process board evaluators speaking a line-delimited protocol.

The evaluator process prints a handshake line ("EVAL2048 1") on startup,
then answers each request line of 16 space-separated cell exponents with
one finite decimal real on a line of its own. Anything else — silence
past the timeout, unparseable text, inf/nan — is a distinct error; the
evolution loop treats any of them as grounds to quarantine the evaluator.
"""

from __future__ import annotations

import math
import queue
import subprocess
import threading
from dataclasses import dataclass, field

from ..engine.board import Board

PROTOCOL_NAME = "EVAL2048"
PROTOCOL_VERSION = 1


class ExternalEvaluatorError(Exception):
    """Base class; any subclass quarantines the evaluator."""


class EvaluatorTimeout(ExternalEvaluatorError):
    """No response line within the configured timeout."""


class EvaluatorProtocolError(ExternalEvaluatorError):
    """Bad handshake, unparseable response, or dead process."""


class EvaluatorValueError(ExternalEvaluatorError):
    """Response parsed as a number but is not finite."""


class _Reader(threading.Thread):
    """Pumps evaluator stdout lines into a queue so reads can time out."""

    def __init__(self, stream):
        super().__init__(daemon=True)
        self.stream = stream
        self.lines: queue.Queue = queue.Queue()

    def run(self):
        try:
            for line in self.stream:
                self.lines.put(line)
        except ValueError:
            pass  # stream closed underneath us
        self.lines.put(None)  # EOF marker


class ExternalEvaluatorClient:
    """One evaluator subprocess; requests are serialized by a lock."""

    def __init__(self, command: tuple[str, ...], timeout_ms: int):
        self.command = command
        self.timeout_s = timeout_ms / 1000.0
        self._lock = threading.Lock()
        self._dead = False
        try:
            self._proc = subprocess.Popen(
                list(command),
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                stderr=subprocess.DEVNULL,
                text=True,
                bufsize=1,
            )
        except OSError as exc:
            raise EvaluatorProtocolError(f"cannot start evaluator: {exc}") from exc
        self._reader = _Reader(self._proc.stdout)
        self._reader.start()
        handshake = self._read_line()
        parts = handshake.split()
        if parts != [PROTOCOL_NAME, str(PROTOCOL_VERSION)]:
            self.close()
            raise EvaluatorProtocolError(
                f"bad handshake {handshake!r}, expected "
                f"{PROTOCOL_NAME!r} {PROTOCOL_VERSION}"
            )

    def _read_line(self) -> str:
        try:
            line = self._reader.lines.get(timeout=self.timeout_s)
        except queue.Empty:
            self._mark_dead()
            raise EvaluatorTimeout(
                f"no response within {self.timeout_s * 1000:.0f} ms"
            ) from None
        if line is None:
            self._mark_dead()
            raise EvaluatorProtocolError("evaluator process closed its output")
        return line.rstrip("\n")

    def _mark_dead(self):
        self._dead = True
        try:
            self._proc.kill()
        except OSError:
            pass

    def evaluate(self, board: Board) -> float:
        with self._lock:
            if self._dead:
                raise EvaluatorProtocolError("evaluator is quarantined (dead)")
            request = " ".join(str(e) for e in board.exponents())
            try:
                self._proc.stdin.write(request + "\n")
                self._proc.stdin.flush()
            except (BrokenPipeError, OSError) as exc:
                self._mark_dead()
                raise EvaluatorProtocolError(f"evaluator pipe broken: {exc}") from exc
            line = self._read_line()
            try:
                value = float(line)
            except ValueError:
                self._mark_dead()
                raise EvaluatorProtocolError(
                    f"unparseable response {line!r}"
                ) from None
            if not math.isfinite(value):
                self._mark_dead()
                raise EvaluatorValueError(f"non-finite response {value!r}")
            return value

    @property
    def alive(self) -> bool:
        return not self._dead and self._proc.poll() is None

    def close(self):
        self._dead = True
        if self._proc.poll() is None:
            try:
                self._proc.terminate()
                self._proc.wait(timeout=2)
            except (OSError, subprocess.TimeoutExpired):
                self._proc.kill()
        if self._proc.stdin:
            try:
                self._proc.stdin.close()
            except OSError:
                pass

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
        return False


@dataclass
class ExternalEvaluatorHandle:
    """Transport descriptor for an out-of-process evaluator."""

    command: tuple[str, ...]
    timeout_ms: int = 2000
    protocol_version: int = PROTOCOL_VERSION
    _client: ExternalEvaluatorClient | None = field(
        default=None, repr=False, compare=False
    )

    def client(self) -> ExternalEvaluatorClient:
        if self._client is None or not self._client.alive:
            self._client = ExternalEvaluatorClient(self.command, self.timeout_ms)
        return self._client

    def close(self):
        if self._client is not None:
            self._client.close()
            self._client = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
        return False


def eval_external(handle: ExternalEvaluatorHandle, board: Board) -> float:
    """Score a board through the evaluator process behind the handle."""
    return handle.client().evaluate(board)
