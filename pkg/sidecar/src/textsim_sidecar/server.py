"""Newline-delimited JSON request loop.

One request per line: ``{"id": <any>, "pairs": [[a, b], ...]}``.  One
response per request, in request order:
``{"id": <echoed>, "scores": [...], "scorer": "<identity>"}`` on
success, ``{"id": <echoed or null>, "error": "<message>", "scorer":
...}`` on failure.  A bad line never kills the loop; the error response
is emitted and the next line is read.  EOF shuts the loop down
cleanly.

The loop is single-consumer by design: stdio has exactly one peer, and
the TCP listener accepts one connection at a time.
"""

from __future__ import annotations

import json
import logging
import socket
import sys
from typing import Any, Callable, IO

from .scorer import Scorer

log = logging.getLogger("textsim_sidecar")


def handle_request(obj: Any, scorer: Scorer, max_batch: int) -> dict[str, Any]:
    """Score one decoded request, returning the response object."""
    if not isinstance(obj, dict):
        return _error(None, "request must be a JSON object", scorer)
    request_id = obj.get("id")
    pairs = obj.get("pairs")
    if not isinstance(pairs, list) or not pairs:
        return _error(request_id, "pairs must be a non-empty list", scorer)
    if len(pairs) > max_batch:
        return _error(
            request_id, f"batch of {len(pairs)} exceeds max_batch {max_batch}", scorer
        )
    cleaned: list[tuple[str, str]] = []
    for i, pair in enumerate(pairs):
        if (
            not isinstance(pair, (list, tuple))
            or len(pair) != 2
            or not all(isinstance(t, str) for t in pair)
        ):
            return _error(request_id, f"pairs[{i}] must be a pair of strings", scorer)
        cleaned.append((pair[0], pair[1]))
    try:
        scores = scorer.score_batch(cleaned)
    except Exception as exc:  # scoring failure must not kill the loop
        log.exception("scoring failed")
        return _error(request_id, f"scoring failed: {exc}", scorer)
    return {"id": request_id, "scores": scores, "scorer": scorer.identity}


def handle_line(line: str, scorer: Scorer, max_batch: int) -> dict[str, Any] | None:
    """Decode and score one raw line; None means the line was blank."""
    if not line.strip():
        return None
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        return _error(None, f"invalid JSON: {exc}", scorer)
    return handle_request(obj, scorer, max_batch)


def _error(request_id: Any, message: str, scorer: Scorer) -> dict[str, Any]:
    return {"id": request_id, "error": message, "scorer": scorer.identity}


def serve_stream(reader: IO[str], writer: IO[str], scorer: Scorer, max_batch: int) -> int:
    """Run the request loop over a text stream pair until EOF."""
    handled = 0
    for line in reader:
        response = handle_line(line, scorer, max_batch)
        if response is None:
            continue
        writer.write(json.dumps(response, ensure_ascii=False) + "\n")
        writer.flush()
        handled += 1
    return handled


def serve_stdio(scorer: Scorer, max_batch: int) -> int:
    return serve_stream(sys.stdin, sys.stdout, scorer, max_batch)


def serve_tcp(
    scorer: Scorer,
    host: str,
    port: int,
    max_batch: int,
    *,
    max_connections: int | None = None,
    on_ready: Callable[[int], None] | None = None,
) -> int:
    """Accept local connections one at a time and serve each until EOF.

    ``port`` 0 binds an ephemeral port; the bound port is announced on
    stderr and passed to ``on_ready``.  ``max_connections`` bounds how
    many clients are served before returning (None means run forever).
    """
    handled = 0
    with socket.socket(socket.AF_INET, socket.SOCK_STREAM) as listener:
        listener.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        listener.bind((host, port))
        listener.listen(1)
        bound_port = listener.getsockname()[1]
        print(f"listening on {host}:{bound_port}", file=sys.stderr, flush=True)
        if on_ready is not None:
            on_ready(bound_port)
        served = 0
        while max_connections is None or served < max_connections:
            try:
                conn, peer = listener.accept()
            except OSError:
                break
            log.info("connection from %s:%d", *peer)
            with conn:
                reader = conn.makefile("r", encoding="utf-8", newline="\n")
                writer = conn.makefile("w", encoding="utf-8", newline="\n")
                try:
                    handled += serve_stream(reader, writer, scorer, max_batch)
                except (BrokenPipeError, ConnectionResetError):
                    log.info("peer went away")
            served += 1
    return handled
