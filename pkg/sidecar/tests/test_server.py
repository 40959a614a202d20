"""Request-loop behaviour: framing, error isolation, transports."""

import io
import json
import queue
import socket
import subprocess
import sys
import threading

import pytest

from textsim_sidecar.scorer import CharNgramScorer
from textsim_sidecar.server import handle_line, handle_request, serve_stream, serve_tcp

MAX_BATCH = 64


@pytest.fixture(scope="module")
def scorer():
    return CharNgramScorer()


class TestHandleRequest:
    def test_scores_in_request_order(self, scorer):
        # Alternate near-identical and unrelated pairs so a reordering
        # would flip the high/low pattern.
        pairs = []
        for i in range(100):
            if i % 2 == 0:
                pairs.append([f"token {i}", f"token {i}"])
            else:
                pairs.append([f"token {i}", "zzz qqq"])
        response = handle_request({"id": 7, "pairs": pairs}, scorer, MAX_BATCH * 10)
        assert response["id"] == 7
        assert response["scorer"] == scorer.identity
        assert len(response["scores"]) == 100
        for i, score in enumerate(response["scores"]):
            if i % 2 == 0:
                assert score >= 0.99
            else:
                assert score < 0.5

    def test_echoes_arbitrary_id(self, scorer):
        response = handle_request({"id": "req-9", "pairs": [["a", "a"]]}, scorer, MAX_BATCH)
        assert response["id"] == "req-9"

    def test_non_object_request(self, scorer):
        response = handle_request([1, 2], scorer, MAX_BATCH)
        assert response["id"] is None
        assert "JSON object" in response["error"]
        assert response["scorer"] == scorer.identity

    @pytest.mark.parametrize("pairs", [None, [], "ab", {"a": 1}])
    def test_missing_or_empty_pairs(self, scorer, pairs):
        request = {"id": 3} if pairs is None else {"id": 3, "pairs": pairs}
        response = handle_request(request, scorer, MAX_BATCH)
        assert response["id"] == 3
        assert "pairs" in response["error"]

    @pytest.mark.parametrize("bad", [["a"], ["a", "b", "c"], ["a", 5], "ab", [None, "b"]])
    def test_malformed_pair_is_located(self, scorer, bad):
        response = handle_request({"id": 1, "pairs": [["x", "x"], bad]}, scorer, MAX_BATCH)
        assert "pairs[1]" in response["error"]

    def test_oversized_batch_rejected(self, scorer):
        pairs = [["a", "a"]] * (MAX_BATCH + 1)
        response = handle_request({"id": 2, "pairs": pairs}, scorer, MAX_BATCH)
        assert "max_batch" in response["error"]


class TestHandleLine:
    def test_invalid_json_yields_null_id_error(self, scorer):
        response = handle_line("not json\n", scorer, MAX_BATCH)
        assert response["id"] is None
        assert "invalid JSON" in response["error"]
        assert response["scorer"] == scorer.identity

    def test_blank_line_is_skipped(self, scorer):
        assert handle_line("\n", scorer, MAX_BATCH) is None
        assert handle_line("   \n", scorer, MAX_BATCH) is None

    def test_valid_line(self, scorer):
        response = handle_line('{"id": 1, "pairs": [["a", "a"]]}\n', scorer, MAX_BATCH)
        assert response["scores"][0] >= 0.99


class TestServeStream:
    def test_bad_line_does_not_stop_the_loop(self, scorer):
        script = (
            '{"id": 1, "pairs": [["a", "a"]]}\n'
            "garbage\n"
            "\n"
            '{"id": 2, "pairs": [["b", "b"]]}\n'
        )
        out = io.StringIO()
        handled = serve_stream(io.StringIO(script), out, scorer, MAX_BATCH)
        lines = out.getvalue().splitlines()
        assert handled == 3
        assert [json.loads(l)["id"] for l in lines] == [1, None, 2]
        assert json.loads(lines[1])["error"]
        assert json.loads(lines[2])["scores"][0] >= 0.99

    def test_eof_terminates_cleanly(self, scorer):
        assert serve_stream(io.StringIO(""), io.StringIO(), scorer, MAX_BATCH) == 0

    def test_every_response_names_the_scorer(self, scorer):
        script = '{"id": 1, "pairs": [["a", "b"]]}\nbad\n'
        out = io.StringIO()
        serve_stream(io.StringIO(script), out, scorer, MAX_BATCH)
        for line in out.getvalue().splitlines():
            assert json.loads(line)["scorer"] == scorer.identity


class TestServeTcp:
    def test_round_trip_over_socket(self, scorer):
        ports: queue.Queue[int] = queue.Queue()
        thread = threading.Thread(
            target=serve_tcp,
            args=(scorer, "127.0.0.1", 0, MAX_BATCH),
            kwargs={"max_connections": 1, "on_ready": ports.put},
            daemon=True,
        )
        thread.start()
        port = ports.get(timeout=10)
        with socket.create_connection(("127.0.0.1", port), timeout=10) as conn:
            reader = conn.makefile("r", encoding="utf-8")
            conn.sendall(b'{"id": 1, "pairs": [["a", "a"], ["", "x"]]}\n')
            first = json.loads(reader.readline())
            conn.sendall(b"junk\n")
            second = json.loads(reader.readline())
            # makefile holds a reference to the socket; close it so the
            # server sees EOF once the connection drops.
            reader.close()
        thread.join(timeout=10)
        assert not thread.is_alive()
        assert first["id"] == 1
        assert first["scores"][0] >= 0.99
        assert first["scores"][1] == 0.0
        assert second["id"] is None and second["error"]


class TestSubprocess:
    # End-to-end over real pipes, the way a host process drives it.
    def run_lines(self, lines, *args):
        return subprocess.run(
            [sys.executable, "-m", "textsim_sidecar", *args],
            input="".join(line + "\n" for line in lines),
            capture_output=True,
            text=True,
            timeout=60,
        )

    def test_stdio_session(self):
        result = self.run_lines(
            [
                '{"id": 1, "pairs": [["a", "a"]]}',
                "malformed",
                '{"id": 2, "pairs": [["court order", "court decision"]]}',
            ]
        )
        assert result.returncode == 0
        responses = [json.loads(l) for l in result.stdout.splitlines()]
        assert [r["id"] for r in responses] == [1, None, 2]
        assert responses[0]["scores"][0] >= 0.99
        assert 0.0 < responses[2]["scores"][0] < 1.0

    def test_process_survives_malformed_line(self):
        proc = subprocess.Popen(
            [sys.executable, "-m", "textsim_sidecar"],
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            stderr=subprocess.DEVNULL,
            text=True,
        )
        try:
            proc.stdin.write("not json at all\n")
            proc.stdin.flush()
            error = json.loads(proc.stdout.readline())
            assert error["id"] is None and error["error"]
            assert proc.poll() is None
            proc.stdin.write('{"id": 5, "pairs": [["x", "x"]]}\n')
            proc.stdin.flush()
            ok = json.loads(proc.stdout.readline())
            assert ok["id"] == 5
        finally:
            proc.stdin.close()
            assert proc.wait(timeout=30) == 0

    def test_config_file_changes_identity(self, tmp_path):
        config = tmp_path / "config.json"
        config.write_text('{"dim": 128}', encoding="utf-8")
        result = self.run_lines(['{"id": 1, "pairs": [["a", "a"]]}'], "--config", str(config))
        assert json.loads(result.stdout)["scorer"] == "charngram-greedyf1-128d@0.1.0"

    def test_flag_overrides_config(self, tmp_path):
        config = tmp_path / "config.json"
        config.write_text('{"dim": 128}', encoding="utf-8")
        result = self.run_lines(
            ['{"id": 1, "pairs": [["a", "a"]]}'], "--config", str(config), "--dim", "256"
        )
        assert json.loads(result.stdout)["scorer"] == "charngram-greedyf1-256d@0.1.0"

    def test_bad_config_exits_before_serving(self, tmp_path):
        config = tmp_path / "config.json"
        config.write_text('{"dim": 2}', encoding="utf-8")
        result = self.run_lines(['{"id": 1, "pairs": [["a", "a"]]}'], "--config", str(config))
        assert result.returncode == 2
        assert result.stdout == ""
        assert "error:" in result.stderr

    def test_bad_listen_argument(self):
        result = self.run_lines([], "--listen", "nonsense")
        assert result.returncode == 2
        assert "HOST:PORT" in result.stderr
