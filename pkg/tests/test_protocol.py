import json
import socket
import threading

from navgraph.protocol import ProtocolServer, SessionHandler, serve_stdio

from conftest import FIXTURES, python_subprocess

STACKED = str(FIXTURES / "stacked_bar.json")


def fresh_session():
    handler = SessionHandler()
    init = handler.handle({"id": "1", "op": "init", "args": {"graph": STACKED}})
    assert init["ok"], init
    assert init["result"]["protocol"] == 1
    enter = handler.handle({"id": "2", "op": "enter", "args": {}})
    assert enter["ok"]
    return handler


def test_init_reports_graph_shape():
    handler = SessionHandler()
    response = handler.handle({"id": "a", "op": "init", "args": {"graph": STACKED}})
    assert response["id"] == "a"
    assert response["result"]["entry"] == "root"
    assert response["result"]["nodeCount"] == 22


def test_input_token_moves_focus():
    handler = fresh_session()
    handler.handle({"id": "3", "op": "input", "args": {"token": "Enter"}})
    response = handler.handle({"id": "4", "op": "input", "args": {"token": "ArrowDown"}})
    move = response["result"]["move"]
    assert move["from"] == "BPL"
    assert move["to"] == "FA Cup"
    assert response["result"]["plan"]["focusTarget"] == "FA Cup"
    assert response["result"]["description"].startswith("FA Cup.")


def test_command_text_equals_bound_key():
    key_session = fresh_session()
    word_session = fresh_session()
    via_key = key_session.handle({"id": "3", "op": "input", "args": {"token": "Enter"}})
    via_word = word_session.handle({"id": "3", "op": "command", "args": {"text": "drill"}})
    assert via_key["result"]["move"] == via_word["result"]["move"]


def test_unknown_rule_is_in_band_error():
    handler = fresh_session()
    response = handler.handle({"id": "9", "op": "move", "args": {"rule": "warp"}})
    assert not response["ok"]
    assert response["error"]["code"] == "UnknownRule"
    state = handler.handle({"id": "10", "op": "state", "args": {}})
    assert state["result"]["current"] == "root"  # unchanged


def test_unbound_token_is_null_result():
    handler = fresh_session()
    response = handler.handle({"id": "5", "op": "input", "args": {"token": "F13"}})
    assert response["ok"]
    assert response["result"]["move"] is None


def test_ops_before_init_are_unknown_session():
    handler = SessionHandler()
    response = handler.handle({"id": "1", "op": "move", "args": {"rule": "down"}})
    assert response["error"]["code"] == "UnknownSession"


def test_move_before_enter_is_inactive():
    handler = SessionHandler()
    handler.handle({"id": "1", "op": "init", "args": {"graph": STACKED}})
    response = handler.handle({"id": "2", "op": "move", "args": {"rule": "down"}})
    assert response["error"]["code"] == "InactiveSession"


def test_move_after_exit_is_inactive():
    handler = fresh_session()
    handler.handle({"id": "3", "op": "move", "args": {"rule": "exit"}})
    response = handler.handle({"id": "4", "op": "move", "args": {"rule": "down"}})
    assert response["error"]["code"] == "InactiveSession"


def test_undo_and_describe_and_state():
    handler = fresh_session()
    handler.handle({"id": "3", "op": "input", "args": {"token": "Enter"}})
    response = handler.handle({"id": "4", "op": "undo", "args": {}})
    assert response["result"]["move"]["to"] == "root"
    described = handler.handle({"id": "5", "op": "describe", "args": {"verbosity": "terse"}})
    assert described["result"]["description"] == "Club trophies by contest"
    state = handler.handle({"id": "6", "op": "state", "args": {}})
    assert state["result"] == {"active": True, "current": "root", "historyDepth": 0}


def test_malformed_json_line_keeps_session():
    handler = fresh_session()
    bad = json.loads(handler.handle_line("{nope"))
    assert bad["ok"] is False
    assert bad["error"]["code"] == "BadRequest"
    ok = json.loads(handler.handle_line(
        '{"id": "7", "op": "state", "args": {}}'))
    assert ok["ok"]


def test_unknown_op_is_bad_request():
    handler = fresh_session()
    response = handler.handle({"id": "8", "op": "teleport", "args": {}})
    assert response["error"]["code"] == "BadRequest"


# -- stdio transport -------------------------------------------------------------


def request_lines():
    reqs = [
        {"id": "1", "op": "init", "args": {"graph": STACKED}},
        {"id": "2", "op": "enter", "args": {}},
        {"id": "3", "op": "input", "args": {"token": "Enter"}},
        {"id": "4", "op": "input", "args": {"token": "ArrowDown"}},
        {"id": "5", "op": "shutdown", "args": {}},
    ]
    return "".join(json.dumps(r) + "\n" for r in reqs)


def test_serve_stdio_transcript_matches_in_process():
    import io

    stdout = io.StringIO()
    serve_stdio(None, stdin=io.StringIO(request_lines()), stdout=stdout)
    lines = stdout.getvalue().splitlines()
    assert len(lines) == 5
    handler = SessionHandler()
    expected = [handler.handle_line(line) for line in request_lines().splitlines()]
    assert lines == expected


def test_serve_stdio_subprocess_golden_transcript():
    proc = python_subprocess(["serve", "--stdio"], input_text=request_lines())
    assert proc.returncode == 0
    lines = proc.stdout.splitlines()
    assert len(lines) == 5
    last = json.loads(lines[3])
    assert last["result"]["move"]["to"] == "FA Cup"


# -- tcp transport ----------------------------------------------------------------


def send_all(port, requests):
    out = []
    with socket.create_connection(("127.0.0.1", port), timeout=10) as conn:
        reader = conn.makefile("r", encoding="utf-8")
        for request in requests:
            conn.sendall((json.dumps(request) + "\n").encode("utf-8"))
            out.append(json.loads(reader.readline()))
    return out


def test_tcp_sessions_are_isolated():
    server = ProtocolServer(0)
    port = server.server_address[1]
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        base = [{"id": "1", "op": "init", "args": {"graph": STACKED}},
                {"id": "2", "op": "enter", "args": {}}]
        a = send_all(port, base + [
            {"id": "3", "op": "input", "args": {"token": "Enter"}},
            {"id": "4", "op": "state", "args": {}},
        ])
        b = send_all(port, base + [{"id": "3", "op": "state", "args": {}}])
        assert a[3]["result"]["current"] == "BPL"
        assert b[2]["result"]["current"] == "root"
    finally:
        server.shutdown()
        server.server_close()


def test_tcp_request_order_equals_response_order():
    server = ProtocolServer(0)
    port = server.server_address[1]
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        requests = [{"id": str(i), "op": "state", "args": {}} for i in range(1, 8)]
        requests.insert(0, {"id": "0", "op": "init", "args": {"graph": STACKED}})
        responses = send_all(port, requests)
        assert [r["id"] for r in responses] == [r["id"] for r in requests]
    finally:
        server.shutdown()
        server.server_close()
