"""Line-delimited JSON session protocol over stdio or localhost TCP.

One request per line, one response per line, correlation via a
client-chosen ``id``. Each connection owns one engine session; requests
on a connection are processed strictly in arrival order, so response
order always equals request order. Render plans are inlined in responses
so thin clients never need graph file access.

Request:  {"id": ..., "op": "...", "args": {...}}
Response: {"id": ..., "ok": true, "result": {...}}
        | {"id": ..., "ok": false, "error": {"code": "...", "message": "..."}}
"""

from __future__ import annotations

import json
import socketserver
import sys
from typing import Optional

from . import engine, inputs, render
from .errors import (
    GraphParseError,
    InactiveSessionError,
    NavGraphError,
    UnknownEntryError,
    UnknownRuleError,
)
from .graph import Graph, load

PROTOCOL_VERSION = 1

OPS = ("init", "enter", "move", "input", "command", "undo", "describe", "state", "shutdown")


def move_to_document(result: engine.MoveResult) -> dict:
    return {"status": result.status, "from": result.from_node, "to": result.to_node,
            "rule": result.rule, "edge": result.edge}


class SessionHandler:
    """One protocol session: a graph, a binding table, and a focus state."""

    def __init__(self, graph_path: Optional[str] = None, graph: Optional[Graph] = None):
        self.default_graph_path = graph_path
        self.graph = graph
        self.bindings: Optional[inputs.BindingTable] = None
        self.state: Optional[engine.FocusState] = None
        self.render_mode = render.ON_DEMAND
        self.verbosity = render.DEFAULT
        self.closed = False
        if graph is not None:
            self.bindings = inputs.default_bindings(graph)

    # -- entry points --------------------------------------------------------

    def handle_line(self, line: str) -> str:
        return json.dumps(self.handle_text(line), sort_keys=True, separators=(",", ":"))

    def handle_text(self, line: str) -> dict:
        try:
            request = json.loads(line)
        except json.JSONDecodeError as exc:
            return _error(None, "BadRequest", f"malformed JSON: {exc.msg}")
        if not isinstance(request, dict):
            return _error(None, "BadRequest", "request must be a JSON object")
        return self.handle(request)

    def handle(self, request: dict) -> dict:
        rid = request.get("id")
        op = request.get("op")
        if op not in OPS:
            return _error(rid, "BadRequest", f"unknown op {op!r}")
        args = request.get("args") or {}
        if not isinstance(args, dict):
            return _error(rid, "BadRequest", "args must be an object")
        try:
            return getattr(self, f"_op_{op}")(rid, args)
        except InactiveSessionError as exc:
            return _error(rid, "InactiveSession", str(exc))
        except UnknownRuleError as exc:
            return _error(rid, "UnknownRule", str(exc))
        except (NavGraphError, OSError, ValueError) as exc:
            return _error(rid, "BadRequest", str(exc))

    # -- ops -------------------------------------------------------------------

    def _op_init(self, rid, args):
        path = args.get("graph", self.default_graph_path)
        if path is None:
            return _error(rid, "BadRequest", "init needs a graph path (or a server default)")
        try:
            graph = load(path)
        except FileNotFoundError:
            return _error(rid, "BadRequest", f"graph file not found: {path}")
        except GraphParseError as exc:
            return _error(rid, "BadRequest", f"unreadable graph: {exc}")
        mode = args.get("mode", render.ON_DEMAND)
        if mode not in (render.ON_DEMAND, render.PRE_RENDERED):
            return _error(rid, "BadRequest", f"unknown render mode {mode!r}")
        verbosity = args.get("verbosity", render.DEFAULT)
        if verbosity not in (render.TERSE, render.DEFAULT, render.VERBOSE):
            return _error(rid, "BadRequest", f"unknown verbosity {verbosity!r}")
        self.graph = graph
        self.bindings = inputs.default_bindings(graph)
        self.state = None
        self.render_mode = mode
        self.verbosity = verbosity
        return _ok(rid, {
            "protocol": PROTOCOL_VERSION,
            "entry": graph.entry,
            "nodeCount": graph.node_count(),
            "edgeCount": graph.edge_count(),
        })

    def _require_graph(self):
        if self.graph is None:
            raise _NoSession()

    def _require_state(self) -> engine.FocusState:
        self._require_graph()
        if self.state is None:
            raise InactiveSessionError("no active focus; send enter first")
        return self.state

    def _op_enter(self, rid, args):
        try:
            self._require_graph()
        except _NoSession:
            return _error(rid, "UnknownSession", "no graph loaded; send init first")
        try:
            state, result = engine.enter(self.graph, args.get("entry"))
        except UnknownEntryError as exc:
            return _error(rid, "BadRequest", str(exc))
        self.state = state
        return self._move_response(rid, result)

    def _op_move(self, rid, args):
        rule = args.get("rule")
        if not isinstance(rule, str):
            return _error(rid, "BadRequest", "move needs a 'rule' string")
        state = self._session_state(rid)
        if isinstance(state, dict):
            return state
        return self._move_response(rid, engine.move(state, rule))

    def _op_input(self, rid, args):
        token = args.get("token")
        if not isinstance(token, str):
            return _error(rid, "BadRequest", "input needs a 'token' string")
        state = self._session_state(rid)
        if isinstance(state, dict):
            return state
        result = inputs.dispatch(self.bindings, state, token)
        if result is None:
            return _ok(rid, {"move": None, "plan": None, "description": None})
        return self._move_response(rid, result)

    def _op_command(self, rid, args):
        text = args.get("text")
        if not isinstance(text, str):
            return _error(rid, "BadRequest", "command needs a 'text' string")
        state = self._session_state(rid)
        if isinstance(state, dict):
            return state
        rule = inputs.parse_command(self.bindings, text)
        if rule is None:
            return _ok(rid, {"move": None, "plan": None, "description": None})
        return self._move_response(rid, engine.move(state, rule))

    def _op_undo(self, rid, args):
        state = self._session_state(rid)
        if isinstance(state, dict):
            return state
        return self._move_response(rid, engine.undo(state))

    def _op_describe(self, rid, args):
        state = self._session_state(rid)
        if isinstance(state, dict):
            return state
        verbosity = args.get("verbosity", self.verbosity)
        node = engine.current_node(state)
        return _ok(rid, {"node": node.id, "description": render.describe(node, verbosity)})

    def _op_state(self, rid, args):
        try:
            self._require_graph()
        except _NoSession:
            return _error(rid, "UnknownSession", "no graph loaded; send init first")
        state = self.state
        if state is None:
            return _ok(rid, {"active": False, "current": None, "historyDepth": 0})
        return _ok(rid, {"active": state.active,
                         "current": state.current if state.active else None,
                         "historyDepth": len(state.previous_stack)})

    def _op_shutdown(self, rid, args):
        self.closed = True
        return _ok(rid, {"closing": True})

    # -- helpers -----------------------------------------------------------------

    def _session_state(self, rid):
        try:
            return self._require_state()
        except _NoSession:
            return _error(rid, "UnknownSession", "no graph loaded; send init first")

    def _move_response(self, rid, result: engine.MoveResult) -> dict:
        plan = render.plan_render(self.graph, result, self.render_mode)
        description = None
        if self.state is not None and self.state.active:
            description = render.describe(
                self.graph.nodes[self.state.current], self.verbosity)
        return _ok(rid, {
            "move": move_to_document(result),
            "plan": render.plan_to_document(plan),
            "description": description,
        })


class _NoSession(NavGraphError):
    pass


def _ok(rid, result: dict) -> dict:
    return {"id": rid, "ok": True, "result": result}


def _error(rid, code: str, message: str) -> dict:
    return {"id": rid, "ok": False, "error": {"code": code, "message": message}}


# ---------------------------------------------------------------------------
# Transports


def serve_stdio(graph_path: Optional[str] = None, stdin=None, stdout=None) -> None:
    """One session over stdin/stdout; returns after a shutdown request."""
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    handler = SessionHandler(graph_path)
    for line in stdin:
        if not line.strip():
            continue
        stdout.write(handler.handle_line(line) + "\n")
        stdout.flush()
        if handler.closed:
            break


class _TCPConnection(socketserver.StreamRequestHandler):
    def handle(self):
        session = SessionHandler(self.server.graph_path)  # type: ignore[attr-defined]
        for raw in self.rfile:
            line = raw.decode("utf-8", errors="replace")
            if not line.strip():
                continue
            try:
                self.wfile.write((session.handle_line(line) + "\n").encode("utf-8"))
            except (BrokenPipeError, ConnectionResetError):
                return
            if session.closed:
                return


class ProtocolServer(socketserver.ThreadingTCPServer):
    """Localhost TCP server; one independent session per connection."""

    allow_reuse_address = True
    daemon_threads = True

    def __init__(self, port: int, graph_path: Optional[str] = None):
        super().__init__(("127.0.0.1", port), _TCPConnection)
        self.graph_path = graph_path


def serve_tcp(port: int, graph_path: Optional[str] = None) -> None:
    with ProtocolServer(port, graph_path) as server:
        host, bound_port = server.server_address
        print(f"listening on {host}:{bound_port}", file=sys.stderr)
        server.serve_forever()
