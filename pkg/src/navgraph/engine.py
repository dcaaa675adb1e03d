"""Focus state machine over a navigation graph.

The engine's only mutable state is a :class:`FocusState`: the current
node, the previous-node stack, and an active flag. Moves take the first
applicable edge for a rule; traversals whose destination came from the
``previous`` resolver consume the history entry they return to (so that
moving along a generic return edge and :func:`undo` are the same
operation). Everything else pushes the origin onto the stack.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from .errors import InactiveSessionError, UnknownEntryError, UnknownRuleError
from .graph import EXIT_ID, TOWARD_TARGET, Graph, Node, ResolverContext, applicable_edges

__all__ = ["FocusState", "MoveResult", "enter", "move", "undo", "current_node",
           "MOVED", "BLOCKED", "EXITED", "ENTERED", "DEFAULT_HISTORY_LIMIT"]

MOVED = "moved"
BLOCKED = "blocked"
EXITED = "exited"
ENTERED = "entered"

DEFAULT_HISTORY_LIMIT = 1024


class MoveResult(NamedTuple):
    status: str  # moved | blocked | exited | entered
    from_node: Optional[str]
    to_node: Optional[str]
    rule: Optional[str]
    edge: Optional[str]


class FocusState:
    """One session's focus position over a shared, immutable graph.

    Operations on a state must be externally serialized; distinct states
    over the same graph may run concurrently.
    """

    __slots__ = ("graph", "current", "previous_stack", "active", "history_limit")

    def __init__(self, graph: Graph, current: str, history_limit: int = DEFAULT_HISTORY_LIMIT):
        self.graph = graph
        self.current = current
        self.previous_stack: list[str] = []
        self.active = True
        self.history_limit = history_limit

    def context(self) -> ResolverContext:
        prev = self.previous_stack[-1] if self.previous_stack else None
        return ResolverContext(self.current, prev, self.graph.entry)

    def snapshot(self) -> tuple:
        return (self.current, tuple(self.previous_stack), self.active)


def enter(graph: Graph, entry_override: Optional[str] = None,
          history_limit: int = DEFAULT_HISTORY_LIMIT) -> tuple[FocusState, MoveResult]:
    """Open a session focused on the graph entry (or an explicit node)."""
    entry = graph.entry if entry_override is None else entry_override
    if not graph.has_node(entry):
        raise UnknownEntryError(f"entry {entry!r} names no declared node")
    state = FocusState(graph, entry, history_limit)
    return state, MoveResult(ENTERED, None, entry, None, None)


def move(state: FocusState, rule_name: str) -> MoveResult:
    """Execute a named navigation rule from the current focus."""
    if not state.active:
        raise InactiveSessionError("session has exited")
    graph = state.graph
    if rule_name not in graph.rules:
        raise UnknownRuleError(f"rule {rule_name!r} is not declared in this graph")
    found = applicable_edges(graph, state.current, rule_name, state.context())
    if not found:
        return MoveResult(BLOCKED, state.current, None, rule_name, None)
    edge_id, dest = found[0]
    origin = state.current
    if dest == EXIT_ID:
        state.active = False
        return MoveResult(EXITED, origin, None, rule_name, edge_id)
    if _dest_is_previous(graph, edge_id, rule_name):
        state.previous_stack.pop()
    else:
        stack = state.previous_stack
        if len(stack) >= state.history_limit:
            del stack[0]
        stack.append(origin)
    state.current = dest
    return MoveResult(MOVED, origin, dest, rule_name, edge_id)


def undo(state: FocusState) -> MoveResult:
    """Return focus to the top of the previous-node stack and pop it."""
    if not state.active:
        raise InactiveSessionError("session has exited")
    if not state.previous_stack:
        return MoveResult(BLOCKED, state.current, None, None, None)
    origin = state.current
    dest = state.previous_stack.pop()
    state.current = dest
    return MoveResult(MOVED, origin, dest, None, _return_edge_id(state.graph))


def current_node(state: FocusState) -> Node:
    if not state.active:
        raise InactiveSessionError("session has exited")
    return state.graph.nodes[state.current]


def _dest_is_previous(graph: Graph, edge_id: str, rule_name: str) -> bool:
    ei = graph._edge_index()[edge_id]
    if graph.rules[rule_name].direction == TOWARD_TARGET:
        return not graph._e_tgt_lit[ei] and graph._e_tgt_ref[ei] == "previous"
    return not graph._e_src_lit[ei] and graph._e_src_ref[ei] == "previous"


def _return_edge_id(graph: Graph) -> Optional[str]:
    for eid in graph.universal_edges:
        ei = graph._edge_index()[eid]
        if ((not graph._e_tgt_lit[ei] and graph._e_tgt_ref[ei] == "previous")
                or (not graph._e_src_lit[ei] and graph._e_src_ref[ei] == "previous")):
            return eid
    return None
