"""Render planning and focus descriptions.

The engine never draws. For each move it emits a :class:`RenderPlan` —
which node elements a host should remove and add, and where focus goes —
and keeps the one-way flow engine -> host (no operation reads from a
rendered element). In on-demand mode only the about-to-be-focused node is
materialized and the previously focused one is dropped.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from .engine import BLOCKED, ENTERED, EXITED, MOVED, MoveResult
from .errors import MissingRenderSpecError
from .graph import Graph, RenderSpec, Node

ON_DEMAND = "onDemand"
PRE_RENDERED = "preRendered"

TERSE = "terse"
DEFAULT = "default"
VERBOSE = "verbose"


class RenderPlan(NamedTuple):
    removals: tuple[str, ...]
    additions: tuple[tuple[str, RenderSpec], ...]
    focus_target: Optional[str]  # node id, or the graph's external exit ref


def plan_render(graph: Graph, result: MoveResult, mode: str = ON_DEMAND,
                allow_fallback: bool = True) -> RenderPlan:
    """Turn a move result into host render instructions.

    On-demand: add the destination, remove the origin (net one live
    element). Pre-rendered: focus shift only. Exited: removals plus the
    graph's external exit reference as the focus target.
    """
    if mode not in (ON_DEMAND, PRE_RENDERED):
        raise ValueError(f"unknown render mode {mode!r}")
    if result.status == EXITED:
        removals = (result.from_node,) if (mode == ON_DEMAND and result.from_node) else ()
        return RenderPlan(removals, (), graph.exit_target)
    if result.status == BLOCKED:
        return RenderPlan((), (), result.from_node)
    # moved | entered
    if mode == PRE_RENDERED:
        return RenderPlan((), (), result.to_node)
    additions = ((result.to_node, _spec_for(graph, result.to_node, allow_fallback)),)
    removals = (result.from_node,) if (result.status == MOVED and result.from_node) else ()
    return RenderPlan(removals, additions, result.to_node)


def _spec_for(graph: Graph, node_id: str, allow_fallback: bool) -> RenderSpec:
    node = graph.nodes[node_id]
    if node.render is not None:
        return node.render
    if not allow_fallback:
        raise MissingRenderSpecError(f"node {node_id!r} has no render spec")
    # Non-visual focusable entry: semantics only, host places it off-chart.
    return RenderSpec(None, semantics=node.semantics)


def describe(node: Node, verbosity: str = DEFAULT) -> str:
    """Deterministic focus announcement text for a node.

    terse: the label verbatim. default: label + description. verbose:
    label + description + role token + structural position ("k of n")
    when the datum carries index/count.
    """
    sem = node.semantics
    if verbosity == TERSE:
        return sem.label
    parts = [sem.label, sem.description]
    if verbosity == VERBOSE:
        parts.append(sem.role)
        datum = node.datum or {}
        if "index" in datum and "count" in datum:
            parts.append(f"{datum['index']} of {datum['count']}")
    elif verbosity != DEFAULT:
        raise ValueError(f"unknown verbosity {verbosity!r}")
    out = []
    for part in parts:
        if not part:
            continue
        out.append(part if part.endswith(".") else part + ".")
    return " ".join(out)


def plan_to_document(plan: RenderPlan) -> dict:
    """JSON shape of a plan as inlined in protocol responses."""
    additions = []
    for node_id, spec in plan.additions:
        render = None
        if spec is not None:
            semantics = None
            if spec.semantics is not None:
                semantics = {"role": spec.semantics.role, "label": spec.semantics.label,
                             "description": spec.semantics.description,
                             "externalRef": spec.semantics.external_ref}
            render = {"geometry": spec.geometry, "styleToken": spec.style_token,
                      "semantics": semantics}
        additions.append({"node": node_id, "render": render})
    return {
        "removals": list(plan.removals),
        "additions": additions,
        "focusTarget": plan.focus_target,
    }
