"""Deterministic constructors from high-level structure specs to graphs.

Each builder compiles a small declarative spec (list, tree, dual
hierarchy, region adjacency) into a validated graph, always with the two
standard universal edges attached: an exit edge every node can take and a
generic return edge backing undo.

All builders are pure: the same spec yields a byte-identical serialized
graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import (
    CellCountMismatchError,
    CycleError,
    DanglingEdgeRefError,
    EmptyListError,
    MultipleRootsError,
    UnknownRegionError,
)
from .graph import Graph, ResolverContext, build_graph, register_resolver

EXIT_EDGE_ID = "to-exit"
RETURN_EDGE_ID = "any-return"


def standard_rules(exit_bindings=("Escape",), extra_bindings=None):
    """Rule decls for the universal exit and return edges."""
    rules = {
        "exit": {"direction": "toward_target", "bindings": list(exit_bindings)},
        "undo": {"direction": "toward_target", "bindings": []},
    }
    if extra_bindings:
        for name, tokens in extra_bindings.items():
            if name in rules:
                rules[name]["bindings"] = list(tokens)
    return rules


def standard_universal_edges():
    """Edge decls shared by every builder output (exit + generic return)."""
    return [
        {"id": EXIT_EDGE_ID, "source": {"resolver": "current"},
         "target": {"resolver": "exit"}, "rules": ["exit"]},
        {"id": RETURN_EDGE_ID, "source": {"resolver": "current"},
         "target": {"resolver": "previous"}, "rules": ["undo"]},
    ]


def _node(nid, role="text", label=None, description="", datum=None, render=None,
          overrides=None):
    decl = {"id": nid,
            "semantics": {"role": role, "label": label if label is not None else nid,
                          "description": description}}
    if datum is not None:
        decl["datum"] = datum
    if render is not None:
        decl["render"] = render
    if overrides:
        ov = overrides.get(nid)
        if ov:
            if "semantics" in ov:
                decl["semantics"].update(ov["semantics"])
            if "render" in ov:
                decl["render"] = ov["render"]
            if "datum" in ov:
                decl["datum"] = dict(decl.get("datum") or {}, **ov["datum"])
    return decl


# ---------------------------------------------------------------------------
# Lists


@dataclass
class ListSpec:
    item_ids: list[str]
    circular: bool = False
    forward_rule: str = "forward"
    backward_rule: str = "backward"
    forward_keys: tuple[str, ...] = ("ArrowRight",)
    backward_keys: tuple[str, ...] = ("ArrowLeft",)
    node_data: dict = field(default_factory=dict)


def build_list(spec: ListSpec) -> Graph:
    """Chain of items; each edge carries the forward and backward rules."""
    items = spec.item_ids
    if not items:
        raise EmptyListError("list spec declares no items")
    n = len(items)
    nodes = [_node(nid, role="listitem", datum={"index": i + 1, "count": n},
                   overrides=spec.node_data)
             for i, nid in enumerate(items)]
    rules = {
        spec.forward_rule: {"direction": "toward_target", "bindings": list(spec.forward_keys)},
        spec.backward_rule: {"direction": "toward_source", "bindings": list(spec.backward_keys)},
        **standard_rules(),
    }
    pair = [spec.forward_rule, spec.backward_rule]
    edges = [{"id": f"chain-{i}", "source": {"literal": items[i]},
              "target": {"literal": items[i + 1]}, "rules": pair}
             for i in range(n - 1)]
    if spec.circular and n > 1:
        edges.append({"id": "chain-wrap", "source": {"literal": items[-1]},
                      "target": {"literal": items[0]}, "rules": pair})
    edges.extend(standard_universal_edges())
    return build_graph(nodes, edges, rules,
                       universal_edges=(EXIT_EDGE_ID, RETURN_EDGE_ID), entry=items[0])


# ---------------------------------------------------------------------------
# Trees


@dataclass
class TreeSpec:
    nodes: list[tuple[str, Optional[str]]]  # (id, parent id), exactly one root
    sibling_circular: bool = False
    next_sibling_rule: str = "right"
    prev_sibling_rule: str = "left"
    drill_rule: str = "drill"
    up_rule: str = "up"
    node_data: dict = field(default_factory=dict)


def build_tree(spec: TreeSpec) -> Graph:
    """Sibling chains per parent, drill to first child, up to parent."""
    ids = [nid for nid, _ in spec.nodes]
    parents = dict(spec.nodes)
    roots = [nid for nid, parent in spec.nodes if parent is None]
    if len(roots) != 1:
        raise MultipleRootsError(f"tree spec must have exactly one root, found {len(roots)}")
    root = roots[0]
    children: dict[str, list[str]] = {}
    for nid, parent in spec.nodes:
        if parent is None:
            continue
        if parent not in parents:
            raise DanglingEdgeRefError(f"node {nid!r} names unknown parent {parent!r}")
        children.setdefault(parent, []).append(nid)
    for nid in ids:
        seen = {nid}
        cursor = parents.get(nid)
        while cursor is not None:
            if cursor in seen:
                raise CycleError(f"parent chain of {nid!r} loops through {cursor!r}")
            seen.add(cursor)
            cursor = parents.get(cursor)

    nodes = [_node(nid, role="group" if children.get(nid) else "listitem",
                   overrides=spec.node_data) for nid in ids]
    rules = {
        spec.next_sibling_rule: {"direction": "toward_target", "bindings": ["ArrowRight"]},
        spec.prev_sibling_rule: {"direction": "toward_source", "bindings": ["ArrowLeft"]},
        spec.drill_rule: {"direction": "toward_target", "bindings": ["Enter"]},
        spec.up_rule: {"direction": "toward_target", "bindings": ["Backspace"]},
        **standard_rules(exit_bindings=()),
    }
    sib_pair = [spec.next_sibling_rule, spec.prev_sibling_rule]
    edges = []
    for parent, kids in children.items():
        edges.append({"id": f"drill-{parent}", "source": {"literal": parent},
                      "target": {"literal": kids[0]}, "rules": [spec.drill_rule]})
        for i in range(len(kids) - 1):
            edges.append({"id": f"sib-{kids[i]}", "source": {"literal": kids[i]},
                          "target": {"literal": kids[i + 1]}, "rules": sib_pair})
        if spec.sibling_circular and len(kids) > 1:
            edges.append({"id": f"sib-wrap-{parent}", "source": {"literal": kids[-1]},
                          "target": {"literal": kids[0]}, "rules": sib_pair})
        for kid in kids:
            edges.append({"id": f"up-{kid}", "source": {"literal": kid},
                          "target": {"literal": parent}, "rules": [spec.up_rule]})
    edges.extend(standard_universal_edges())
    return build_graph(nodes, edges, rules,
                       universal_edges=(EXIT_EDGE_ID, RETURN_EDGE_ID), entry=root,
                       drill_rule=spec.drill_rule)


# ---------------------------------------------------------------------------
# Dual hierarchy (two trees sharing the same leaf cells)


@dataclass
class DualHierarchySpec:
    dim_a: list[str]                 # stack dimension (vertical movement)
    dim_b: list[str]                 # across dimension (horizontal movement)
    cells: Optional[list[str]] = None  # row-major by dim_a; default "{a}/{b}"
    dim_a_label: str = "group"
    dim_b_label: str = "group"
    root_id: str = "root"
    legend_id: str = "legend"
    axis_id: str = "x-axis"
    stack_next: str = "down"
    stack_prev: str = "up"
    across_next: str = "right"
    across_prev: str = "left"
    drill: str = "drill"
    to_a: str = "up-to-contest"
    to_b: str = "up-to-axis"
    circular_within_stack: bool = True
    extra_bindings: dict = field(default_factory=dict)
    node_data: dict = field(default_factory=dict)
    exit_target: Optional[str] = None


def build_dual_hierarchy(spec: DualHierarchySpec) -> Graph:
    """Two intersecting trees over one set of cells.

    Stack moves run within a column (circular when configured), across
    moves run within a row (never circular: the across dimension mirrors
    the x axis order). Each cell reaches its dim-a parent via ``to_a`` and
    its dim-b parent via ``to_b``; category levels drill into their first
    cell; the root/legend/axis scaffold sits on top.
    """
    na, nb = len(spec.dim_a), len(spec.dim_b)
    if na == 0 or nb == 0:
        raise EmptyListError("dual-hierarchy spec needs at least one id per dimension")
    if spec.cells is None:
        cells = [f"{a}/{b}" for a in spec.dim_a for b in spec.dim_b]
    else:
        cells = list(spec.cells)
    if len(cells) != na * nb:
        raise CellCountMismatchError(
            f"expected {na * nb} cells for {na}x{nb} dimensions, got {len(cells)}")

    def cell(i: int, j: int) -> str:
        return cells[i * nb + j]

    ov = spec.node_data
    nodes = [
        _node(spec.root_id, role="figure", overrides=ov),
        _node(spec.legend_id, role="group", label="Legend",
              description=f"{spec.dim_a_label} legend. {na} entries.", overrides=ov),
        _node(spec.axis_id, role="group", label="X axis",
              description=f"{spec.dim_b_label} axis. {nb} entries.", overrides=ov),
    ]
    for i, a in enumerate(spec.dim_a):
        nodes.append(_node(a, role="group",
                           description=f"{spec.dim_a_label} group. {i + 1} of {na}.",
                           datum={spec.dim_a_label: a}, overrides=ov))
    for j, b in enumerate(spec.dim_b):
        nodes.append(_node(b, role="group",
                           description=f"{spec.dim_b_label} group. {j + 1} of {nb}.",
                           datum={spec.dim_b_label: b}, overrides=ov))
    for i, a in enumerate(spec.dim_a):
        for j, b in enumerate(spec.dim_b):
            nodes.append(_node(
                cell(i, j), role="image", label=f"{a}, {b}",
                description=f"Stack {i + 1} of {na}, column {j + 1} of {nb}.",
                datum={spec.dim_a_label: a, spec.dim_b_label: b}, overrides=ov))

    bindings = {
        spec.stack_next: ("ArrowDown",),
        spec.stack_prev: ("ArrowUp",),
        spec.across_next: ("ArrowRight",),
        spec.across_prev: ("ArrowLeft",),
        spec.drill: ("Enter",),
        spec.to_a: ("KeyL",),
        spec.to_b: ("Backspace",),
    }
    for name, extra in spec.extra_bindings.items():
        if name in bindings:
            bindings[name] = tuple(bindings[name]) + tuple(extra)
    rules = {
        spec.stack_next: {"direction": "toward_target", "bindings": list(bindings[spec.stack_next])},
        spec.stack_prev: {"direction": "toward_source", "bindings": list(bindings[spec.stack_prev])},
        spec.across_next: {"direction": "toward_target", "bindings": list(bindings[spec.across_next])},
        spec.across_prev: {"direction": "toward_source", "bindings": list(bindings[spec.across_prev])},
        spec.drill: {"direction": "toward_target", "bindings": list(bindings[spec.drill])},
        spec.to_a: {"direction": "toward_target", "bindings": list(bindings[spec.to_a])},
        spec.to_b: {"direction": "toward_target", "bindings": list(bindings[spec.to_b])},
        **standard_rules(extra_bindings=spec.extra_bindings),
    }

    stack_pair = [spec.stack_next, spec.stack_prev]
    across_pair = [spec.across_next, spec.across_prev]
    edges = [
        {"id": "sect-legend", "source": {"literal": spec.root_id},
         "target": {"literal": spec.legend_id}, "rules": stack_pair},
        {"id": "sect-axis", "source": {"literal": spec.legend_id},
         "target": {"literal": spec.axis_id}, "rules": stack_pair},
        {"id": "drill-root", "source": {"literal": spec.root_id},
         "target": {"literal": spec.dim_a[0]}, "rules": [spec.drill]},
        {"id": "drill-legend", "source": {"literal": spec.legend_id},
         "target": {"literal": spec.dim_a[0]}, "rules": [spec.drill]},
        {"id": "drill-axis", "source": {"literal": spec.axis_id},
         "target": {"literal": spec.dim_b[0]}, "rules": [spec.drill]},
        {"id": "lift-legend", "source": {"literal": spec.legend_id},
         "target": {"literal": spec.root_id}, "rules": [spec.to_a]},
        {"id": "lift-axis", "source": {"literal": spec.axis_id},
         "target": {"literal": spec.root_id}, "rules": [spec.to_b]},
    ]
    for i, a in enumerate(spec.dim_a):
        if i < na - 1:
            edges.append({"id": f"stack-{a}", "source": {"literal": a},
                          "target": {"literal": spec.dim_a[i + 1]}, "rules": stack_pair})
        edges.append({"id": f"drill-{a}", "source": {"literal": a},
                      "target": {"literal": cell(i, 0)}, "rules": [spec.drill]})
        edges.append({"id": f"lift-{a}", "source": {"literal": a},
                      "target": {"literal": spec.legend_id}, "rules": [spec.to_a]})
    if spec.circular_within_stack and na > 1:
        edges.append({"id": "stack-wrap", "source": {"literal": spec.dim_a[-1]},
                      "target": {"literal": spec.dim_a[0]}, "rules": stack_pair})
    for j, b in enumerate(spec.dim_b):
        if j < nb - 1:
            edges.append({"id": f"across-{b}", "source": {"literal": b},
                          "target": {"literal": spec.dim_b[j + 1]}, "rules": across_pair})
        edges.append({"id": f"drill-{b}", "source": {"literal": b},
                      "target": {"literal": cell(0, j)}, "rules": [spec.drill]})
        edges.append({"id": f"lift-{b}", "source": {"literal": b},
                      "target": {"literal": spec.axis_id}, "rules": [spec.to_b]})
    for j in range(nb):
        for i in range(na):
            cid = cell(i, j)
            if i < na - 1:
                edges.append({"id": f"cstack-{cid}", "source": {"literal": cid},
                              "target": {"literal": cell(i + 1, j)}, "rules": stack_pair})
        if spec.circular_within_stack and na > 1:
            edges.append({"id": f"cstack-wrap-{spec.dim_b[j]}",
                          "source": {"literal": cell(na - 1, j)},
                          "target": {"literal": cell(0, j)}, "rules": stack_pair})
    for i in range(na):
        for j in range(nb):
            cid = cell(i, j)
            if j < nb - 1:
                edges.append({"id": f"cacross-{cid}", "source": {"literal": cid},
                              "target": {"literal": cell(i, j + 1)}, "rules": across_pair})
            edges.append({"id": f"clift-a-{cid}", "source": {"literal": cid},
                          "target": {"literal": spec.dim_a[i]}, "rules": [spec.to_a]})
            edges.append({"id": f"clift-b-{cid}", "source": {"literal": cid},
                          "target": {"literal": spec.dim_b[j]}, "rules": [spec.to_b]})
    edges.extend(standard_universal_edges())
    return build_graph(nodes, edges, rules,
                       universal_edges=(EXIT_EDGE_ID, RETURN_EDGE_ID),
                       entry=spec.root_id, exit_target=spec.exit_target,
                       drill_rule=spec.drill)


# ---------------------------------------------------------------------------
# Region adjacency (map-style direct relationships)


@dataclass
class AdjacencySpec:
    region_ids: list[str]
    borders: list[tuple[str, str]]   # unordered pairs, no self-pairs
    root_id: str = "root"
    next_neighbor_rule: str = "next-neighbor"
    prev_neighbor_rule: str = "prev-neighbor"
    neighbors_rule: str = "neighbors"  # drill into the neighbor ring
    up_rule: str = "up"
    node_data: dict = field(default_factory=dict)


def build_adjacency(spec: AdjacencySpec) -> Graph:
    """One node per region, neighbor rings via resolver-driven edges.

    Each region's datum carries its ordered neighbor ring (input border
    order). A single pair of universal generic edges cycles rings at
    navigation time: after moving from ``P`` to one of its neighbors,
    next/prev continue around ``P``'s ring; with no usable history they
    enter the current node's own ring. The root is a pseudo-region whose
    ring lists every region, so top-level traversal uses the same
    machinery. No region node is ever duplicated.
    """
    regions = list(spec.region_ids)
    region_set = set(regions)
    rings: dict[str, list[str]] = {r: [] for r in regions}
    for a, b in spec.borders:
        if a not in region_set:
            raise UnknownRegionError(f"border references unknown region {a!r}")
        if b not in region_set:
            raise UnknownRegionError(f"border references unknown region {b!r}")
        if a == b:
            raise UnknownRegionError(f"region {a!r} cannot border itself")
        if b not in rings[a]:
            rings[a].append(b)
        if a not in rings[b]:
            rings[b].append(a)

    nodes = [_node(spec.root_id, role="figure",
                   description=f"{len(regions)} regions.",
                   datum={"neighbors": regions}, overrides=spec.node_data)]
    for r in regions:
        ring = rings[r]
        desc = f"{len(ring)} bordering regions." if ring else "No bordering regions."
        nodes.append(_node(r, role="image", description=desc,
                           datum={"neighbors": ring}, overrides=spec.node_data))

    rules = {
        spec.next_neighbor_rule: {"direction": "toward_target", "bindings": ["ArrowRight"]},
        spec.prev_neighbor_rule: {"direction": "toward_target", "bindings": ["ArrowLeft"]},
        spec.neighbors_rule: {"direction": "toward_target", "bindings": ["Enter"]},
        spec.up_rule: {"direction": "toward_target", "bindings": ["Backspace"]},
        **standard_rules(),
    }
    edges = [{"id": "drill-root", "source": {"literal": spec.root_id},
              "target": {"literal": regions[0]}, "rules": [spec.neighbors_rule]}]
    for r in regions:
        if rings[r]:
            edges.append({"id": f"drill-{r}", "source": {"literal": r},
                          "target": {"literal": rings[r][0]}, "rules": [spec.neighbors_rule]})
        edges.append({"id": f"up-{r}", "source": {"literal": r},
                      "target": {"literal": spec.root_id}, "rules": [spec.up_rule]})
    edges.extend(standard_universal_edges())
    edges.append({"id": "ring-next", "source": {"resolver": "current"},
                  "target": {"resolver": "neighbor-next"}, "rules": [spec.next_neighbor_rule]})
    edges.append({"id": "ring-prev", "source": {"resolver": "current"},
                  "target": {"resolver": "neighbor-prev"}, "rules": [spec.prev_neighbor_rule]})
    return build_graph(
        nodes, edges, rules,
        universal_edges=(EXIT_EDGE_ID, RETURN_EDGE_ID, "ring-next", "ring-prev"),
        entry=spec.root_id, drill_rule=spec.neighbors_rule)


def _ring_of(graph: Graph, node_id: str) -> list:
    datum = graph.datum_of(node_id)
    if not datum:
        return []
    return datum.get("neighbors") or []


def _resolve_neighbor(graph: Graph, ctx: ResolverContext, step: int) -> Optional[str]:
    prev = ctx.previous
    if prev is not None and graph.has_node(prev):
        ring = _ring_of(graph, prev)
        if ctx.current in ring:
            return ring[(ring.index(ctx.current) + step) % len(ring)]
    ring = _ring_of(graph, ctx.current)
    if ring:
        return ring[0] if step > 0 else ring[-1]
    return None


register_resolver("neighbor-next", lambda g, ctx: _resolve_neighbor(g, ctx, 1))
register_resolver("neighbor-prev", lambda g, ctx: _resolve_neighbor(g, ctx, -1))


# ---------------------------------------------------------------------------
# Spec-file dispatch (CLI `build` subcommand)


def build_from_document(doc: dict) -> Graph:
    """Build a graph from a JSON structure spec ({"kind": ..., ...})."""
    kind = doc.get("kind")
    if kind == "list":
        return build_list(ListSpec(
            item_ids=doc["items"],
            circular=doc.get("circular", False),
            forward_rule=doc.get("rules", {}).get("forward", "forward"),
            backward_rule=doc.get("rules", {}).get("backward", "backward"),
            node_data=doc.get("nodeData", {}),
        ))
    if kind == "tree":
        return build_tree(TreeSpec(
            nodes=[(n["id"], n.get("parent")) for n in doc["nodes"]],
            sibling_circular=doc.get("siblingCircular", False),
            node_data=doc.get("nodeData", {}),
        ))
    if kind == "dual-hierarchy":
        return build_dual_hierarchy(DualHierarchySpec(
            dim_a=doc["dimA"],
            dim_b=doc["dimB"],
            cells=doc.get("cells"),
            dim_a_label=doc.get("dimALabel", "group"),
            dim_b_label=doc.get("dimBLabel", "group"),
            circular_within_stack=doc.get("circularWithinStack", True),
            extra_bindings={k: tuple(v) for k, v in doc.get("extraBindings", {}).items()},
            node_data=doc.get("nodeData", {}),
        ))
    if kind == "adjacency":
        return build_adjacency(AdjacencySpec(
            region_ids=doc["regions"],
            borders=[tuple(p) for p in doc["borders"]],
            root_id=doc.get("root", "root"),
            node_data=doc.get("nodeData", {}),
        ))
    raise ValueError(f"unknown structure kind {kind!r}")
