"""Navigation graph substrate: nodes, edges, rules, and dynamic endpoints.

A graph is immutable once built. Nodes carry render geometry, a semantics
payload, and an opaque datum; edges carry two endpoints (literal node ids
or named resolver functions) plus the navigation rules that activate them.
Universal edges are stored once at graph level and apply to every node.

Internally the graph is columnar (parallel lists per field) so that bulk
construction of large graphs stays cheap; ``Node``/``Edge`` views are
materialized on demand. Navigation indexes (id -> position, per-node edge
lists) are built lazily on first use and cached.
"""

from __future__ import annotations

import itertools
import json
import threading
from collections.abc import Mapping, Sequence
from typing import Callable, NamedTuple, Optional

from .errors import (
    DanglingEdgeRefError,
    DuplicateIdError,
    GraphParseError,
    ReservedIdError,
    UnknownEntryError,
    UnknownResolverError,
)

# Reserved sentinel: any edge may target it, nobody may declare it.
EXIT_ID = "::exit"

TOWARD_TARGET = "toward_target"
TOWARD_SOURCE = "toward_source"
_DIRECTIONS = (TOWARD_TARGET, TOWARD_SOURCE)

DEFAULT_STYLE_TOKEN = "dn-focus"

SEMANTIC_ROLES = ("image", "button", "link", "group", "listitem", "text", "figure")


class Rule(NamedTuple):
    name: str
    direction: str
    bindings: tuple[str, ...] = ()


class Endpoint(NamedTuple):
    kind: str  # "literal" | "resolver"
    ref: str


class Semantics(NamedTuple):
    role: str
    label: str
    description: str = ""
    external_ref: Optional[str] = None


class RenderSpec(NamedTuple):
    geometry: Optional[dict]  # {"kind": "rect"|"point"|"path", ...}
    style_token: str = DEFAULT_STYLE_TOKEN
    semantics: Optional["Semantics"] = None  # rides along so hosts need no graph access


class Node(NamedTuple):
    id: str
    edges: tuple[str, ...]
    render: Optional[RenderSpec]
    semantics: Semantics
    datum: Optional[dict]


class Edge(NamedTuple):
    id: str
    source: Endpoint
    target: Endpoint
    rules: tuple[str, ...]


class ResolverContext(NamedTuple):
    current: str
    previous: Optional[str] = None
    entry: Optional[str] = None


class Diagnostic(NamedTuple):
    severity: str  # "error" | "warning"
    code: str
    subject: str
    message: str


# ---------------------------------------------------------------------------
# Resolver registry

Resolver = Callable[["Graph", ResolverContext], Optional[str]]

_RESOLVERS: dict[str, Resolver] = {}
_first_child_guard = threading.local()


def register_resolver(name: str, fn: Resolver) -> None:
    """Register a named endpoint resolver (before building graphs that use it)."""
    _RESOLVERS[name] = fn


def resolver_names() -> frozenset[str]:
    return frozenset(_RESOLVERS)


def _resolve_current(graph: Graph, ctx: ResolverContext) -> Optional[str]:
    return ctx.current


def _resolve_previous(graph: Graph, ctx: ResolverContext) -> Optional[str]:
    return ctx.previous


def _resolve_entry(graph: Graph, ctx: ResolverContext) -> Optional[str]:
    return ctx.entry if ctx.entry is not None else graph.entry


def _resolve_exit(graph: Graph, ctx: ResolverContext) -> Optional[str]:
    return EXIT_ID


def _resolve_first_child(graph: Graph, ctx: ResolverContext) -> Optional[str]:
    # Guard against self-recursion when a drill-rule edge itself uses this
    # resolver: such an edge cannot define its own destination.
    if getattr(_first_child_guard, "active", False):
        return None
    _first_child_guard.active = True
    try:
        found = applicable_edges(graph, ctx.current, graph.drill_rule, ctx)
    except Exception:
        return None
    finally:
        _first_child_guard.active = False
    return found[0][1] if found else None


register_resolver("current", _resolve_current)
register_resolver("previous", _resolve_previous)
register_resolver("entry", _resolve_entry)
register_resolver("exit", _resolve_exit)
register_resolver("first-child", _resolve_first_child)


# ---------------------------------------------------------------------------
# Lazy mapping views over the columnar storage


class _NodeView(Mapping):
    __slots__ = ("_g",)

    def __init__(self, graph: Graph):
        self._g = graph

    def __getitem__(self, node_id: str) -> Node:
        idx = self._g._node_index()[node_id]
        return self._g._node_at(idx)

    def __iter__(self):
        return iter(self._g._ids)

    def __len__(self):
        return len(self._g._ids)


class _EdgeView(Mapping):
    __slots__ = ("_g",)

    def __init__(self, graph: Graph):
        self._g = graph

    def __getitem__(self, edge_id: str) -> Edge:
        idx = self._g._edge_index()[edge_id]
        return self._g._edge_at(idx)

    def __iter__(self):
        return iter(self._g._e_ids)

    def __len__(self):
        return len(self._g._e_ids)


class Graph:
    """Immutable navigation graph.

    Build through :func:`build_graph` (or a structure builder); direct
    construction is internal. ``nodes`` and ``edges`` are id-keyed mapping
    views; iteration order is declaration order.
    """

    __slots__ = (
        "entry",
        "exit_target",
        "drill_rule",
        "rules",
        "universal_edges",
        "nodes",
        "edges",
        "_ids",
        "_roles",
        "_labels",
        "_descs",
        "_exts",
        "_renders",
        "_styles",
        "_datums",
        "_e_ids",
        "_e_src_lit",
        "_e_src_ref",
        "_e_tgt_lit",
        "_e_tgt_ref",
        "_e_rules",
        "_nindex",
        "_eindex",
        "_nedges",
        "_uidx",
    )

    def __init__(self, *, entry, exit_target, drill_rule, rules, universal_edges,
                 ids, roles, labels, descs, exts, renders, styles, datums,
                 e_ids, e_src_lit, e_src_ref, e_tgt_lit, e_tgt_ref, e_rules,
                 _validated=False):
        if not _validated:
            raise TypeError("use build_graph() to construct a Graph")
        self.entry = entry
        self.exit_target = exit_target
        self.drill_rule = drill_rule
        self.rules = rules
        self.universal_edges = universal_edges
        self._ids = ids
        self._roles = roles
        self._labels = labels
        self._descs = descs
        self._exts = exts
        self._renders = renders
        self._styles = styles
        self._datums = datums
        self._e_ids = e_ids
        self._e_src_lit = e_src_lit
        self._e_src_ref = e_src_ref
        self._e_tgt_lit = e_tgt_lit
        self._e_tgt_ref = e_tgt_ref
        self._e_rules = e_rules
        self._nindex = None
        self._eindex = None
        self._nedges = None
        self._uidx = None
        self.nodes = _NodeView(self)
        self.edges = _EdgeView(self)

    # -- lazy navigation indexes -------------------------------------------

    def _node_index(self) -> dict[str, int]:
        idx = self._nindex
        if idx is None:
            idx = {nid: i for i, nid in enumerate(self._ids)}
            self._nindex = idx
        return idx

    def _edge_index(self) -> dict[str, int]:
        idx = self._eindex
        if idx is None:
            idx = {eid: i for i, eid in enumerate(self._e_ids)}
            self._eindex = idx
        return idx

    def _node_edges_idx(self) -> list[list[int]]:
        ne = self._nedges
        if ne is None:
            nindex = self._node_index()
            ne = [[] for _ in self._ids]
            universal = set(self._universal_idx())
            for ei in range(len(self._e_ids)):
                if ei in universal:
                    continue
                if self._e_src_lit[ei]:
                    ne[nindex[self._e_src_ref[ei]]].append(ei)
                if self._e_tgt_lit[ei]:
                    tgt = self._e_tgt_ref[ei]
                    if tgt != EXIT_ID and (not self._e_src_lit[ei] or tgt != self._e_src_ref[ei]):
                        ne[nindex[tgt]].append(ei)
            self._nedges = ne
        return ne

    def _universal_idx(self) -> tuple[int, ...]:
        u = self._uidx
        if u is None:
            eindex = self._edge_index()
            u = tuple(eindex[eid] for eid in self.universal_edges)
            self._uidx = u
        return u

    # -- view materialization ------------------------------------------------

    def _geometry_at(self, idx: int) -> Optional[dict]:
        geo = self._renders[idx]
        if geo is not None and "kind" not in geo:
            # Deferred raw scene mark; normalized on first access and
            # cached back into the column.
            geo = _geometry_from_mark(geo)
            self._renders[idx] = geo
        return geo

    def _node_at(self, idx: int) -> Node:
        semantics = Semantics(self._roles[idx], self._labels[idx],
                              self._descs[idx], self._exts[idx])
        geo = self._geometry_at(idx)
        render = None if geo is None else RenderSpec(geo, self._styles[idx], semantics)
        return Node(
            self._ids[idx],
            tuple(self._e_ids[ei] for ei in self._node_edges_idx()[idx]),
            render,
            semantics,
            self._datums[idx],
        )

    def _edge_at(self, idx: int) -> Edge:
        src = Endpoint("literal" if self._e_src_lit[idx] else "resolver", self._e_src_ref[idx])
        tgt = Endpoint("literal" if self._e_tgt_lit[idx] else "resolver", self._e_tgt_ref[idx])
        return Edge(self._e_ids[idx], src, tgt, self._e_rules[idx])

    # -- misc -----------------------------------------------------------------

    def node_count(self) -> int:
        return len(self._ids)

    def edge_count(self) -> int:
        return len(self._e_ids)

    def has_node(self, node_id: str) -> bool:
        return node_id in self._node_index()

    def label_of(self, node_id: str) -> str:
        return self._labels[self._node_index()[node_id]]

    def datum_of(self, node_id: str) -> Optional[dict]:
        return self._datums[self._node_index()[node_id]]

    def __repr__(self):
        return f"<Graph nodes={len(self._ids)} edges={len(self._e_ids)} entry={self.entry!r}>"


def _geometry_from_mark(mark: dict) -> dict:
    bounds = mark["bounds"]
    x, y, w, h = bounds["x"], bounds["y"], bounds["w"], bounds["h"]
    if min(x, y, w, h) < 0:
        raise ValueError(f"mark {mark.get('markId')!r} has negative bounds")
    if mark.get("markType") == "symbol":
        return {"kind": "point", "x": x + w / 2, "y": y + h / 2}
    return {"kind": "rect", "x": x, "y": y, "w": w, "h": h}


# ---------------------------------------------------------------------------
# Bulk column container used by the extraction fast path


class NodeTable(Sequence):
    """Column-oriented batch of node declarations (extraction fast path)."""

    __slots__ = ("ids", "roles", "labels", "descs", "exts", "renders", "styles", "datums")

    def __init__(self, ids, roles, labels, descs, exts, renders, styles, datums):
        self.ids = ids
        self.roles = roles
        self.labels = labels
        self.descs = descs
        self.exts = exts
        self.renders = renders
        self.styles = styles
        self.datums = datums

    def __len__(self):
        return len(self.ids)

    def __getitem__(self, i):
        semantics = Semantics(self.roles[i], self.labels[i], self.descs[i], self.exts[i])
        geo = self.renders[i]
        if geo is not None and "kind" not in geo:
            geo = _geometry_from_mark(geo)
        render = None if geo is None else RenderSpec(geo, self.styles[i], semantics)
        return Node(self.ids[i], (), render, semantics, self.datums[i])


class EdgeTable(Sequence):
    """Column-oriented batch of edge declarations (extraction fast path)."""

    __slots__ = ("ids", "src_lit", "src_ref", "tgt_lit", "tgt_ref", "rules")

    def __init__(self, ids, src_lit, src_ref, tgt_lit, tgt_ref, rules):
        self.ids = ids
        self.src_lit = src_lit
        self.src_ref = src_ref
        self.tgt_lit = tgt_lit
        self.tgt_ref = tgt_ref
        self.rules = rules

    def __len__(self):
        return len(self.ids)

    def __getitem__(self, i):
        return Edge(
            self.ids[i],
            Endpoint("literal" if self.src_lit[i] else "resolver", self.src_ref[i]),
            Endpoint("literal" if self.tgt_lit[i] else "resolver", self.tgt_ref[i]),
            self.rules[i],
        )


# ---------------------------------------------------------------------------
# Construction


def _normalize_rules(rules) -> dict[str, Rule]:
    out: dict[str, Rule] = {}
    if isinstance(rules, Mapping):
        items = []
        for name, val in rules.items():
            if isinstance(val, Rule):
                items.append(val._replace(name=name))
            else:
                items.append(Rule(name, val["direction"], tuple(val.get("bindings", ()))))
    else:
        items = []
        for val in rules:
            if isinstance(val, Rule):
                items.append(val)
            else:
                items.append(Rule(val["name"], val["direction"], tuple(val.get("bindings", ()))))
    for rule in items:
        if not rule.name:
            raise ValueError("rule name must be a non-empty token")
        if rule.direction not in _DIRECTIONS:
            raise ValueError(f"rule {rule.name!r}: direction must be one of {_DIRECTIONS}")
        if rule.name in out:
            raise DuplicateIdError(f"rule {rule.name!r} declared twice")
        out[rule.name] = rule
    return out


def _endpoint_cols(decl) -> tuple[bool, str]:
    if isinstance(decl, Endpoint):
        return decl.kind == "literal", decl.ref
    if isinstance(decl, Mapping):
        if "literal" in decl:
            return True, decl["literal"]
        if "resolver" in decl:
            return False, decl["resolver"]
    raise ValueError(f"endpoint must be {{'literal': id}} or {{'resolver': name}}, got {decl!r}")


def build_graph(nodes, edges, rules, universal_edges=(), *, entry,
                exit_target=None, drill_rule="drill") -> Graph:
    """Assemble and validate a :class:`Graph`.

    ``nodes``/``edges`` accept declaration dicts (the JSON file shapes) or
    the column tables produced by extraction; ``rules`` accepts a
    name-keyed mapping or an iterable of :class:`Rule`. All cross
    references are checked; the call fails rather than returning a
    partially valid graph.
    """
    rule_map = _normalize_rules(rules)

    if isinstance(nodes, NodeTable):
        ids, roles, labels = nodes.ids, nodes.roles, nodes.labels
        descs, exts, renders = nodes.descs, nodes.exts, nodes.renders
        styles, datums = nodes.styles, nodes.datums
    else:
        ids, roles, labels, descs, exts, renders, styles, datums = [], [], [], [], [], [], [], []
        for decl in nodes:
            if isinstance(decl, Node):
                sem = decl.semantics
                decl = {"id": decl.id, "semantics": sem._asdict(), "datum": decl.datum,
                        "render": None if decl.render is None else
                        dict(decl.render.geometry or {}, styleToken=decl.render.style_token)}
            nid = decl["id"]
            if not isinstance(nid, str) or not nid:
                raise ValueError(f"node id must be a non-empty string, got {nid!r}")
            sem = decl.get("semantics") or {}
            ids.append(nid)
            roles.append(sem.get("role", "text"))
            labels.append(sem.get("label", nid))
            descs.append(sem.get("description", ""))
            exts.append(sem.get("externalRef") or sem.get("external_ref"))
            render = decl.get("render")
            if render is None:
                renders.append(None)
                styles.append(DEFAULT_STYLE_TOKEN)
            else:
                kind = render.get("kind")
                if kind not in ("rect", "point", "path"):
                    raise ValueError(f"node {nid!r}: render kind must be rect, point, or path")
                if kind == "path" and not render.get("d"):
                    raise ValueError(f"node {nid!r}: path geometry needs non-empty 'd' text")
                styles.append(render.get("styleToken", DEFAULT_STYLE_TOKEN))
                renders.append({k: v for k, v in render.items() if k != "styleToken"})
            datums.append(decl.get("datum"))

    if isinstance(edges, EdgeTable):
        e_ids = edges.ids
        e_src_lit, e_src_ref = edges.src_lit, edges.src_ref
        e_tgt_lit, e_tgt_ref = edges.tgt_lit, edges.tgt_ref
        e_rules = edges.rules
    else:
        e_ids, e_src_lit, e_src_ref, e_tgt_lit, e_tgt_ref, e_rules = [], [], [], [], [], []
        for decl in edges:
            if isinstance(decl, Edge):
                decl = {"id": decl.id, "source": decl.source, "target": decl.target,
                        "rules": decl.rules}
            eid = decl["id"]
            if not isinstance(eid, str) or not eid:
                raise ValueError(f"edge id must be a non-empty string, got {eid!r}")
            sk, sr = _endpoint_cols(decl["source"])
            tk, tr = _endpoint_cols(decl["target"])
            e_ids.append(eid)
            e_src_lit.append(sk)
            e_src_ref.append(sr)
            e_tgt_lit.append(tk)
            e_tgt_ref.append(tr)
            e_rules.append(tuple(decl["rules"]))

    # Batch validation: set arithmetic over whole columns.
    id_set = set(ids)
    if len(id_set) != len(ids):
        seen = set()
        dup = next(i for i in ids if i in seen or seen.add(i))
        raise DuplicateIdError(f"node id {dup!r} declared twice")
    if EXIT_ID in id_set:
        raise ReservedIdError(f"{EXIT_ID!r} is reserved for the exit sentinel")

    eid_set = set(e_ids)
    if len(eid_set) != len(e_ids):
        seen = set()
        dup = next(i for i in e_ids if i in seen or seen.add(i))
        raise DuplicateIdError(f"edge id {dup!r} declared twice")

    known = id_set | {EXIT_ID}
    lit_refs = set(itertools.compress(e_src_ref, e_src_lit))
    lit_refs.update(itertools.compress(e_tgt_ref, e_tgt_lit))
    if not lit_refs <= known:
        bad = sorted(lit_refs - known)[0]
        raise DanglingEdgeRefError(f"edge endpoint references unknown node {bad!r}")

    registered = resolver_names()
    res_refs = set(itertools.compress(e_src_ref, map(_not, e_src_lit)))
    res_refs.update(itertools.compress(e_tgt_ref, map(_not, e_tgt_lit)))
    if not res_refs <= registered:
        bad = sorted(res_refs - registered)[0]
        raise UnknownResolverError(f"edge endpoint references unregistered resolver {bad!r}")

    rule_names = set(rule_map)
    for rtuple in set(e_rules):
        if not rtuple:
            raise ValueError("edge rules list must be non-empty")
        if not set(rtuple) <= rule_names:
            bad = sorted(set(rtuple) - rule_names)[0]
            raise DanglingEdgeRefError(f"edge references unknown rule {bad!r}")

    universal = tuple(universal_edges)
    for ueid in universal:
        if ueid not in eid_set:
            raise DanglingEdgeRefError(f"universal edge {ueid!r} is not a declared edge")

    if entry not in id_set:
        raise UnknownEntryError(f"entry {entry!r} names no declared node")

    # Tables hand over column ownership (no defensive copies); detach their
    # attributes so any later use of the consumed table fails fast instead
    # of silently aliasing the "immutable" graph.
    if isinstance(nodes, NodeTable):
        for attr in NodeTable.__slots__:
            setattr(nodes, attr, None)
    if isinstance(edges, EdgeTable):
        for attr in EdgeTable.__slots__:
            setattr(edges, attr, None)

    return Graph(
        entry=entry, exit_target=exit_target, drill_rule=drill_rule,
        rules=rule_map, universal_edges=universal,
        ids=ids, roles=roles, labels=labels, descs=descs,
        exts=exts, renders=renders, styles=styles, datums=datums,
        e_ids=e_ids, e_src_lit=e_src_lit, e_src_ref=e_src_ref,
        e_tgt_lit=e_tgt_lit, e_tgt_ref=e_tgt_ref, e_rules=e_rules,
        _validated=True,
    )


def _not(x):
    return not x


# ---------------------------------------------------------------------------
# Navigation primitives


def resolve_endpoint(graph: Graph, endpoint, ctx: ResolverContext) -> Optional[str]:
    """Evaluate an endpoint to a node id (or ``None`` for no result)."""
    if isinstance(endpoint, Endpoint):
        lit, ref = endpoint.kind == "literal", endpoint.ref
    else:
        lit, ref = endpoint
    if lit:
        return ref
    fn = _RESOLVERS.get(ref)
    if fn is None:
        raise UnknownResolverError(f"resolver {ref!r} is not registered")
    return fn(graph, ctx)


def applicable_edges(graph: Graph, node_id: str, rule_name: str,
                     ctx: Optional[ResolverContext] = None) -> list[tuple[str, str]]:
    """Edges at ``node_id`` that ``rule_name`` can traverse, in priority order.

    Scans the node's local edges in declaration order, then the universal
    edges in declaration order. An edge qualifies for a toward-target rule
    when its source resolves to ``node_id`` (destination = resolved
    target), mirrored for toward-source. Entries whose destination fails
    to resolve are omitted. Returns ``(edge_id, destination)`` pairs.
    """
    if ctx is None:
        ctx = ResolverContext(node_id, None, graph.entry)
    rule = graph.rules[rule_name]
    toward_target = rule.direction == TOWARD_TARGET
    idx = graph._node_index()[node_id]
    out = []
    resolvers = _RESOLVERS
    node_set = graph._node_index()
    src_lit, src_ref = graph._e_src_lit, graph._e_src_ref
    tgt_lit, tgt_ref = graph._e_tgt_lit, graph._e_tgt_ref
    for ei in itertools.chain(graph._node_edges_idx()[idx], graph._universal_idx()):
        if rule_name not in graph._e_rules[ei]:
            continue
        if toward_target:
            a_lit, a_ref = src_lit[ei], src_ref[ei]
            b_lit, b_ref = tgt_lit[ei], tgt_ref[ei]
        else:
            a_lit, a_ref = tgt_lit[ei], tgt_ref[ei]
            b_lit, b_ref = src_lit[ei], src_ref[ei]
        anchor = a_ref if a_lit else resolvers[a_ref](graph, ctx)
        if anchor != node_id:
            continue
        dest = b_ref if b_lit else resolvers[b_ref](graph, ctx)
        if dest is None:
            continue
        if dest != EXIT_ID and dest not in node_set:
            continue
        out.append((graph._e_ids[ei], dest))
    return out


# ---------------------------------------------------------------------------
# Validation diagnostics


def reachable_nodes(graph: Graph) -> set[str]:
    """Nodes reachable from entry under any rule.

    Searches over (node, previous) pairs — the full context visible to
    endpoint resolvers — so history-dependent edges count too.
    """
    rule_names = list(graph.rules)
    start = (graph.entry, None)
    seen_pairs = {start}
    reachable = {graph.entry}
    frontier = [start]
    while frontier:
        nid, prev = frontier.pop()
        ctx = ResolverContext(nid, prev, graph.entry)
        for rule_name in rule_names:
            for _, dest in applicable_edges(graph, nid, rule_name, ctx):
                if dest == EXIT_ID:
                    continue
                pair = (dest, nid)
                if pair not in seen_pairs:
                    seen_pairs.add(pair)
                    reachable.add(dest)
                    frontier.append(pair)
    return reachable


def validate(graph: Graph) -> list[Diagnostic]:
    """Static diagnostics for a built graph (never raises)."""
    diags: list[Diagnostic] = []
    rule_names = list(graph.rules)

    reachable = reachable_nodes(graph)
    for nid in graph._ids:
        if nid not in reachable:
            diags.append(Diagnostic("warning", "unreachable", nid,
                                    f"node {nid!r} is not reachable from entry under any rule"))

    for nid in graph._ids:
        if not any(dest != EXIT_ID
                   for rule_name in rule_names
                   for _, dest in applicable_edges(graph, nid, rule_name)):
            diags.append(Diagnostic("warning", "dead-end", nid,
                                    f"node {nid!r} has no outgoing edges other than exit"))

    token_owners: dict[str, str] = {}
    for rule in graph.rules.values():
        for token in rule.bindings:
            owner = token_owners.get(token)
            if owner is not None and owner != rule.name:
                diags.append(Diagnostic("warning", "conflicting-binding", token,
                                        f"token {token!r} bound by rules {owner!r} and {rule.name!r}"))
            else:
                token_owners[token] = rule.name

    for ei in range(len(graph._e_ids)):
        if (graph._e_src_lit[ei] and graph._e_tgt_lit[ei]
                and graph._e_src_ref[ei] == graph._e_tgt_ref[ei]):
            diags.append(Diagnostic("warning", "self-loop", graph._e_ids[ei],
                                    f"edge {graph._e_ids[ei]!r} loops {graph._e_src_ref[ei]!r} "
                                    "onto itself under both directions"))

    for ueid in graph.universal_edges:
        ei = graph._edge_index()[ueid]
        if graph._e_src_lit[ei] and graph._e_tgt_lit[ei]:
            diags.append(Diagnostic("warning", "universal-literal", ueid,
                                    f"universal edge {ueid!r} has two literal endpoints and "
                                    "cannot apply to every node"))

    for idx, label in enumerate(graph._labels):
        if not label:
            diags.append(Diagnostic("warning", "missing-label", graph._ids[idx],
                                    f"node {graph._ids[idx]!r} has an empty semantics label"))

    return diags


# ---------------------------------------------------------------------------
# Serialization (canonical UTF-8 JSON, sorted keys)


def to_document(graph: Graph) -> dict:
    """Plain-JSON document for a graph (inverse of the build-decl shapes)."""
    nodes = []
    for i, nid in enumerate(graph._ids):
        sem = {"role": graph._roles[i], "label": graph._labels[i],
               "description": graph._descs[i]}
        if graph._exts[i] is not None:
            sem["externalRef"] = graph._exts[i]
        node = {"id": nid, "semantics": sem}
        geo = graph._geometry_at(i)
        if geo is not None:
            node["render"] = dict(geo, styleToken=graph._styles[i])
        if graph._datums[i] is not None:
            node["datum"] = graph._datums[i]
        nodes.append(node)
    edges = []
    for i, eid in enumerate(graph._e_ids):
        edges.append({
            "id": eid,
            "source": {"literal": graph._e_src_ref[i]} if graph._e_src_lit[i]
                      else {"resolver": graph._e_src_ref[i]},
            "target": {"literal": graph._e_tgt_ref[i]} if graph._e_tgt_lit[i]
                      else {"resolver": graph._e_tgt_ref[i]},
            "rules": list(graph._e_rules[i]),
        })
    return {
        "entry": graph.entry,
        "exitTarget": graph.exit_target,
        "drillRule": graph.drill_rule,
        "rules": {r.name: {"direction": r.direction, "bindings": list(r.bindings)}
                  for r in graph.rules.values()},
        "nodes": nodes,
        "edges": edges,
        "universalEdges": list(graph.universal_edges),
    }


def serialize(graph: Graph) -> str:
    return json.dumps(to_document(graph), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def from_document(doc: dict) -> Graph:
    try:
        nodes = doc["nodes"]
        edges = doc["edges"]
        rules = doc["rules"]
        entry = doc["entry"]
    except (KeyError, TypeError) as exc:
        raise GraphParseError(f"graph document is missing required key: {exc}") from None
    return build_graph(
        nodes, edges, rules,
        universal_edges=doc.get("universalEdges", ()),
        entry=entry,
        exit_target=doc.get("exitTarget"),
        drill_rule=doc.get("drillRule", "drill"),
    )


def deserialize(text: str) -> Graph:
    if not text.strip():
        raise GraphParseError("empty graph document")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise GraphParseError("graph document must be a JSON object")
    return from_document(doc)


def save(graph: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(graph))


def load(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return deserialize(fh.read())
