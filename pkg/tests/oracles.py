"""Independent oracles used by the test suite.

Everything here works from a graph's serialized JSON document (plain
dicts), not from library objects, so it cannot share bugs with the
implementation under test.
"""

EXIT = "::exit"


def doc_rules(doc):
    return {name: rule["direction"] for name, rule in doc["rules"].items()}


def doc_edges_at(doc):
    """node id -> list of (edge, direction_hint) usable from that node."""
    at = {n["id"]: [] for n in doc["nodes"]}
    for edge in doc["edges"]:
        src, tgt = edge["source"], edge["target"]
        if "literal" in src:
            at[src["literal"]].append(edge)
        if "literal" in tgt and tgt["literal"] != EXIT and "literal" in src:
            if tgt["literal"] != src["literal"]:
                at[tgt["literal"]].append(edge)
        # resolver-source edges handled separately (apply everywhere)
    return at


def destinations(doc, node, prev):
    """All one-move destinations from (node, prev), by direct JSON walk."""
    rules = doc_rules(doc)
    neighbors_of = {n["id"]: (n.get("datum") or {}).get("neighbors") or []
                    for n in doc["nodes"]}
    out = set()

    def resolve(endpoint):
        if "literal" in endpoint:
            return endpoint["literal"]
        name = endpoint["resolver"]
        if name == "current":
            return node
        if name == "previous":
            return prev
        if name == "exit":
            return EXIT
        if name == "entry":
            return doc["entry"]
        if name in ("neighbor-next", "neighbor-prev"):
            step = 1 if name == "neighbor-next" else -1
            if prev is not None and node in neighbors_of.get(prev, []):
                ring = neighbors_of[prev]
                return ring[(ring.index(node) + step) % len(ring)]
            ring = neighbors_of.get(node) or []
            if ring:
                return ring[0] if step > 0 else ring[-1]
            return None
        return None

    for edge in doc["edges"]:
        for rule_name in edge["rules"]:
            direction = rules[rule_name]
            if direction == "toward_target":
                anchor, dest_ep = edge["source"], edge["target"]
            else:
                anchor, dest_ep = edge["target"], edge["source"]
            if resolve(anchor) != node:
                continue
            dest = resolve(dest_ep)
            if dest is not None:
                out.add(dest)
    return out


def reachable(doc):
    """BFS over (node, previous) pairs straight off the JSON document."""
    entry = doc["entry"]
    seen_pairs = {(entry, None)}
    seen = {entry}
    frontier = [(entry, None)]
    node_ids = {n["id"] for n in doc["nodes"]}
    while frontier:
        node, prev = frontier.pop()
        for dest in destinations(doc, node, prev):
            if dest == EXIT or dest not in node_ids:
                continue
            pair = (dest, node)
            if pair not in seen_pairs:
                seen_pairs.add(pair)
                seen.add(dest)
                frontier.append(pair)
    return seen


def tree_equivalent_node_count(region_degrees):
    """Node count a duplicated-tree rendering would need: root + per region
    one node plus one duplicate per bordering region."""
    return 1 + sum(1 + degree for degree in region_degrees)
