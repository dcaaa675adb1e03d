"""Acceptance suite: one test per release criterion, one PASS line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import json
import random

from navgraph import engine
from navgraph.cli import run_bench
from navgraph.extraction import ExtractionOptions, ingest, make_scatter_scene
from navgraph.fixtures import US_STATE_NEIGHBORS
from navgraph.graph import EXIT_ID
from navgraph.render import plan_render

import oracles
from conftest import FIXTURES, GOLDEN, SCRIPTS, python_subprocess, run_cli

STACKED = FIXTURES / "stacked_bar.json"


def report(line):
    print(f"PASS  {line}")


def simulate(fixture, script, fmt="text"):
    argv = ["simulate", FIXTURES / f"{fixture}.json", SCRIPTS / f"{script}.json"]
    if fmt == "json":
        argv += ["--format", "json"]
    code, out = run_cli(argv)
    assert code == 0
    return out


def test_dual_hierarchy_behavior(stacked_bar_graph):
    # (a) down x3 within any stack returns to the origin cell/group
    for start in ["BPL", "FA Cup", "CL"] + [f"{c}/{t}" for c in ("BPL", "FA Cup", "CL")
                                            for t in ("Arsenal", "Chelsea",
                                                      "Liverpool", "Manchester United")]:
        state, _ = engine.enter(stacked_bar_graph, start)
        for _ in range(3):
            result = engine.move(state, "down")
            assert result.status == "moved", start
        assert state.current == start
    # (b) Enter at a contest focuses a cell in the first (Arsenal) column
    for contest in ("BPL", "FA Cup", "CL"):
        state, _ = engine.enter(stacked_bar_graph, contest)
        assert engine.move(state, "drill").to_node == f"{contest}/Arsenal"
    # (c) KeyL reaches the contest parent, Backspace the team parent, from any cell
    for contest in ("BPL", "FA Cup", "CL"):
        for team in ("Arsenal", "Chelsea", "Liverpool", "Manchester United"):
            state, _ = engine.enter(stacked_bar_graph, f"{contest}/{team}")
            assert engine.move(state, "up-to-contest").to_node == contest
            state, _ = engine.enter(stacked_bar_graph, f"{contest}/{team}")
            assert engine.move(state, "up-to-axis").to_node == team
    # golden simulate traces, exact match
    for script in ("stack_cycle", "cell_parents"):
        assert simulate("stacked_bar", script) == \
            (GOLDEN / f"stacked_bar__{script}.txt").read_text()
    report("dual-hierarchy: circular stacks, first-column drill, dual parents, golden traces")


def test_generic_edge_undo_property(all_fixture_graphs):
    # 1,000 random walks of length <= 50 per fixture; undo after every
    # successful move restores the prior node; undo at depth 0 is blocked.
    violations = 0
    for name, g in all_fixture_graphs.items():
        rng = random.Random(hash(name) & 0xFFFF)
        rules = [r for r in g.rules if r not in ("exit", "undo")]
        for _ in range(1000):
            state, _ = engine.enter(g)
            assert engine.undo(state).status == "blocked"  # depth 0
            for _ in range(rng.randint(1, 50)):
                prior = state.current
                result = engine.move(state, rng.choice(rules))
                if result.status != "moved":
                    continue
                undone = engine.undo(state)
                if undone.status != "moved" or state.current != prior:
                    violations += 1
                    break
                redo = engine.move(state, result.rule)
                assert redo.to_node == result.to_node  # deterministic resume
    assert violations == 0
    report("generic edges: 1,000 undo-checked random walks per fixture, zero violations")


def test_universal_exit(all_fixture_graphs):
    for name, g in all_fixture_graphs.items():
        for node_id in g.nodes:
            state, _ = engine.enter(g, node_id)
            result = engine.move(state, "exit")
            assert result.status == "exited", (name, node_id)
    report("universal exit: rule 'exit' exits from every node of every fixture")


def test_adjacency_efficiency(us_states_graph):
    regions = len(US_STATE_NEIGHBORS)
    assert us_states_graph.node_count() == regions + 1  # regions + root scaffold
    duplicated_tree = oracles.tree_equivalent_node_count(
        len(v) for v in US_STATE_NEIGHBORS.values())
    assert us_states_graph.node_count() < duplicated_tree
    for state_name, neighbors in US_STATE_NEIGHBORS.items():
        ring = us_states_graph.datum_of(state_name)["neighbors"]
        assert len(ring) == len(set(ring))
        assert set(ring) == set(neighbors), state_name
    report(f"adjacency: {us_states_graph.node_count()} nodes vs {duplicated_tree} "
           "duplicated-tree nodes; rings == border list")


def test_extraction_equivalence():
    scene = make_scatter_scene(406)
    flat = ingest(scene, ExtractionOptions("flat"))
    state, _ = engine.enter(flat)
    moves = 0
    while engine.move(state, "forward").status == "moved":
        moves += 1
    assert moves == flat.node_count() - 1  # serial chain, end to end

    grouped = ingest(scene, ExtractionOptions("grouped"))
    state, _ = engine.enter(grouped)
    to_legend = 0
    while state.current != "legend":
        assert engine.move(state, "forward").status == "moved"
        to_legend += 1
        assert to_legend <= 3
    state, _ = engine.enter(grouped, "marks-group")
    assert engine.move(state, "drill").to_node == "m0"
    seen = {"m0"}
    while True:
        result = engine.move(state, "forward")
        if result.status != "moved":
            break
        seen.add(result.to_node)
    assert seen == {f"m{k}" for k in range(406)}
    report(f"extraction: flat chain walked in {moves} moves; grouped reaches legend "
           f"in {to_legend} moves with all 406 marks drillable")


def test_performance_scaling():
    ladder = run_bench([1000, 5000, 10000, 20000], repeats=10)
    r2 = ladder["fit"]["r2"]
    assert r2 >= 0.98, ladder
    big = run_bench([20300], repeats=10)
    median_ms = big["rows"][0]["ingest_ms"]
    assert median_ms < 50.0, big
    report(f"performance: 20,300-mark ingest median {median_ms:.1f}ms (<50ms); "
           f"linear fit r2={r2:.4f} (>=0.98)")


def test_on_demand_rendering(all_fixture_graphs):
    rng = random.Random(4)
    for name, g in all_fixture_graphs.items():
        rules = list(g.rules)
        for _ in range(40):
            state, entered = engine.enter(g)
            plan = plan_render(g, entered)
            live = len(plan.additions) - len(plan.removals)
            for _ in range(rng.randint(1, 30)):
                if not state.active:
                    break
                result = engine.move(state, rng.choice(rules))
                plan = plan_render(g, result)
                live += len(plan.additions) - len(plan.removals)
            assert live == (1 if state.active else 0), name
    report("on-demand rendering: net live nodes == 1 during any script, 0 after exit")


def test_diagram_fixtures():
    assert simulate("set_diagram", "set_left_blocked") == \
        (GOLDEN / "set_diagram__set_left_blocked.txt").read_text()
    assert simulate("set_diagram", "set_drill_up") == \
        (GOLDEN / "set_diagram__set_drill_up.txt").read_text()
    assert simulate("parallel_vectors", "vectors_walk") == \
        (GOLDEN / "parallel_vectors__vectors_walk.txt").read_text()
    lines = simulate("set_diagram", "set_left_blocked").splitlines()
    assert "blocked" in lines[1]
    drill_lines = simulate("set_diagram", "set_drill_up").splitlines()
    assert "Set A->A only" in drill_lines[1]      # exclusive portion via drill
    assert "A only->Set A" in drill_lines[2]      # Escape back toward the root
    assert "Set A->diagram" in drill_lines[3]     # Backspace reaches the root
    report("diagram fixtures: non-circular inclusion level, exclusive-portion drill, "
           "drill-up to root; golden traces exact")


def test_determinism_across_runs():
    pairs = [("stacked_bar", "stack_cycle"), ("stacked_bar", "cell_parents"),
             ("set_diagram", "set_drill_up"), ("us_states", "us_ring")]
    for fixture, script in pairs:
        texts = {simulate(fixture, script) for _ in range(5)}
        transcripts = {simulate(fixture, script, fmt="json") for _ in range(5)}
        assert len(texts) == 1 and len(transcripts) == 1, (fixture, script)
    # and across real process boundaries, protocol transcript included
    script = json.loads((SCRIPTS / "stack_cycle.json").read_text())
    requests = [{"id": "1", "op": "init", "args": {"graph": str(STACKED)}},
                {"id": "2", "op": "enter", "args": {}}]
    for i, step in enumerate(script["steps"]):
        requests.append({"id": str(i + 3), "op": "input", "args": {"token": step["value"]}})
    feed = "".join(json.dumps(r) + "\n" for r in requests)
    outputs = set()
    for _ in range(5):
        proc = python_subprocess(["serve", "--stdio"], input_text=feed)
        assert proc.returncode == 0
        outputs.add(proc.stdout)
    assert len(outputs) == 1
    report("determinism: byte-identical simulate output and protocol transcripts "
           "across 5 runs per pair")
