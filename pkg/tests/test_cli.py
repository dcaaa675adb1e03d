import json

import pytest

from navgraph.cli import build_parser, main

from conftest import FIXTURES, GOLDEN, REPO, SCRIPTS, run_cli

STACKED = FIXTURES / "stacked_bar.json"


# -- parser ----------------------------------------------------------------


def test_cli_supports_validate_command():
    args = build_parser().parse_args(["validate", "g.json"])
    assert args.command == "validate"
    assert args.graph == "g.json"
    assert args.format == "text"


def test_cli_supports_simulate_command():
    args = build_parser().parse_args(["simulate", "g.json", "s.json", "--format", "json"])
    assert args.command == "simulate"
    assert args.script == "s.json"
    assert args.remap is None


def test_cli_supports_bench_command():
    args = build_parser().parse_args(["bench"])
    assert args.sizes == "406,20300"
    assert args.repeats == 10
    assert args.format == "csv"


def test_cli_supports_build_ingest_serve():
    parser = build_parser()
    assert parser.parse_args(["build", "spec.json"]).command == "build"
    ingest = parser.parse_args(["ingest", "scene.json", "--mode", "grouped"])
    assert ingest.mode == "grouped"
    serve = parser.parse_args(["serve", "--stdio", "--graph", "g.json"])
    assert serve.stdio and serve.graph == "g.json"


# -- validate ----------------------------------------------------------------


def test_validate_fixture_exits_zero():
    code, out = run_cli(["validate", STACKED])
    assert code == 0
    assert "0 errors" in out


def test_validate_missing_file_exits_two():
    code, _ = run_cli(["validate", "no/such/file.json"])
    assert code == 2


def test_validate_unparseable_exits_one(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _ = run_cli(["validate", bad])
    assert code == 1


def test_validate_warnings_do_not_fail(tmp_path):
    doc = json.loads(STACKED.read_text())
    doc["nodes"].append({"id": "island", "semantics": {"role": "text", "label": "x"}})
    path = tmp_path / "island.json"
    path.write_text(json.dumps(doc))
    code, out = run_cli(["validate", path])
    assert code == 0
    assert "unreachable" in out


# -- build / ingest -------------------------------------------------------------


def test_build_list_spec(tmp_path):
    out_path = tmp_path / "list.json"
    code, _ = run_cli(["build", FIXTURES / "specs" / "weekdays_list.spec.json",
                       "-o", out_path])
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert len(doc["nodes"]) == 5
    assert run_cli(["validate", out_path])[0] == 0


def test_build_us_states_spec_matches_fixture(tmp_path):
    out_path = tmp_path / "us.json"
    code, _ = run_cli(["build", FIXTURES / "specs" / "us_states.spec.json",
                       "-o", out_path])
    assert code == 0
    assert out_path.read_text() == (FIXTURES / "us_states.json").read_text()


def test_build_bad_spec_exits_one(tmp_path):
    spec = tmp_path / "bad.json"
    spec.write_text(json.dumps({"kind": "list", "items": []}))
    assert run_cli(["build", spec])[0] == 1


def test_ingest_scene(tmp_path):
    out_path = tmp_path / "scene-graph.json"
    code, _ = run_cli(["ingest", FIXTURES / "scenes" / "stacked_bar_scene.json",
                       "--mode", "grouped", "-o", out_path])
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert any(n["id"] == "marks-group" for n in doc["nodes"])
    assert run_cli(["validate", out_path])[0] == 0


# -- simulate: golden traces -----------------------------------------------------


GOLDEN_PAIRS = [
    ("stacked_bar", "stack_cycle"),
    ("stacked_bar", "cell_parents"),
    ("stacked_bar", "exit_then_move"),
    ("stacked_bar", "command_words"),
    ("set_diagram", "set_left_blocked"),
    ("set_diagram", "set_drill_up"),
    ("parallel_vectors", "vectors_walk"),
    ("us_states", "us_ring"),
]


@pytest.mark.parametrize("fixture,script", GOLDEN_PAIRS)
def test_simulate_matches_golden(fixture, script):
    code, out = run_cli(["simulate", FIXTURES / f"{fixture}.json",
                         SCRIPTS / f"{script}.json"])
    assert code == 0
    assert out == (GOLDEN / f"{fixture}__{script}.txt").read_text()


def test_simulate_json_matches_golden_transcript():
    code, out = run_cli(["simulate", STACKED, SCRIPTS / "stack_cycle.json",
                         "--format", "json"])
    assert code == 0
    assert out == (GOLDEN / "stacked_bar__stack_cycle.jsonl").read_text()


def test_simulate_stack_cycle_returns_to_start():
    code, out = run_cli(["simulate", STACKED, SCRIPTS / "stack_cycle.json"])
    lines = [l.split("\t") for l in out.splitlines()]
    first_dest = lines[0][2].split("->")[1]
    last_dest = lines[-1][2].split("->")[1]
    assert first_dest == last_dest == "BPL"


def test_simulate_halts_after_exit():
    code, out = run_cli(["simulate", STACKED, SCRIPTS / "exit_then_move.json"])
    lines = out.splitlines()
    assert len(lines) == 2
    assert "exited" in lines[0]
    assert "error:InactiveSession" in lines[1]


def test_simulate_with_remap(tmp_path):
    prefs = tmp_path / "remap.json"
    prefs.write_text(json.dumps({"KeyJ": "drill"}))
    script = tmp_path / "script.json"
    script.write_text(json.dumps({"steps": [{"kind": "key", "value": "KeyJ"}]}))
    code, out = run_cli(["simulate", STACKED, script, "--remap", prefs])
    assert code == 0
    assert "root->BPL" in out


def test_simulate_equals_protocol_transcript():
    # Same script through the CLI and through a served stdio session must
    # produce byte-identical response transcripts.
    from conftest import python_subprocess

    code, cli_out = run_cli(["simulate", STACKED, SCRIPTS / "cell_parents.json",
                             "--format", "json"])
    assert code == 0
    script = json.loads((SCRIPTS / "cell_parents.json").read_text())
    ops = {"rule": ("move", "rule"), "key": ("input", "token"), "command": ("command", "text")}
    requests = [{"id": "1", "op": "init", "args": {"graph": str(STACKED)}},
                {"id": "2", "op": "enter", "args": {}}]
    for i, step in enumerate(script["steps"]):
        op, key = ops[step["kind"]]
        requests.append({"id": str(i + 3), "op": op, "args": {key: step["value"]}})
    feed = "".join(json.dumps(r, sort_keys=True) + "\n" for r in requests)
    proc = python_subprocess(["serve", "--stdio"], input_text=feed)
    assert proc.returncode == 0
    assert proc.stdout == cli_out


# -- bench ------------------------------------------------------------------------


def test_bench_csv_shape():
    code, out = run_cli(["bench", "--sizes", "50,120", "--repeats", "2"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "size,repeats,ingest_ms,build_ms"
    assert lines[1].startswith("50,2,")
    assert lines[2].startswith("120,2,")


def test_bench_single_size_near_zero_row():
    code, out = run_cli(["bench", "--sizes", "1", "--repeats", "2"])
    assert code == 0
    row = out.splitlines()[1].split(",")
    assert float(row[2]) < 50.0


def test_bench_reports_linear_fit():
    code, out = run_cli(["bench", "--sizes", "100,400,800,1600", "--repeats", "2",
                         "--format", "json"])
    assert code == 0
    report = json.loads(out)
    assert set(report["fit"]) == {"slope_ms_per_mark", "intercept_ms", "r2"}
    assert len(report["rows"]) == 4


def test_bench_bad_sizes_exits_two():
    assert run_cli(["bench", "--sizes", "ten"])[0] == 2


# -- styling -----------------------------------------------------------------------


def test_dn_no_color_disables_styling(monkeypatch, capsys):
    import sys as _sys

    import navgraph.cli as cli

    monkeypatch.setattr(_sys.stdout, "isatty", lambda: True, raising=False)
    monkeypatch.delenv("DN_NO_COLOR", raising=False)
    assert cli._style("warning", "33") == "\x1b[33mwarning\x1b[0m"
    monkeypatch.setenv("DN_NO_COLOR", "1")
    assert cli._style("warning", "33") == "warning"
