import json
import sys
from pathlib import Path

import pytest

REPO = Path(__file__).resolve().parent.parent
FIXTURES = REPO / "fixtures"
SCRIPTS = FIXTURES / "scripts"
GOLDEN = Path(__file__).resolve().parent / "golden"

FIXTURE_NAMES = ["stacked_bar", "us_states", "set_diagram", "parallel_vectors"]


def fixture_path(name: str) -> Path:
    return FIXTURES / f"{name}.json"


def load_json(path: Path):
    return json.loads(path.read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def stacked_bar_graph():
    from navgraph import fixtures
    return fixtures.stacked_bar()


@pytest.fixture(scope="session")
def us_states_graph():
    from navgraph import fixtures
    return fixtures.us_states()


@pytest.fixture(scope="session")
def set_diagram_graph():
    from navgraph import fixtures
    return fixtures.set_diagram()


@pytest.fixture(scope="session")
def parallel_vectors_graph():
    from navgraph import fixtures
    return fixtures.parallel_vectors()


@pytest.fixture(scope="session")
def all_fixture_graphs(stacked_bar_graph, us_states_graph, set_diagram_graph,
                       parallel_vectors_graph):
    return {
        "stacked_bar": stacked_bar_graph,
        "us_states": us_states_graph,
        "set_diagram": set_diagram_graph,
        "parallel_vectors": parallel_vectors_graph,
    }


def run_cli(argv, capsys=None):
    """Run the CLI in-process, returning (exit_code, stdout_text)."""
    import io
    from contextlib import redirect_stdout

    from navgraph.cli import main

    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main([str(a) for a in argv])
    return code, buf.getvalue()


def python_subprocess(args, input_text=None, timeout=60):
    import subprocess

    return subprocess.run(
        [sys.executable, "-m", "navgraph", *args],
        input=input_text, capture_output=True, text=True, timeout=timeout, cwd=REPO)
