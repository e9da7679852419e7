import io
import random
import sys
from importlib import resources
from pathlib import Path

import networkx as nx
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cbcd.graph import Graph, load_edge_list, load_ground_truth  # noqa: E402
from oracles import from_nx  # noqa: E402

DATA = resources.files("cbcd") / "data"

# Small example graph on nodes 1..7; node 5 has three neighbours inside {1..5}
FIG2_EDGES = "5 1\n5 2\n5 4\n5 6\n5 7\n1 2\n1 3\n2 3\n3 4\n6 7\n"


def graph_from_text(text: str, **kw) -> Graph:
    return load_edge_list(io.StringIO(text), **kw)


@pytest.fixture
def fig2():
    g = graph_from_text(FIG2_EDGES, one_indexed=True)
    members = [g.index_of(x) for x in (1, 2, 3, 4, 5)]
    return g, members


@pytest.fixture(scope="session")
def karate():
    with (DATA / "karate.edgelist").open() as f:
        g = load_edge_list(f)
    with (DATA / "karate.groundtruth").open() as f:
        truth = load_ground_truth(f, g=g)
    return g, truth


def random_graph(rng: random.Random, n_max: int, p=None, connected=False) -> Graph:
    while True:
        n = rng.randint(3, n_max)
        prob = p if p is not None else rng.uniform(0.1, 0.7)
        h = nx.gnp_random_graph(n, prob, seed=rng.randrange(2**31))
        if h.number_of_edges() == 0:
            continue
        if connected and not nx.is_connected(h):
            continue
        return from_nx(h)


def random_blocks(rng: random.Random, n: int, k_max: int = 5):
    k = rng.randint(1, min(k_max, n))
    lab = [rng.randrange(k) for _ in range(n)]
    blocks = {}
    for u, c in enumerate(lab):
        blocks.setdefault(c, []).append(u)
    return list(blocks.values())


# ------------------------------------------------------------------ acceptance reporting

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k, title): acceptance criterion number and title")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    k, title = mark.args
    note = getattr(item, "criterion_note", "")
    status = "PASS" if rep.passed else "FAIL"
    if not rep.passed:
        msg = str(rep.longrepr.reprcrash.message) if hasattr(rep.longrepr, "reprcrash") else str(rep.longrepr)
        note = (note + "; " if note else "") + msg.splitlines()[0][:160]
    _CRITERIA[k] = (status, title, note)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        status, title, note = _CRITERIA[k]
        terminalreporter.write_line(f"[{status}] {k:2d}. {title}" + (f" -- {note}" if note else ""))
