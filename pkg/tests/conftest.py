import numpy as np
import pytest

from hgfrft import graph


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_normal_matrix(rng, n):
    """Random normal matrix Q diag(z) Q^H with nonzero eigenvalues."""
    q, _ = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    z = (0.5 + rng.random(n)) * np.exp(1j * rng.uniform(-np.pi, np.pi, n))
    return (q * z) @ q.conj().T


def random_unitary(rng, n):
    q, r = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_connected_graph(rng, n):
    """Random tree plus extra edges, so it is always connected."""
    edges = {}
    for v in range(1, n):
        u = int(rng.integers(0, v))
        edges[(u, v)] = float(rng.uniform(0.5, 2.0))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < 0.3:
                edges[(u, v)] = float(rng.uniform(0.5, 2.0))
    return graph.Graph(n, tuple((u, v, w) for (u, v), w in sorted(edges.items())))


_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    key = mark.kwargs["number"]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        detail = ""
        if report.failed and call.excinfo is not None:
            detail = str(call.excinfo.value).splitlines()[0] if str(call.excinfo.value) else ""
        _criteria[key] = (mark.kwargs["title"], report.outcome, detail)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria):
        title, outcome, detail = _criteria[key]
        status = "PASS" if outcome == "passed" else "FAIL"
        line = f"[{status}] {key:2d}. {title}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
