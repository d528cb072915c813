from collections import defaultdict

import pytest

from excycles import QQ
from excycles.io import load_algebra, load_cycle
from samples import FP, data_path

CRITERIA = {
    1: "2-cycle (P4, P2) over A: degrees (0,0), full Ext table, < 1 s",
    2: "3-cycle (P5', P3', P1') over B: degrees (0,0,0), < 1 s",
    3: "product over the 39-dim algebra: Gorenstein both ways, degrees (0,0,0,1), < 30 s",
    4: "extend / coextend give 3-cycles (0,0,1); (k,k) verifies, < 5 s",
    5: "property suites (a)-(e), 50 seeded instances each",
    6: "negative controls: reordered cycle, Gorenstein screening",
    7: "determinism and rational vs fp:101 agreement",
}


@pytest.fixture(scope="session", params=[QQ, FP], ids=["rational", "fp101"])
def field(request):
    return request.param


@pytest.fixture(scope="session")
def shipped(field):
    """Algebras and cycles shipped with the package, loaded once per field."""
    out = {"field": field}
    for key in ("A", "B", "Q3", "k", "A3_monomial", "local_square_zero"):
        out[key] = load_algebra(data_path(f"{key}.json"), field)
    for key in ("A", "B", "B_reordered", "kk"):
        out[f"{key}.cycle"] = load_cycle(data_path(f"{key}.cycle.json"), field)[0]
    return out


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion the test belongs to")
    config.addinivalue_line("markers", "slow: takes more than a few seconds")
    config._criteria = defaultdict(list)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        for n in marker.args:
            item.config._criteria[n].append(rep.passed)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "_criteria", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n, label in CRITERIA.items():
        runs = results.get(n)
        if not runs:
            continue
        verdict = "PASS" if all(runs) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {verdict}  ({sum(runs)}/{len(runs)} tests)  {label}")
