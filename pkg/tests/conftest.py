import numpy as np
import pytest
from hypothesis import strategies as st

from deltaclosure.context import FormalContext
from deltaclosure.datasets import counterexample_context, random_context, toy_context
from deltaclosure.delta import annotate_all


@pytest.fixture(scope="session")
def toy():
    return toy_context()


@pytest.fixture(scope="session")
def toy_run(toy):
    graph, structure, annotation = annotate_all(toy, passkey_cap=None)
    return graph, structure, annotation


@pytest.fixture(scope="session")
def counterexample():
    return counterexample_context()


def seeded_corpus(n: int = 200, seed: int = 20240601):
    """Deterministic random contexts with at most 10 objects and 8 attributes."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        g = int(rng.integers(0, 11))
        m = int(rng.integers(0, 9))
        out.append(random_context(rng, g, m, float(rng.uniform(0.2, 0.8))))
    return out


@st.composite
def contexts(draw, max_objects=8, max_attributes=6):
    k = draw(st.integers(0, max_attributes))
    n = draw(st.integers(0, max_objects))
    rows = draw(st.lists(st.integers(0, (1 << k) - 1), min_size=n, max_size=n))
    return FormalContext.from_rows(rows, n_attributes=k)


# ---------------------------------------------------------------- acceptance summary

_ACCEPTANCE: dict[str, list[str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if not name.startswith("test_criterion_"):
        return
    key = name[len("test_criterion_"):].split("[")[0]
    if report.when == "call" or report.outcome != "passed":
        _ACCEPTANCE.setdefault(key, []).append("PASS" if report.passed else f"FAIL ({name})")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    grouped: dict[int, tuple[str, list[str]]] = {}
    for key, outcomes in _ACCEPTANCE.items():
        number, _, title = key.partition("_")
        prev_title, prev = grouped.get(int(number), (title, []))
        grouped[int(number)] = (min(prev_title, title, key=len), prev + outcomes)
    for number in sorted(grouped):
        title, outcomes = grouped[number]
        failed = [o[6:-1] for o in outcomes if o != "PASS"]
        status = "FAIL" if failed else "PASS"
        detail = f" [{', '.join(failed)}]" if failed else ""
        terminalreporter.write_line(f"{status} criterion {number}: {title.replace('_', ' ')}{detail}")
