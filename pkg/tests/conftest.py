import pytest
from hypothesis import settings, strategies as st

from ffbc.ffpoly import GlobalConfig

settings.register_profile("ffbc", max_examples=60, deadline=None)
settings.load_profile("ffbc")

CFG = {q: GlobalConfig.from_q(q) for q in (2, 3, 4, 5)}

# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: dict = {}


@pytest.fixture(params=[2, 3], ids=lambda q: f"q{q}")
def cfg(request):
    return CFG[request.param]


@pytest.fixture
def cfg2():
    return CFG[2]


@pytest.fixture
def cfg3():
    return CFG[3]


def polys(cfg, max_deg=4, nonzero=False):
    coeffs = st.lists(st.integers(0, cfg.q - 1), min_size=0, max_size=max_deg + 1)
    s = coeffs.map(cfg.poly)
    return s.filter(bool) if nonzero else s


def monics(cfg, max_deg=3, min_deg=0):
    return st.integers(min_deg, max_deg).flatmap(
        lambda n: st.lists(st.integers(0, cfg.q - 1), min_size=n, max_size=n).map(lambda c: tuple(c) + (1,)))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
