import pytest

from ddouble import autdg, groups

ACCEPTANCE = {}


def record(n, ok, detail=""):
    """Store one acceptance line; printed in the terminal summary."""
    ACCEPTANCE[n] = (bool(ok), detail)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


_ENUM = {}


def all_autos(name):
    """Cached enumeration of Aut_Hopf(DG), shared between tests."""
    if name not in _ENUM:
        G = groups.construct(name)
        _ENUM[name] = (G, autdg.enumerate_all(G))
    return _ENUM[name]


@pytest.fixture(scope="session")
def autos():
    return all_autos
