import pytest

from powres.monomial import parse_ideal
from powres.tree import build_support_tree

RUNNING = "x*y, y*z, z*u"
# two branches from the root: v0 - v1 and v0 - v2 - v3
FORK = "vars: a,x,y,b,z,c\nx*y*z, a*y*z, x*b*z, x*b*c"


@pytest.fixture(scope="session")
def running():
    I = parse_ideal(RUNNING)
    return I, build_support_tree(I)


@pytest.fixture(scope="session")
def fork():
    I = parse_ideal(FORK)
    return I, build_support_tree(I)


# acceptance criteria report one line each at the end of the run
_ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    def record(name: str, ok: bool, detail: str = ""):
        _ACCEPTANCE[name] = (ok, detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda s: (len(s.split()[0]), s)):
        ok, detail = _ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}".rstrip())
