import pytest

from gsmash.examples import build_example
from gsmash.field import QQ, PrimeField


@pytest.fixture(scope="session")
def Fp():
    return PrimeField(32003)


@pytest.fixture(scope="session")
def kron():
    return build_example("kronecker")


@pytest.fixture(scope="session")
def kron_z2():
    return build_example("kronecker-z2")


@pytest.fixture(scope="session")
def a2():
    return build_example("a2-z2")


@pytest.fixture(scope="session")
def loop():
    return build_example("loop-square-z2")


@pytest.fixture(scope="session")
def ext2():
    return build_example("exterior-n", n=2)


@pytest.fixture(scope="session")
def ext1():
    return build_example("exterior-n", n=1)


@pytest.fixture(scope="session")
def QQf():
    return QQ


ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number: int, ok: bool, detail: str) -> str:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
