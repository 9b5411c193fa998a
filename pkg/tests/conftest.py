import pytest
from hypothesis import HealthCheck, settings

from halfdesign import (
    construct_half,
    construct_leech_half,
    construct_tight7,
    generate_leech_min,
    generate_roots,
    local_search_half,
)

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# acceptance verdicts, printed one per line at the end of the run
ACCEPTANCE: dict[int, list[bool]] = {}
TITLES: dict[int, str] = {}


def record(criterion: int, title: str, ok: bool) -> None:
    ACCEPTANCE.setdefault(criterion, []).append(bool(ok))
    TITLES[criterion] = title


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for c in sorted(ACCEPTANCE):
        verdict = "PASS" if all(ACCEPTANCE[c]) else "FAIL"
        terminalreporter.write_line(f"criterion {c:>2} {verdict}  {TITLES[c]}")


@pytest.fixture(scope="session")
def e8():
    return generate_roots("E8")


@pytest.fixture(scope="session")
def e8_half():
    return construct_half("E8")


@pytest.fixture(scope="session")
def leech():
    return generate_leech_min()


@pytest.fixture(scope="session")
def leech_half():
    return construct_leech_half()


@pytest.fixture(scope="session")
def tight7():
    return construct_tight7()


@pytest.fixture(scope="session")
def tight7_half(tight7):
    return local_search_half(tight7, seed=1)
