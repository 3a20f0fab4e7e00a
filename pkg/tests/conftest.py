import pytest
from hypothesis import HealthCheck, settings

from ospq.algebra import algebra

settings.register_profile(
    "ospq",
    max_examples=30,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ospq")


@pytest.fixture(scope="session")
def alg1():
    return algebra(1)


@pytest.fixture(scope="session")
def alg2():
    return algebra(2)


@pytest.fixture(scope="session")
def alg3():
    return algebra(3)



def pytest_terminal_summary(terminalreporter):
    import sys

    mod = next((m for n, m in sys.modules.items() if n.rsplit(".", 1)[-1] == "test_acceptance"), None)
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(results.items()):
            terminalreporter.write_line(line)
