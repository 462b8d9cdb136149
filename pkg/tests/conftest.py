import pytest

from surfk6 import BACKEND
from surfk6.dyclass import enumerate_class, require_seed, verify_projective_theorem
from surfk6.fixtures import projective_grid

BACKENDS = ["python"] + (["cython"] if BACKEND == "cython" else [])


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture(scope="session")
def pp_class():
    return enumerate_class(require_seed(projective_grid()))


@pytest.fixture(scope="session")
def pp_report(pp_class):
    return verify_projective_theorem(pp_class)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
