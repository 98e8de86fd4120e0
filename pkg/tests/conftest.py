import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--long-run", action="store_true", default=False,
        help="also run the long searches: quad sweeps of the 7- and 8-digit "
             "primes, the (8,2)/(9,3) Groebner checks, and the degree-12 "
             "F_5 search")


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "long_run: deselected unless --long-run is given")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--long-run"):
        return
    skip = pytest.mark.skip(reason="needs --long-run")
    for item in items:
        if "long_run" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def long_run(request):
    return request.config.getoption("--long-run")
