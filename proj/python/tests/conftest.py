from pathlib import Path

import pytest


def pytest_addoption(parser):
    parser.addoption("--fixture-dir", default=str(Path(__file__).resolve().parents[2] / "fixtures"))


@pytest.fixture(scope="session")
def fixture_dir(request):
    return Path(request.config.getoption("--fixture-dir"))
