import json
import os
import subprocess
from pathlib import Path

import pytest


def pytest_addoption(parser):
    parser.addoption("--qhfib", required=True, help="path to the qhfib executable")
    parser.addoption("--fixture-dir", required=True, help="directory holding the fixture JSON files")


class Cli:
    def __init__(self, exe, fixtures):
        self.exe = exe
        self.fixtures = Path(fixtures)

    def fixture(self, name):
        return str(self.fixtures / f"{name}.json")

    def run(self, *args, env=None):
        full_env = {k: v for k, v in os.environ.items() if k != "QHFIB_CUTOFF"}
        full_env.update(env or {})
        return subprocess.run([self.exe, *args], capture_output=True, text=True, env=full_env)

    def json(self, *args, env=None):
        proc = self.run(*args, "--json", env=env)
        return proc.returncode, json.loads(proc.stdout)


@pytest.fixture(scope="session")
def cli(request):
    return Cli(request.config.getoption("--qhfib"), request.config.getoption("--fixture-dir"))
