import functools

import pytest

from bdcluster.liealg import standard_case
from bdcluster.verify import Config, build_pipeline, run_checks

ACCEPTANCE_LINES = []


@functools.lru_cache(maxsize=None)
def pipeline_for(k):
    return build_pipeline(standard_case(k))


@functools.lru_cache(maxsize=None)
def report_for(k):
    return run_checks(standard_case(k), Config(skip_laurent=True), pipeline_for(k))


@pytest.fixture(scope="session")
def pipelines():
    return pipeline_for


@pytest.fixture(scope="session")
def reports():
    return report_for


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
