import random

import pytest

from hilbert10.tm import Action, Machine, Quadruple

_criteria = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): an acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    name = dict(report.user_properties).get("criterion")
    if name is not None:
        _criteria.append((name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _criteria:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")


@pytest.fixture(autouse=True)
def _tag_criterion(request, record_property):
    marker = request.node.get_closest_marker("criterion")
    if marker is not None:
        record_property("criterion", marker.args[0])


def random_machine(rng: random.Random, max_quads=6, max_state=4) -> Machine:
    table = {}
    for _ in range(rng.randint(0, max_quads)):
        key = (rng.randint(0, max_state), rng.randint(0, 1))
        table[key] = (Action(rng.randrange(4)), rng.randint(0, max_state))
    return Machine(tuple(Quadruple(s, b, a, t) for (s, b), (a, t) in table.items()))


@pytest.fixture
def rng():
    return random.Random(20261016)
