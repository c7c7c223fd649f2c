"""Shared fixtures: the reference vane scenario and its variants.

Also prints one `criterion N: PASS|FAIL` line per acceptance test in
the terminal summary, so the acceptance gate is readable straight off a
plain `pytest -v` run.
"""

import re

import pytest

from bubblecollapse import (BubbleGeometry, FluidProperties, GasSpec,
                            ScenarioConfig, validate)

REFERENCE_INI = """\
[fluid]
rho = 8.2
mu = 0.0287
p_m = 1e7

[gas]
rho_gas = 0.01177
W = 28.97
T = 300
a_override = 1e7

[geometry]
R0 = 0.05

[pump]
rpm = 2000
"""


def make_reference_config(**overrides):
    base = dict(
        fluid=FluidProperties(rho=8.2, mu=0.0287, p_m=1e7),
        gas=GasSpec(rho_gas=0.01177, W=28.97, T=300.0),
        geometry=BubbleGeometry(R0=0.05),
        a_override=1e7)
    base.update(overrides)
    return ScenarioConfig(**base)


@pytest.fixture
def reference_config():
    return make_reference_config()


@pytest.fixture
def reference_scenario(reference_config):
    return validate(reference_config)


@pytest.fixture
def computed_a_config():
    return make_reference_config(a_override=None)


@pytest.fixture
def reference_ini(tmp_path):
    path = tmp_path / "reference.ini"
    path.write_text(REFERENCE_INI)
    return path


_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")


def pytest_terminal_summary(terminalreporter):
    lines = {}
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            m = _CRITERION.search(getattr(report, "nodeid", ""))
            if m and getattr(report, "when", "call") == "call":
                verdict = "PASS" if outcome == "passed" else "FAIL"
                lines[int(m.group(1))] = verdict
    if lines:
        terminalreporter.write_line("")
        terminalreporter.write_line("acceptance criteria:")
        for n in sorted(lines):
            terminalreporter.write_line(f"criterion {n}: {lines[n]}")
