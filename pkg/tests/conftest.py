import pytest

from delta_lens.census import build_catalog
from delta_lens.contours import trace_amplitude_one_line, trace_phase_zero_line


@pytest.fixture(scope="session")
def merged_catalog():
    return build_catalog("delta5_merged", 60.0)


@pytest.fixture(scope="session")
def zeta_catalog():
    return build_catalog("zeta", 120.0)


@pytest.fixture(scope="session")
def beta_catalog():
    return build_catalog("beta", 101.0)


@pytest.fixture(scope="session")
def phase_traces(merged_catalog):
    pts = merged_catalog.entries
    return {n: trace_phase_zero_line(n, catalog=pts) for n in range(1, 13)}


@pytest.fixture(scope="session")
def amplitude_traces(merged_catalog):
    pts = merged_catalog.entries
    return {n: trace_amplitude_one_line(n, catalog=pts) for n in range(1, 13)}
