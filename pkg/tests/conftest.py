import pytest

from pipeline.pipeline import Pipeline


@pytest.fixture(scope="session")
def pipeline():
    """Full-precision run: M = 6 on 20001 nodes, computed once per session."""
    return Pipeline(order=6, n_grid=20001)


@pytest.fixture(scope="session")
def n_series(pipeline):
    return pipeline.n_series


@pytest.fixture
def config_file(tmp_path):
    return str(tmp_path / "config.json")
