import pytest

from nspg.harness import default_catalog, resolve_catalog, run_catalog


@pytest.fixture(scope="session")
def catalog_pairs():
    return resolve_catalog(default_catalog())


@pytest.fixture(scope="session")
def default_report():
    return run_catalog(default_catalog())
