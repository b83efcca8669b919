import warnings

import pytest

from symprimes import build_tables


@pytest.fixture(scope="session")
def tables_small():
    """Primality to 50k, factors to 25k: enough for unit-scale checks."""
    return build_tables(50_000, 25_000)


@pytest.fixture(scope="session")
def tables_mid():
    """Primality to 210k, factors to 105k: covers scans to p <= 1e5 and
    the survey through n = 1e4."""
    return build_tables(210_000, 105_000)


@pytest.fixture(scope="session")
def client():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DeprecationWarning)
        from fastapi.testclient import TestClient

    from symprimes.service.app import create_app

    return TestClient(create_app(), raise_server_exceptions=False)
