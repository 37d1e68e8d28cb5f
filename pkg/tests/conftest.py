"""Shared fixtures."""

import pytest

from mm_sexpansion.catalog import Catalog, enumerate_catalog


@pytest.fixture(scope="session")
def catalogs() -> dict[int, Catalog]:
    """Catalogs of orders 1 to 4 up to isomorphism and anti-isomorphism."""
    return {n: enumerate_catalog(n) for n in range(1, 5)}
