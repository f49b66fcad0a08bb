import functools

import pytest

from fusionkit.fusion_data import load_bundle


@pytest.fixture(scope="session")
def bundle():
    """Loader sharing one bundle object per dataset across the session.

    Bundles are immutable apart from their result caches, so sharing them
    only saves recomputation.
    """
    return functools.lru_cache(maxsize=None)(load_bundle)
