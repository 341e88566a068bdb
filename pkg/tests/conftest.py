import pytest
from hypothesis import HealthCheck, settings

from imtv.numeric.cache import ValueCache, set_default_cache

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(autouse=True)
def memory_cache():
    """Keep every test on a private in-memory value cache."""
    cache = ValueCache(None)
    set_default_cache(cache)
    yield cache
    set_default_cache(None)
