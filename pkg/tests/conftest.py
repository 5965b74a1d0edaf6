import pytest

from morsekit import MorsePotential, find_bound_state


@pytest.fixture(scope="session")
def c10_states():
    """Ground and first excited state of the default c=10 well, solved once."""
    p = MorsePotential(depth=10.0)
    cache: dict = {}
    s0 = find_bound_state(p, 0, _scan_cache=cache)
    s1 = find_bound_state(p, 1, _scan_cache=cache)
    return s0, s1
