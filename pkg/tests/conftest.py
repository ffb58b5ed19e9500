import random
from functools import lru_cache

import pytest
from hypothesis import assume, strategies as st

from nvalued.coset import Base, CosetSpace
from nvalued.quaternion import Quaternion
from nvalued.rotgroups import GroupSpec, build_group


@lru_cache(maxsize=None)
def make_space(label: str, base: str) -> CosetSpace:
    """Shared space cache so tests do not rebuild groups over and over."""
    return CosetSpace(build_group(GroupSpec.parse(label)), Base(base))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0)


@st.composite
def unit_quaternions(draw) -> Quaternion:
    components = [
        draw(st.floats(min_value=-1.0, max_value=1.0, allow_nan=False))
        for _ in range(4)
    ]
    q = Quaternion(*components)
    assume(q.norm() > 1e-3)
    return q.normalized()
