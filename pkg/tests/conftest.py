import math

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from fracladder import DiffusionProfile, FractalParams, LadderSpec

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def rel_err(a, b):
    return abs(a - b) / abs(b) if b != 0 else abs(a - b)


def ulps(a, b):
    return abs(a - b) / math.ulp(b)


positive = st.floats(1e-2, 1e2)
ratios = st.floats(0.5, 2.0)


@st.composite
def ladders(draw, max_depth=64):
    n = draw(st.integers(1, max_depth))
    r = draw(st.lists(positive, min_size=n, max_size=n))
    c = draw(st.lists(positive, min_size=n, max_size=n))
    return LadderSpec(tuple(r), tuple(c))


@st.composite
def fractals(draw, max_depth=64):
    return FractalParams(
        draw(st.floats(0.1, 10)), draw(st.floats(0.1, 10)),
        draw(ratios), draw(ratios), draw(st.integers(1, max_depth)),
    )


@st.composite
def profiles(draw):
    h = draw(st.floats(1e-2, 10))
    return DiffusionProfile(
        draw(st.floats(0.1, 10)), draw(st.floats(0.1, 10)),
        draw(st.floats(-1, 1)) / h, draw(st.floats(-1, 1)) / h, h,
    )


omegas = st.floats(1e-4, 1e4)


@pytest.fixture
def uniform2():
    return LadderSpec((1.0, 1.0), (1.0, 1.0))
