import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from leftq.table import LeftQuasigroup

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def left_quasigroups(draw, min_order=1, max_order=4, idempotent=False):
    n = draw(st.integers(min_order, max_order))
    rows = []
    for x in range(n):
        if idempotent:
            rest = list(draw(st.permutations([y for y in range(n) if y != x])))
            row = rest[:x] + [x] + rest[x:]
        else:
            row = list(draw(st.permutations(range(n))))
        rows.append(row)
    return LeftQuasigroup(n, rows)


def random_table(rng: random.Random, n, idempotent=False):
    rows = []
    for x in range(n):
        if idempotent:
            rest = [y for y in range(n) if y != x]
            rng.shuffle(rest)
            rows.append(rest[:x] + [x] + rest[x:])
        else:
            row = list(range(n))
            rng.shuffle(row)
            rows.append(row)
    return LeftQuasigroup(n, rows)


@pytest.fixture
def rng():
    return random.Random(1234)
