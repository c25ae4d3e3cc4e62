"""Shared strategies and test-suite settings."""

from __future__ import annotations

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from restapprox import CoeffSeq, Cube

settings.register_profile(
    "suite",
    max_examples=50,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow],
)
settings.load_profile("suite")


def cube_strategy(d: int = 1, j_lo: int = -5, j_hi: int = 5, k_span: int = 40):
    return st.builds(
        lambda j, ks: Cube(j, tuple(ks)),
        st.integers(j_lo, j_hi),
        st.lists(st.integers(-k_span, k_span), min_size=d, max_size=d),
    )


signed_values = st.builds(
    lambda mag, neg: -mag if neg else mag,
    st.floats(min_value=1e-3, max_value=1e3),
    st.booleans(),
)


def seq_strategy(d: int = 1, max_size: int = 10, j_lo: int = -4, j_hi: int = 4):
    return st.dictionaries(
        cube_strategy(d=d, j_lo=j_lo, j_hi=j_hi),
        signed_values,
        min_size=1,
        max_size=max_size,
    ).map(CoeffSeq)
