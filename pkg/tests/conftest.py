import numpy as np
import pytest
from hypothesis import settings, strategies as st

from sptchain.pauli import PauliString

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")


@st.composite
def pauli_strings(draw, n=None, hermitian=False):
    if n is None:
        n = draw(st.integers(1, 5))
    x = draw(st.integers(0, (1 << n) - 1))
    z = draw(st.integers(0, (1 << n) - 1))
    phase = draw(st.sampled_from([0, 2] if hermitian else [0, 1, 2, 3]))
    return PauliString(n, x, z, phase)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
