"""Shared hypothesis strategies."""

from fractions import Fraction

import numpy as np
from hypothesis import strategies as st

from gapshift.core import ShiftParams
from gapshift.language import sample_admissible

taus = st.builds(Fraction, st.integers(0, 7), st.integers(1, 4))
params_st = st.builds(ShiftParams, st.integers(2, 3), taus, st.integers(1, 4))


@st.composite
def admissible_words(draw, max_len=14, params=None):
    p = params if params is not None else draw(params_st)
    n = draw(st.integers(0, max_len))
    seed = draw(st.integers(0, 2**32 - 1))
    return p, sample_admissible(n, p, np.random.default_rng(seed))


@st.composite
def raw_words(draw, max_len=10, params=None):
    p = params if params is not None else draw(params_st)
    w = draw(st.lists(st.integers(0, p.max_symbol), max_size=max_len))
    return p, tuple(w)
