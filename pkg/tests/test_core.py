from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gapshift.core import (BlockDecomposition, ColorBlock, InvalidSymbolError, ShiftParams, ZeroRun,
                           as_fraction, decompose, format_word, parse_word, rational_upper_bound)
from strategies import params_st, raw_words


def P(nu=2, tau=1, L=2):
    return ShiftParams.make(nu, tau, L)


class TestParams:
    def test_colors(self):
        p = P(2, 1, 2)
        assert [p.color(s) for s in range(5)] == [0, 1, 1, 2, 2]
        assert list(p.color_symbols(2)) == [3, 4]
        assert p.smallest_symbol(3) == 5
        assert p.alphabet_size == 5

    @pytest.mark.parametrize("bad", [dict(nu=1, tau=1), dict(nu=2, tau=-1), dict(nu=2, tau=1, L=0)])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            P(**bad)

    def test_tau_exact(self):
        assert P(tau="6/4").tau == Fraction(3, 2)
        assert as_fraction(0.25) == Fraction(1, 4)
        with pytest.raises(TypeError):
            as_fraction(object())

    def test_json_round_trip(self):
        p = P(3, "3/2", 4)
        assert ShiftParams.from_json(p.to_json()) == p

    def test_validate(self):
        with pytest.raises(InvalidSymbolError):
            P().validate([5])
        with pytest.raises(InvalidSymbolError):
            P().validate([-1])


class TestRequiredGap:
    def test_examples(self):
        assert P(tau=1).required_gap(1, 1) == 2
        assert P(tau=0).required_gap(3, 5) == 1
        assert P(tau="3/2").required_gap(1, 2) == 5

    def test_domain(self):
        with pytest.raises(ValueError):
            P().required_gap(0, 1)

    @given(params_st, st.integers(1, 40), st.integers(1, 40))
    def test_symmetric_monotone(self, p, a, b):
        g = p.required_gap(a, b)
        assert g == p.required_gap(b, a)
        assert g <= p.required_gap(a + 1, b)
        assert g >= 1 and g >= p.tau * (a + b) and (g == 1 or g - 1 < p.tau * (a + b))

    @given(params_st, st.integers(1, 30), st.integers(0, 60))
    def test_max_next_block(self, p, a, z):
        m = p.max_next_block(a, z)
        for b in range(1, 40):
            fits = z >= p.required_gap(a, b)
            assert fits == (m is None and z >= 1 or m is not None and b <= m)


class TestDecompose:
    def test_examples(self):
        p = P(2, 1, 2)
        assert decompose((), p).segments == ()
        assert decompose(parse_word("1 2 0 0 3"), p).segments == (
            ColorBlock(1, 2), ZeroRun(2), ColorBlock(2, 1))
        assert decompose(parse_word("1 3"), p).segments == (ColorBlock(1, 1), ColorBlock(2, 1))

    @given(raw_words())
    def test_round_trip(self, pw):
        p, w = pw
        dec = decompose(w, p)
        assert dec.length == len(w)
        canon = dec.reconstruct(p)
        assert [p.color(s) for s in canon] == [p.color(s) for s in w]
        assert decompose(canon, p) == dec
        # maximality: neighbouring segments differ in kind or colour
        kinds = [(type(s), getattr(s, "color", 0)) for s in dec.segments]
        assert all(x != y for x, y in zip(kinds, kinds[1:]))

    def test_to_list(self):
        dec = decompose((0, 3), P())
        assert dec.to_list() == [{"kind": "zeros", "length": 1},
                                 {"kind": "block", "color": 2, "length": 1}]
        assert isinstance(dec, BlockDecomposition) and len(dec.blocks) == 1


def test_word_text():
    assert parse_word("  1 0  3\n") == (1, 0, 3)
    assert format_word((1, 0, 3)) == "1 0 3"
    assert parse_word("") == ()


@given(st.floats(0.01, 50, allow_nan=False))
def test_rational_upper_bound(x):
    r = rational_upper_bound(x)
    assert r >= Fraction(x) and r - Fraction(x) <= Fraction(1, 10**6) + Fraction(1, 10**9)
