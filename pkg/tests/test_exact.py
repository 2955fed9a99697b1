from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dyadic_grids.exact import (
    BaseNExpansion,
    DigitSequence,
    DomainError,
    SigmaPair,
    digit_at,
    expand,
    frac_floor,
    location_value,
    minimal_form,
    nadic_add_integer,
    parse_rational,
)
from oracles import digits_by_multiplication, location_by_sum

BASES = st.sampled_from([2, 3, 5, 10])


@st.composite
def unit_rationals(draw, max_q=10_000):
    q = draw(st.integers(1, max_q))
    p = draw(st.integers(0, q - 1))
    return Fraction(p, q)


@st.composite
def digit_sequences(draw, base=None):
    n = base if base is not None else draw(st.sampled_from([2, 3, 5]))
    digit = st.integers(0, n - 1)
    pre = draw(st.lists(digit, max_size=4))
    per = draw(st.lists(digit, min_size=1, max_size=4))
    return DigitSequence(n, tuple(pre), tuple(per))


class TestExpand:
    def test_zero(self):
        e = expand(0, 2)
        assert e.preperiod == () and e.period == (0,)

    def test_four_sevenths(self):
        e = expand(Fraction(4, 7), 2)
        assert e.preperiod == () and e.period == (1, 0, 0)

    def test_one_third_digits_are_0_1(self):
        e = expand(Fraction(1, 3), 2)
        assert (e.preperiod, e.period) == ((), (0, 1))

    @pytest.mark.parametrize("i, digit", [(1, 1), (2, 0), (3, 0), (4, 1), (7, 1)])
    def test_digit_at_four_sevenths(self, i, digit):
        assert digit_at(expand(Fraction(4, 7), 2), i) == digit

    def test_digit_at_zero(self):
        assert digit_at(expand(0, 2), 7) == 0

    @pytest.mark.parametrize("x", [Fraction(-1, 3), Fraction(1), Fraction(7, 3)])
    def test_rejects_outside_unit_interval(self, x):
        with pytest.raises(DomainError):
            expand(x, 2)

    def test_dyadic_has_zero_period(self):
        e = expand(Fraction(3, 8), 2)
        assert e.preperiod == (0, 1, 1) and e.period == (0,)

    def test_non_canonical_tail_rejected(self):
        with pytest.raises(DomainError):
            BaseNExpansion(2, (0,), (1,))

    @settings(max_examples=300)
    @given(unit_rationals(), BASES)
    def test_round_trip(self, x, n):
        e = expand(x, n)
        assert e.value() == x
        assert len(e.preperiod) + len(e.period) <= x.denominator

    @settings(max_examples=200)
    @given(unit_rationals(max_q=500), BASES)
    def test_digits_match_multiplication(self, x, n):
        e = expand(x, n)
        assert e.digits(40) == digits_by_multiplication(x, n, 40)

    @settings(max_examples=200)
    @given(unit_rationals(), BASES)
    def test_never_trailing_top_digit(self, x, n):
        assert expand(x, n).period != (n - 1,)

    @given(st.integers(0, 12), st.integers(0, 10**6), BASES)
    def test_n_adic_rationals_terminate(self, m, k, n):
        x = Fraction(k % n**m, n**m)
        assert expand(x, n).period == (0,)


class TestFracFloor:
    @pytest.mark.parametrize(
        "x, f, N",
        [(Fraction(10, 3), Fraction(1, 3), 3), (Fraction(-1, 3), Fraction(2, 3), -1), (0, 0, 0)],
    )
    def test_examples(self, x, f, N):
        assert frac_floor(x) == (f, N)

    @given(st.fractions())
    def test_decomposition(self, x):
        f, N = frac_floor(x)
        assert N + f == x and 0 <= f < 1


class TestParsing:
    @pytest.mark.parametrize(
        "text, value",
        [("1/3", Fraction(1, 3)), ("-4/6", Fraction(-2, 3)), ("7", Fraction(7)), ("0/5", Fraction(0))],
    )
    def test_rational(self, text, value):
        assert parse_rational(text) == value

    @pytest.mark.parametrize("text", ["", "1/0", "a/b", "1.5", "--1/2", "1/-2"])
    def test_rational_rejects(self, text):
        with pytest.raises(ValueError):
            parse_rational(text)

    def test_digit_sequence_literal(self):
        s = DigitSequence.parse("0,1:1,0", 2)
        assert s.digits(6) == [0, 1, 1, 0, 1, 0]
        assert str(DigitSequence.parse(":1,0", 2)) == ":1,0"

    @pytest.mark.parametrize("text", ["1,0", ":", "1:2", "x:1"])
    def test_digit_sequence_rejects(self, text):
        with pytest.raises(ValueError):
            DigitSequence.parse(text, 2)


class TestSigma:
    def test_excluded_index(self):
        with pytest.raises(DomainError):
            SigmaPair(-1, 0)
        assert SigmaPair(-2, 1).point(2) == 4
        assert SigmaPair(3, 0).point(2) == 0


class TestDigitSequence:
    def test_canonical_equality(self):
        assert DigitSequence(2, (1, 0), (1, 0, 1, 0)) == DigitSequence(2, (), (1, 0))
        assert DigitSequence(3, (2, 2), (2,)) == DigitSequence.constant(3, 2)

    def test_minimal_form_rotates(self):
        assert minimal_form((0, 1, 1, 0), (1, 0)) == ((0, 1), (1, 0))

    def test_invalid_digit(self):
        with pytest.raises(DomainError):
            DigitSequence(2, (), (2,))

    @given(digit_sequences())
    def test_rational_round_trip(self, s):
        assert DigitSequence.from_rational(s.to_rational(), s.base) == s


class TestLocationValue:
    def test_zero_index(self):
        assert location_value(DigitSequence(2, (), (1, 0)), 0) == 0

    def test_one_zero_four(self):
        assert location_value(DigitSequence(2, (), (1, 0)), 4) == 5

    def test_all_zero(self):
        assert location_value(DigitSequence.zeros(3), 17) == 0

    @given(digit_sequences(), st.integers(0, 40))
    def test_range_and_monotone(self, s, j):
        v = location_value(s, j)
        assert 0 <= v < s.base**j
        assert v <= location_value(s, j + 1)
        assert v == location_by_sum(s.digits(j), s.base, j)


class TestNadicAdd:
    def test_identity(self):
        s = DigitSequence(2, (1,), (0, 1))
        assert nadic_add_integer(s, 0) is s

    @pytest.mark.parametrize("n", [2, 3, 5, 10])
    def test_minus_one_plus_two(self, n):
        s = DigitSequence.constant(n, n - 1)
        assert nadic_add_integer(s, 2) == DigitSequence(n, (1,), (0,))

    def test_one_zero_plus_one(self):
        s = nadic_add_integer(DigitSequence(2, (), (1, 0)), 1)
        assert s.digits(8) == [0, 1, 1, 0, 1, 0, 1, 0]
        assert (s.preperiod, s.period) == ((0, 1), (1, 0))
        for j in range(13):
            assert location_value(s, j) == (location_value(DigitSequence(2, (), (1, 0)), j) + 1) % 2**j

    @settings(max_examples=200)
    @given(digit_sequences(), st.integers(-1000, 1000))
    def test_group_law(self, s, N):
        assert nadic_add_integer(nadic_add_integer(s, N), -N) == s

    @settings(max_examples=200)
    @given(digit_sequences(), st.integers(-1000, 1000))
    def test_congruence(self, s, N):
        t = nadic_add_integer(s, N)
        n = s.base
        for j in range(41):
            assert (location_value(t, j) - location_value(s, j) - N) % n**j == 0
