from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dyadic_grids.exact import DigitSequence, DomainError
from dyadic_grids.grids import GridRep, Interval, standard_grid, translated_standard_grid
from dyadic_grids.mei import (
    CoverResult,
    NoCoverError,
    Query,
    Source,
    adversarial_witness,
    cover,
    cover_constant_estimate,
    grid_cover,
    oracle_cover,
    witness_index,
)

STD = standard_grid(2)
THIRD = translated_standard_grid(Fraction(1, 3), 2)


def oracle_best(q, g):
    start = 0
    while Fraction(g.base) ** -(start + 1) >= q.length:
        start += 1
    while Fraction(g.base) ** -start < q.length:
        start -= 1
    return oracle_cover(q, g, start)


class TestQuery:
    def test_parse(self):
        assert Query.parse("[1/4,1/2)") == Query(Fraction(1, 4), Fraction(1, 2))
        assert Query.parse("-1, 2").length == 3

    @pytest.mark.parametrize("text", ["1", "1,2,3", "a,b"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            Query.parse(text)

    def test_empty(self):
        with pytest.raises(DomainError):
            Query(1, 1)


class TestCover:
    def test_frozen(self):
        q = Query(Fraction(1, 3) - Fraction(1, 64), Fraction(1, 3) + Fraction(1, 64))
        r = cover(q, STD, THIRD)
        assert r.interval == Interval(Fraction(5, 16), 4, 2)
        assert r.source is Source.FIRST_GRID and r.ratio == 2
        assert CoverResult.from_dict(r.to_dict(), 2) == r

    def test_straddling_origin(self):
        q = Query(Fraction(-1, 100), Fraction(1, 100))
        assert grid_cover(q, STD) is None
        r = cover(q, STD, THIRD)
        assert r.source is Source.SECOND_GRID
        assert r.interval.contains(q.left, q.right)

    def test_no_cover(self):
        q = Query(Fraction(-1, 100), Fraction(1, 100))
        with pytest.raises(NoCoverError):
            cover(q, STD, STD)

    def test_tie_goes_to_first(self):
        q = Query(Fraction(1, 8), Fraction(1, 4))
        assert cover(q, STD, STD).source is Source.FIRST_GRID

    def test_base_mismatch(self):
        with pytest.raises(DomainError):
            cover(Query(0, 1), STD, standard_grid(3))

    @settings(max_examples=200, deadline=None)
    @given(
        st.fractions(min_value=-40, max_value=40, max_denominator=2**12),
        st.integers(-6, 14),
        st.sampled_from(
            [
                THIRD,
                STD,
                GridRep(2, Fraction(4, 7), DigitSequence(2, (1,), (1, 0, 0))),
                GridRep(3, Fraction(1, 2), DigitSequence(3, (), (2,))),
            ]
        ),
    )
    def test_matches_oracle(self, left, e, g):
        q = Query(left, left + Fraction(2) ** -e * Fraction(3, 5))
        assert grid_cover(q, g) == oracle_best(q, g)

    @settings(max_examples=200, deadline=None)
    @given(st.fractions(min_value=-30, max_value=30, max_denominator=2**10), st.integers(-4, 16))
    def test_adjacent_ratio_bound(self, left, e):
        q = Query(left, left + Fraction(2) ** -e)
        assert cover(q, STD, THIRD).ratio <= 6


class TestEstimate:
    def test_one_third_bounded(self):
        est = cover_constant_estimate(STD, THIRD, 2000, (-5, 20), 0)
        assert est.uncovered == 0 and 0 < est.max_ratio <= 6

    def test_reproducible(self):
        a = cover_constant_estimate(STD, THIRD, 200, (-3, 8), 7)
        b = cover_constant_estimate(STD, THIRD, 200, (-3, 8), 7)
        assert a == b

    def test_identical_grids_unbounded(self):
        est = cover_constant_estimate(STD, STD, 200, (-2, 10), 0)
        assert est.max_ratio is None and est.uncovered > 0
        assert est.to_dict()["max_ratio"] is None

    def test_rejects_zero_trials(self):
        with pytest.raises(DomainError):
            cover_constant_estimate(STD, THIRD, 0, (0, 1), 0)


class TestWitness:
    @pytest.mark.parametrize("delta", [Fraction(1, 4), Fraction(1, 2), Fraction(3, 8), Fraction(5, 4)])
    @pytest.mark.parametrize("N", [1, 4, 9])
    def test_ratio_exceeds(self, delta, N):
        q = adversarial_witness(delta, 2, N)
        g = translated_standard_grid(delta, 2)
        m0, k0 = witness_index(delta, 2, N)
        assert q.left < delta < q.right
        assert q.left < Fraction(k0, 2**m0) < q.right
        assert q.length < Fraction(1, 2 ** (N + 1 + m0))
        try:
            ratio = cover(q, STD, g).ratio
        except NoCoverError:
            return
        assert ratio > 2**N

    def test_far_rejected(self):
        with pytest.raises(DomainError):
            witness_index(Fraction(1, 3), 2, 3)

    def test_N_positive(self):
        with pytest.raises(DomainError):
            witness_index(Fraction(1, 4), 2, 0)

    def test_index_values(self):
        assert witness_index(Fraction(1, 4), 2, 5) == (2, 1)
        assert witness_index(Fraction(1, 2), 2, 3) == (1, 1)
