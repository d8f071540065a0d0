# fsStrata
#
# Copyright (C) 2024  fsStrata contributors
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.


"""
    Unittests for fs_calculus.py
"""
import unittest
from fractions import Fraction

# noinspection PyUnresolvedReferences
import pytest
# noinspection PyUnresolvedReferences
import pytest_socket

from fsStrata.fs_calculus import *


class TestSurjectionCount(object):

    @pytest.mark.parametrize("n, d, expected", [
        (0, 0, 1),
        (3, 0, 0),
        (2, 3, 0),
        (3, 3, 6),
        (4, 2, 14),
        (5, 3, 150),
    ])
    def test_values(self, n, d, expected):
        assert surjection_count(n, d) == expected

    def test_negative(self):
        with pytest.raises(ValueError):
            surjection_count(-1, 2)


class TestDimSequence(unittest.TestCase):

    def test_projective(self):
        p2 = dim_projective(2)

        assert p2.values(5) == [0, 0, 2, 6, 14]
        assert p2.height == 2
        assert p2.render() == "P2"

    def test_shift(self):
        shifted = seq_shift(dim_projective(2), 1)

        assert shifted.values(4) == [0, 2, 6, 14]
        assert shifted.height == 2
        with pytest.raises(ValueError):
            seq_shift(dim_projective(2), -1)

    def test_convolution_of_projectives(self):
        product = seq_convolve(dim_projective(1), dim_projective(1))

        assert product.values(10) == dim_projective(2).values(10)
        assert product.height == 2

    def test_convolution_needs_two_operands(self):
        with pytest.raises(ValueError):
            seq_convolve(dim_projective(1))

    def test_sum(self):
        total = seq_sum(dim_projective(1), dim_projective(3))

        assert total.height == 3
        assert total.values(4) == [0, 1, 1, 7]

    def test_negative_index(self):
        with pytest.raises(IndexError):
            dim_projective(1)[-1]

    def test_explicit(self):
        sequence = seq_explicit([1, 2, 3])

        assert sequence.values(3) == [1, 2, 3]
        assert sequence.height is None
        with pytest.raises(IndexError):
            sequence[5]

    def test_cited_height(self):
        sequence = seq_explicit([1, 2], 1, "known")

        assert sequence.height == 1
        assert sequence.certificate.steps[0].rule == HeightRule.CITED
        assert sequence.replay().values(2) == [1, 2]

    def test_missing_certificate_propagates(self):
        assert seq_convolve(seq_explicit([1, 1, 1]), dim_projective(1)).height is None


class TestHeightExpressions(unittest.TestCase):

    def test_parse(self):
        sequence = parse_height_expression("conv(shift(P3,2),P1)")

        assert sequence.certificate.bound == 4
        assert [step.rule for step in sequence.certificate.steps] == [
            HeightRule.PROJECTIVE, HeightRule.SHIFT, HeightRule.PROJECTIVE, HeightRule.CONVOLUTION]
        assert sequence.render() == "conv(shift(P3,2),P1)"

    def test_replay(self):
        sequence = parse_height_expression("sum(conv(P1,P2),shift(P2,3))")

        assert sequence.replay().values(8) == sequence.values(8)
        assert parse_height_expression(sequence.render()).values(8) == sequence.values(8)
        assert sequence.height == 3

    def test_malformed(self):
        for text in ["P", "foo(P1)", "shift(P1)", "conv(P1", "conv(P1)", "shift(P1,-1)"]:
            with pytest.raises(ValueError):
                parse_height_expression(text)

    def test_spectral_sequence(self):
        certificate = spectral_sequence_bound([dim_projective(2).certificate, dim_projective(3).certificate])

        assert certificate.bound == 3
        assert certificate.steps[-1].rule == HeightRule.SPECTRAL_SEQUENCE
        assert "spectral sequence" in certificate.render()
        assert spectral_sequence_bound([]).bound == 0


class TestRationalGF(unittest.TestCase):

    def test_projective(self):
        gf = gf_projective(2)

        assert gf.series(5) == [0, 0, 2, 6, 14]
        assert gf.denominator() == (1, -3, 2)
        assert gf.poles == [1, 2]

    def test_series_matches_surjections(self):
        assert gf_projective(4).series(12) == [surjection_count(n, 4) for n in range(12)]

    def test_invariants(self):
        assert invariants_gf_projective(2).series(6) == [0, 0, 1, 2, 3, 4]
        assert invariants_gf_projective(3).series(8) == [invariant_orbit_count(n, 3) for n in range(8)]
        with pytest.raises(ValueError):
            invariants_gf_projective(0)

    def test_equality(self):
        assert RationalGF([1], {1: 1}) == RationalGF([1, -1], {1: 2})
        assert RationalGF([1], {1: 1}) != RationalGF([1], {2: 1})

    def test_fractional_series(self):
        assert RationalGF([Fraction(1, 2)], {1: 1}).series(2) == [Fraction(1, 2), Fraction(1, 2)]

    def test_invalid_base(self):
        with pytest.raises(ValueError):
            RationalGF([1], {0: 1})


class TestExponentialPolynomialFit(unittest.TestCase):

    def test_surjections_onto_two(self):
        fit = fit_exponential_polynomial([surjection_count(n, 2) for n in range(12)], 2)

        assert fit.polynomials == {1: (-2,), 2: (1,)}
        assert fit.tail_start == 1
        assert fit.head == (0,)
        assert fit.multiplicities == {1: 1, 2: 1}
        assert fit.value(0) == 0
        assert fit.value(15) == surjection_count(15, 2)
        assert fit.to_rational_gf() == gf_projective(2)

    def test_surjections_onto_three(self):
        fit = fit_exponential_polynomial([surjection_count(n, 3) for n in range(24)], 3)

        assert fit.polynomials == {1: (3,), 2: (-3,), 3: (1,)}
        assert fit.tail_start == 1

    def test_polynomial(self):
        fit = fit_exponential_polynomial([n * n for n in range(8)], 1)

        assert fit.polynomials == {1: (0, 0, 1)}
        assert fit.tail_start == 0
        assert fit.multiplicities == {1: 3}

    def test_no_fit(self):
        with pytest.raises(NoExponentialFit):
            fit_exponential_polynomial([3 ** n for n in range(6)], 1)

    def test_horizon_too_short(self):
        with pytest.raises(HorizonTooShort):
            fit_exponential_polynomial([1, 2, 3], 2)

    def test_invalid_bound(self):
        with pytest.raises(ValueError):
            fit_exponential_polynomial([1, 2, 3], 0)
