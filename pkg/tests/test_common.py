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
    Unittests for common.py
"""
import unittest
from fractions import Fraction

# noinspection PyUnresolvedReferences
import pytest
# noinspection PyUnresolvedReferences
import pytest_socket

from fsStrata.common import *


class TestResourceGuard(unittest.TestCase):

    def test_within_ceiling(self):
        guard = ResourceGuard("test", 3)
        guard.tick()
        guard.tick(2)

        assert guard.count == 3

    def test_exceeding_ceiling(self):
        guard = ResourceGuard("test", 3)
        guard.tick(3)

        with pytest.raises(ResourceLimitExceeded) as info:
            guard.tick()
        assert info.value.what == "test"
        assert info.value.ceiling == 3
        assert info.value.count == 4

    def test_default_ceiling(self):
        assert ResourceGuard("test").ceiling == DEFAULT_CEILING

    def test_invalid_ceiling(self):
        with pytest.raises(ValueError):
            ResourceGuard("test", 0)

    def test_error_hierarchy(self):
        assert issubclass(ResourceLimitExceeded, FsStrataError)
        assert issubclass(CounterexampleFound, FsStrataError)

        error = CounterexampleFound("some property", {"graph": "G"})
        assert error.prop == "some property"
        assert error.payload == {"graph": "G"}


class TestArithmetic(unittest.TestCase):

    def test_binomial(self):
        assert binomial(5, 2) == 10
        assert binomial(5, 0) == 1
        assert binomial(5, 6) == 0
        assert binomial(5, -1) == 0
        assert binomial(60, 30) == 118264581564861424

    def test_multinomial(self):
        assert multinomial([2, 1, 1]) == 12
        assert multinomial([]) == 1
        assert multinomial([3]) == 1

    def test_ceil_fraction(self):
        assert ceil_fraction(Fraction(13, 2)) == 7
        assert ceil_fraction(Fraction(-1, 2)) == 0
        assert ceil_fraction(4) == 4


class TestCompositions(unittest.TestCase):

    def test_all_compositions(self):
        assert list(compositions(2, 2)) == [(0, 2), (1, 1), (2, 0)]

    def test_count(self):
        assert len(list(compositions(4, 3))) == binomial(6, 2)

    def test_minimums(self):
        assert list(compositions(3, 2, [1, 1])) == [(1, 2), (2, 1)]
        assert list(compositions(1, 2, [1, 1])) == []

    def test_negative_minimums_are_ignored(self):
        assert list(compositions(1, 2, [-2, 0])) == [(0, 1), (1, 0)]

    def test_wrong_number_of_minimums(self):
        with pytest.raises(ValueError):
            list(compositions(1, 2, [0]))

    def test_no_parts(self):
        assert list(compositions(0, 0)) == [()]
        assert list(compositions(1, 0)) == []


class TestCertificateDigest(unittest.TestCase):

    def test_stable(self):
        assert certificate_digest((1, (2, 3))) == certificate_digest((1, (2, 3)))
        assert certificate_digest((1, (2, 3))) != certificate_digest((1, (3, 2)))
        assert len(certificate_digest(())) == 64
