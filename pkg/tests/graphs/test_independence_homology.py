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
    Unittests for independence_homology.py
"""

import unittest

# noinspection PyUnresolvedReferences
import pytest
import sympy

import graph_test_helper
from fsStrata.graph_core import HalfEdgeGraph, betti_1, connected_multigraphs
from fsStrata.independence_homology import *


class TestIndependenceComplex(unittest.TestCase):

    def test_triangle(self):
        complex_ = independence_complex(graph_test_helper.triangle())

        assert complex_.f_vector() == {-1: 1, 0: 3, 1: 3}
        assert complex_.rank == 2
        assert complex_.dimension == 1
        assert len(complex_) == 7
        assert (0, 2) in complex_
        assert (0, 1, 2) not in complex_
        assert complex_.is_pure()
        assert reduced_euler_characteristic(complex_) == -1

    def test_loop_has_only_the_empty_face(self):
        complex_ = independence_complex(graph_test_helper.loop())

        assert complex_.f_vector() == {-1: 1}
        assert complex_.rank == 0

    def test_disconnected(self):
        with pytest.raises(ValueError):
            independence_complex(HalfEdgeGraph.from_edges(2, []))


class TestHomologyRanks(object):

    @pytest.mark.parametrize("graph, ranks", [
        (graph_test_helper.point(), {-1: 1}),
        (graph_test_helper.loop(), {-1: 1}),
        (HalfEdgeGraph.from_edges(2, [(0, 1)]), {-1: 0, 0: 0}),
        (graph_test_helper.theta(), {-1: 0, 0: 2}),
        (graph_test_helper.triangle(), {-1: 0, 0: 0, 1: 1}),
    ])
    def test_ranks(self, graph, ranks):
        assert homology_ranks(independence_complex(graph)).ranks == ranks

    @pytest.mark.parametrize("graph, expected", [
        (graph_test_helper.point(), 1),
        (graph_test_helper.loop(), 1),
        (HalfEdgeGraph.from_edges(2, [(0, 1)]), 0),
        (graph_test_helper.theta(), 2),
        (graph_test_helper.triangle(), 1),
        (graph_test_helper.dumbbell(), 0),
    ])
    def test_i_invariant(self, graph, expected):
        assert i_invariant(graph) == expected
        assert tutte_01(graph) == expected

    def test_legs_are_ignored(self):
        graph = HalfEdgeGraph.from_edges(2, [(0, 1), (0, 1)], {1: 0, 2: 1})

        assert i_invariant(graph) == 1
        assert tutte_01(graph) == 1

    def test_euler_characteristic(self):
        ranks = homology_ranks(independence_complex(graph_test_helper.triangle()))

        assert ranks.euler_characteristic == -1
        assert ranks.is_concentrated()

    @pytest.mark.xdist_group("multigraph_group")
    def test_agrees_with_tutte_evaluation(self):
        for graphs in connected_multigraphs(3).values():
            for graph in graphs:
                complex_ = independence_complex(graph)
                ranks = homology_ranks(complex_)

                assert complex_.rank == len(graph.internal_edges()) - betti_1(graph)
                assert complex_.is_pure()
                assert ranks.is_concentrated()
                assert ranks.i_invariant == tutte_01(graph)
                assert ranks.euler_characteristic == reduced_euler_characteristic(complex_)


class TestTuttePolynomial(unittest.TestCase):

    def test_theta(self):
        x, y = sympy.symbols("x y")
        assert tutte_polynomial(graph_test_helper.theta()) == sympy.Poly(x + y + y ** 2, x, y)

    def test_triangle(self):
        x, y = sympy.symbols("x y")
        assert tutte_polynomial(graph_test_helper.triangle()) == sympy.Poly(x ** 2 + x + y, x, y)

    def test_evaluation(self):
        x, y = sympy.symbols("x y")
        polynomial = tutte_polynomial(graph_test_helper.theta())
        assert polynomial.as_expr().subs({x: 0, y: 1}) == tutte_01(graph_test_helper.theta())
        assert tutte_polynomial(graph_test_helper.dumbbell()) == sympy.Poly(x * y ** 2, x, y)

    def test_disconnected(self):
        with pytest.raises(ValueError):
            tutte_01(HalfEdgeGraph.from_edges(2, []))
