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
    Unittests for decorated_graphs.py
"""

import unittest

# noinspection PyUnresolvedReferences
import pytest

import graph_test_helper
from fsStrata.common import ResourceLimitExceeded
from fsStrata.decorated_graphs import *


class TestCurveClassMonoid(unittest.TestCase):

    def test_degree(self):
        monoid = CurveClassMonoid(degree=(1, 2))

        assert monoid.rank == 2
        assert monoid.zero == (0, 0)
        assert monoid.degree_of((1, 1)) == 3

    def test_element(self):
        assert CurveClassMonoid().element(2) == (2,)
        with pytest.raises(ValueError):
            CurveClassMonoid((1, 1)).element((1,))
        with pytest.raises(ValueError):
            CurveClassMonoid().element(-1)

    def test_invalid_degree(self):
        with pytest.raises(ValueError):
            CurveClassMonoid([])
        with pytest.raises(ValueError):
            CurveClassMonoid([0])

    def test_sub_classes_and_splits(self):
        monoid = CurveClassMonoid((1, 1))

        assert monoid.sub_classes((1, 1)) == [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert CurveClassMonoid().splits((1,)) == [((0,), (1,)), ((1,), (0,))]
        assert monoid.add((1, 0), (0, 2)) == (1, 2)

    def test_decompositions(self):
        monoid = CurveClassMonoid()

        assert list(monoid.decompositions((1,), 2)) == [((0,), (1,)), ((1,), (0,))]
        assert list(monoid.decompositions((1,), 0)) == []
        assert list(monoid.decompositions((0,), 0)) == [()]
        assert len(list(monoid.decompositions((2,), 3))) == 6


class TestDecoratedGraph(unittest.TestCase):

    def test_total_genus(self):
        d = DecoratedGraph(graph_test_helper.loop(), genus=[1])

        assert d.total_genus == 2
        assert d.curve_class == (0,)

    def test_curve_class(self):
        d = DecoratedGraph.from_edges(2, [(0, 1)], classes=[1, 2])

        assert d.curve_class == (3,)
        assert d.decorated_vertices() == [0, 1]
        assert d.plain_vertices() == []

    def test_label_count_mismatch(self):
        with pytest.raises(ValueError):
            DecoratedGraph.from_edges(1, [], {1: 0}, genus=[0, 0])

    def test_negative_genus(self):
        with pytest.raises(ValueError):
            DecoratedGraph.from_edges(1, [], {1: 0}, genus=[-1])

    def test_equality(self):
        assert graph_test_helper.corolla(3) == graph_test_helper.corolla(3)
        assert hash(graph_test_helper.corolla(3)) == hash(graph_test_helper.corolla(3))
        assert graph_test_helper.corolla(3) != graph_test_helper.corolla(3, genus=1)

    def test_relabel_legs(self):
        d = graph_test_helper.two_decorated_vertices().relabel_legs({1: 2, 2: 1})

        assert d.graph.legs_at(0) == (2,)
        assert d.is_isomorphic(graph_test_helper.two_decorated_vertices())

    def test_digest(self):
        assert len(graph_test_helper.corolla(3).digest()) == 64

    def test_automorphism_order(self):
        assert DecoratedGraph(graph_test_helper.theta()).automorphism_order() == 12
        assert DecoratedGraph(graph_test_helper.theta(), genus=[0, 1]).automorphism_order() == 6


class TestStability(unittest.TestCase):

    def test_tripod(self):
        assert is_stable(graph_test_helper.corolla(3))

    def test_plain_vertex_with_two_legs(self):
        assert not is_stable(graph_test_helper.corolla(2))

    def test_genus_one_vertex(self):
        assert is_stable(graph_test_helper.corolla(1, genus=1))
        assert not is_stable(graph_test_helper.corolla(0, genus=1))

    def test_decorated_vertex(self):
        assert is_stable(graph_test_helper.corolla(0, curve_class=1))

    def test_disconnected(self):
        assert not is_stable(DecoratedGraph.from_edges(2, [], classes=[1, 1]))

    def test_invariants(self):
        d = graph_test_helper.corolla(4)

        assert is_stable(d, h=0, n=4, beta=0)
        assert not is_stable(d, n=3)
        assert not is_stable(d, h=1)
        assert not is_stable(d, beta=1)


class TestContractDecorated(unittest.TestCase):

    def test_loop_raises_genus(self):
        d = DecoratedGraph.from_edges(1, [(0, 0)], {1: 0})
        contracted, _ = contract_decorated(d, [(0, 1)])

        assert contracted.genus == (1,)
        assert contracted.total_genus == d.total_genus

    def test_labels_add_up(self):
        d = DecoratedGraph.from_edges(2, [(0, 1)], {1: 0}, genus=[1, 0], classes=[0, 1])
        contracted, contraction = contract_decorated(d, [(0, 1)])

        assert contracted.genus == (1,)
        assert contracted.classes == ((1,),)
        assert contraction.vertex_map == (0, 0)


class TestEnumerateStab(object):

    @pytest.mark.parametrize("h, n, beta, count", [
        (0, 2, 0, 0),
        (0, 3, 0, 1),
        (0, 4, 0, 4),
        (0, 5, 0, 26),
        (1, 1, 0, 2),
        (1, 2, 0, 5),
        (0, 0, 1, 1),
        (0, 2, 1, 2),
    ])
    def test_counts(self, h, n, beta, count):
        assert len(enumerate_stab(h, n, beta)) == count

    @pytest.mark.xdist_group("enumeration_group")
    def test_m06(self):
        assert len(enumerate_stab(0, 6)) == 236

    @pytest.mark.parametrize("h, n, beta", [
        (0, 4, 0),
        (1, 2, 0),
        (0, 2, 1),
        (0, 3, 1),
        (1, 1, 1),
    ])
    def test_naive_generator(self, h, n, beta):
        fast = {d.certificate() for d in enumerate_stab(h, n, beta)}
        naive = {d.certificate() for d in enumerate_stab_naive(h, n, beta)}

        assert fast == naive

    def test_results_are_stable(self):
        bound = max_vertex_count(0, 5)
        for d in enumerate_stab(0, 5):
            assert is_stable(d, h=0, n=5, beta=0)
            assert bound.admits(d)

    def test_rank_two_monoid(self):
        monoid = CurveClassMonoid((1, 1))
        classes = enumerate_stab(0, 1, (1, 1), monoid)

        assert all(d.curve_class == (1, 1) for d in classes)
        assert {d.certificate() for d in classes} == \
               {d.certificate() for d in enumerate_stab_naive(0, 1, (1, 1), monoid)}

    def test_ceiling(self):
        with pytest.raises(ResourceLimitExceeded):
            enumerate_stab(0, 6, ceiling=10)

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            enumerate_stab(-1, 0)
        with pytest.raises(ValueError):
            enumerate_stab_naive(2, 0)
        with pytest.raises(ValueError):
            enumerate_stab_naive(0, 10)


class TestSaturation(unittest.TestCase):

    def test_two_plain_vertices(self):
        d = DecoratedGraph.from_edges(2, [(0, 1)], {1: 0, 2: 0, 3: 1, 4: 1})

        assert not is_saturated(d)
        assert saturate(d).certificate() == graph_test_helper.corolla(4).certificate()

    def test_stab_saturates_to_corolla(self):
        corolla = graph_test_helper.corolla(4).certificate()
        assert all(saturate(d).certificate() == corolla for d in enumerate_stab(0, 4))

    def test_saturated_graph_unchanged(self):
        d = graph_test_helper.corolla(3)
        assert saturate(d) is d

    def test_independent_of_forest(self):
        d = DecoratedGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)], {1: 0, 2: 1, 3: 2})
        expected = DecoratedGraph.from_edges(1, [(0, 0)], {1: 0, 2: 0, 3: 0}).certificate()
        forests = list(plain_spanning_forests(d))

        assert len(forests) == 3
        for forest in forests:
            assert saturate(d, forest).certificate() == expected

    @pytest.mark.xdist_group("stab_group")
    def test_independent_of_forest_on_m06(self):
        stab = enumerate_stab(0, 6)

        assert len(stab) == 236
        for d in stab:
            saturations = {saturate(d, forest).certificate() for forest in plain_spanning_forests(d)}
            assert saturations == {saturate(d).certificate()}

    def test_invalid_forest(self):
        d = DecoratedGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)], {1: 0, 2: 1, 3: 2})
        with pytest.raises(ValueError):
            saturate(d, [(0, 1), (2, 3), (4, 5)])
        with pytest.raises(ValueError):
            saturate(d, [(0, 1)])

    def test_decorated_vertices_kept_apart(self):
        d = graph_test_helper.two_decorated_vertices()
        assert is_saturated(d)

    def test_enumerate_q(self):
        assert len(enumerate_q(0, 5)) == 1
        assert len(enumerate_q(1, 1)) == 2


class TestInvariantI(unittest.TestCase):

    def test_values(self):
        assert invariant_I(graph_test_helper.corolla(4)) == (0, 0, 0)
        assert invariant_I(graph_test_helper.corolla(1, genus=1)) == (1, -1, 1)

    def test_monotone_along_contractions(self):
        poset = build_stab_poset(1, 2)
        for lower, upper in poset.covers():
            assert invariant_I(poset.elements[lower]) <= invariant_I(poset.elements[upper])

    @pytest.mark.xdist_group("stab_group")
    def test_equal_exactly_for_plain_edges(self):
        poset = build_stab_poset(1, 2, 1)
        equal, strict = 0, 0
        for lower, upper in poset.covers():
            decorated = poset.elements[lower]
            a, b = poset.witness(lower, upper)
            u, w = decorated.graph.vertex_of(a), decorated.graph.vertex_of(b)
            before, after = invariant_I(decorated), invariant_I(poset.elements[upper])
            if u != w and decorated.is_plain(u) and decorated.is_plain(w):
                assert before == after
                equal += 1
            else:
                assert before < after
                strict += 1

        assert equal > 0
        assert strict > 0

    def test_plain_vertex_into_non_plain(self):
        # the plain vertex has valence m = 4
        d = DecoratedGraph.from_edges(2, [(0, 1)], {1: 0, 2: 1, 3: 1, 4: 1}, classes=[1, 0])
        contracted, _ = contract_decorated(d, d.graph.internal_edges())

        assert invariant_I(d) == (0, -1, 2)
        assert invariant_I(contracted) == (0, -1, 2 + 4 - 2)

    def test_loop_raises_genus(self):
        d = graph_test_helper.corolla(1, curve_class=1)
        loop = DecoratedGraph.from_edges(1, [(0, 0)], {1: 0}, classes=[1])
        contracted, _ = contract_decorated(loop, loop.graph.internal_edges())

        assert invariant_I(loop) < invariant_I(contracted)
        assert invariant_I(contracted)[0] == invariant_I(d)[0] + 1


class TestContractionPoset(unittest.TestCase):

    def test_stab_m04(self):
        poset = build_stab_poset(0, 4)
        corolla = graph_test_helper.corolla(4).certificate()

        assert len(poset) == 4
        assert len(poset.covers()) == 3
        assert poset.is_antisymmetric()
        assert poset.maximal_elements() == [corolla]
        assert len(poset.minimal_elements()) == 3
        assert len(poset.relation_pairs()) == 3
        assert poset.hasse_diagram().number_of_edges() == 3
        assert all(poset.leq(c, corolla) for c in poset)

    def test_witness(self):
        poset = build_stab_poset(1, 1)
        (lower, upper), = poset.covers()

        assert poset.witness(lower, upper) in poset.elements[lower].graph.internal_edges()

    def test_to_json(self):
        data = build_stab_poset(0, 4).to_json()

        assert len(data["elements"]) == 4
        assert len(data["covers"]) == 3
        assert len(data["relations"]) == 3

    def test_q_poset(self):
        assert len(build_q_poset(0, 4)) == 1
        poset = build_q_poset(1, 1)

        assert len(poset) == 2
        assert len(poset.covers()) == 1

    def test_saturation_map(self):
        poset = build_stab_poset(0, 4)
        corolla = graph_test_helper.corolla(4).certificate()

        assert set(saturation_map(poset).values()) == {corolla}

    def test_unknown_elements(self):
        a = graph_test_helper.corolla(3)
        with pytest.raises(ValueError):
            ContractionPoset({a.certificate(): a}, [(a.certificate(), ("unknown",), None)])

    def test_cycle(self):
        a, b = graph_test_helper.corolla(3), graph_test_helper.corolla(4)
        poset = ContractionPoset({a.certificate(): a, b.certificate(): b},
                                 [(a.certificate(), b.certificate(), None), (b.certificate(), a.certificate(), None)])

        assert not poset.is_antisymmetric()
        assert len(poset.find_cycle()) == 2
        with pytest.raises(ValueError):
            poset.hasse_diagram()


class TestPullback(unittest.TestCase):

    def test_merging_two_legs(self):
        tripod = graph_test_helper.corolla(3)
        surjection = {1: 1, 2: 1, 3: 2, 4: 3}
        pulled = pullback(tripod, surjection, saturated=False)

        assert pulled.graph.number_of_vertices == 2
        assert sorted(pulled.graph.labels.values()) == [1, 2, 3, 4]
        assert pulled.graph.legs_at(1) == (1, 2)
        assert pullback(tripod, surjection).certificate() == graph_test_helper.corolla(4).certificate()

    def test_bijection_relabels(self):
        pulled = pullback(graph_test_helper.two_decorated_vertices(), {1: 2, 2: 1})
        assert pulled.graph.legs_at(0) == (2,)

    def test_invalid_surjections(self):
        tripod = graph_test_helper.corolla(3)
        with pytest.raises(ValueError):
            pullback(tripod, {2: 1, 3: 2, 4: 3})
        with pytest.raises(ValueError):
            pullback(tripod, {1: 1, 2: 2})
