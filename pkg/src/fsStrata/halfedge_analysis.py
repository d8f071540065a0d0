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
    Free and bound half-edges of stable decorated graphs and the bounds derived from them.

    A half-edge f at a non-plain vertex v is *free* if v is undecorated, or if every path starting with f and ending
    in a decorated vertex passes through v. Half-edges at plain vertices are *plain-adjacent*, all remaining ones are
    *bound*. Bound half-edges are equivalent if a path avoiding decorated vertices joins them.

    On top of this classification the module checks the bound on bound half-edges, the bound on plain vertices
    and the bound on external edges of stable trees, and it implements the reduction of saturated graphs to
    representatives of their orbits, the product decomposition of the corresponding strata and the resulting height
    constant.

    Usage
    -----

    .. code-block:: python

        >>> d = DecoratedGraph.from_edges(2, [(0, 1)], {1: 0, 2: 1}, classes=[1, 1])
        >>> count_free(d)
        2
        >>> bound_halfedge_bound(d)
        2
        >>> height_constant(2, 1, 1)
        98

    Methods
    -------
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import networkx as nx

from fsStrata.common import Certificate, CounterexampleFound, CurveClass, ceil_fraction
from fsStrata.decorated_graphs import (ClassLike, CurveClassMonoid, DecoratedGraph, contract_decorated,
                                       enumerate_q, is_saturated)
from fsStrata.graph_core import HalfEdgeGraph, betti_1, excess_trees

logger = logging.getLogger(__name__)


class FreeEdgeSemantics(Enum):
    """
    How "every path from f to a decorated vertex passes through v" is read for paths returning to v itself.

    INTERIOR: v has to be an interior vertex of the path, so a path returning to v does not pass through it and the
    half-edges of such a path are bound. This includes self edges at decorated vertices.

    ENDPOINT: a path ending in v passes through v, so returning paths and self edges are free.
    """
    INTERIOR = "interior"
    ENDPOINT = "endpoint"


class HalfEdgeTag(Enum):
    FREE = "free"
    BOUND = "bound"
    PLAIN_ADJACENT = "plain-adjacent"


@dataclass(frozen=True)
class HalfEdgeClassification:
    """
    The tag of every half-edge, the number F(v) of free half-edges per vertex and the equivalence classes of bound
    half-edges.
    """
    tags: Dict[int, HalfEdgeTag]
    free_count: Tuple[int, ...]
    classes: Tuple[Tuple[int, ...], ...]

    def with_tag(self, tag: HalfEdgeTag) -> List[int]:
        return sorted(h for h, t in self.tags.items() if t == tag)

    def free_half_edges(self) -> List[int]:
        return self.with_tag(HalfEdgeTag.FREE)

    def bound_half_edges(self) -> List[int]:
        return self.with_tag(HalfEdgeTag.BOUND)

    @property
    def count_free(self) -> int:
        return sum(self.free_count)

    def class_of(self, half_edge: int) -> Tuple[int, ...]:
        for equivalence_class in self.classes:
            if half_edge in equivalence_class:
                return equivalence_class
        raise KeyError("Half-edge {} is not bound".format(half_edge))


def _is_free_at_decorated(decorated: DecoratedGraph, vertex: int, half_edge: int,
                          semantics: FreeEdgeSemantics) -> bool:
    graph = decorated.graph
    partner = graph.sigma(half_edge)
    if partner == half_edge:
        return True
    other = graph.vertex_of(partner)
    if other == vertex:
        return semantics == FreeEdgeSemantics.ENDPOINT

    rest = graph.to_networkx()
    rest.remove_node(vertex)
    component = nx.node_connected_component(rest, other)
    if any(decorated.is_decorated(u) for u in component):
        return False
    if semantics == FreeEdgeSemantics.INTERIOR:
        edge = tuple(sorted((half_edge, partner)))
        for a, b in graph.internal_edges():
            if (a, b) != edge and {graph.vertex_of(a), graph.vertex_of(b)} & {vertex} \
                    and {graph.vertex_of(a), graph.vertex_of(b)} & component:
                return False
    return True


def classify_half_edges(decorated: DecoratedGraph,
                        semantics: FreeEdgeSemantics = FreeEdgeSemantics.INTERIOR) -> HalfEdgeClassification:
    """
    Classifies every half-edge as free, bound or plain-adjacent and computes the equivalence classes of bound
    half-edges as the connected components of an auxiliary graph: the undecorated vertices together with one pendant
    node per bound half-edge, joined along the internal edges.

    :param decorated: A stable decorated graph
    :type decorated: DecoratedGraph
    :param semantics: Reading of paths returning to the vertex itself
    :type semantics: FreeEdgeSemantics
    :return: The classification
    :rtype: HalfEdgeClassification
    """
    graph = decorated.graph
    tags: Dict[int, HalfEdgeTag] = {}
    free_count = []
    for vertex, block in enumerate(graph.vertices):
        if decorated.is_plain(vertex):
            tag = {h: HalfEdgeTag.PLAIN_ADJACENT for h in block}
        elif decorated.is_undecorated(vertex):
            tag = {h: HalfEdgeTag.FREE for h in block}
        else:
            tag = {h: HalfEdgeTag.FREE if _is_free_at_decorated(decorated, vertex, h, semantics)
                   else HalfEdgeTag.BOUND for h in block}
        tags.update(tag)
        free_count.append(sum(1 for t in tag.values() if t == HalfEdgeTag.FREE))

    def _node(half_edge: int):
        vertex = graph.vertex_of(half_edge)
        if decorated.is_decorated(vertex):
            return ("half-edge", half_edge) if tags[half_edge] == HalfEdgeTag.BOUND else None
        return ("vertex", vertex)

    auxiliary = nx.Graph()
    auxiliary.add_nodes_from(("half-edge", h) for h, t in tags.items() if t == HalfEdgeTag.BOUND)
    for a, b in graph.internal_edges():
        u, w = _node(a), _node(b)
        if u is not None and w is not None:
            auxiliary.add_edge(u, w)
    classes = []
    for component in nx.connected_components(auxiliary):
        members = tuple(sorted(h for kind, h in component if kind == "half-edge"))
        if members:
            classes.append(members)
    return HalfEdgeClassification(tags, tuple(free_count), tuple(sorted(classes)))


def count_free(decorated: DecoratedGraph, semantics: FreeEdgeSemantics = FreeEdgeSemantics.INTERIOR) -> int:
    """
    The number of free half-edges.
    """
    return classify_half_edges(decorated, semantics).count_free


def vanishing_predicate(decorated: DecoratedGraph, i: int,
                        semantics: FreeEdgeSemantics = FreeEdgeSemantics.INTERIOR) -> bool:
    """
    True if the graph has more than i free half-edges, in which case its stratum does not contribute to the i-th
    homology.
    """
    return count_free(decorated, semantics) > i


def bipartite_contraction_graph(decorated: DecoratedGraph,
                                semantics: FreeEdgeSemantics = FreeEdgeSemantics.INTERIOR,
                                classification: Optional[HalfEdgeClassification] = None) -> HalfEdgeGraph:
    """
    The bipartite graph G' with one vertex per decorated vertex (first, in vertex order), one vertex per equivalence
    class of bound half-edges, and one edge per bound half-edge joining its vertex to its class.

    :param decorated: A stable decorated graph with at least one bound half-edge
    :type decorated: DecoratedGraph
    :return: The graph G'
    :rtype: HalfEdgeGraph
    """
    if classification is None:
        classification = classify_half_edges(decorated, semantics)
    bound = classification.bound_half_edges()
    if not bound:
        raise ValueError("The graph has no bound half-edges")
    for equivalence_class in classification.classes:
        if len(equivalence_class) < 2:
            raise CounterexampleFound("equivalence classes have size at least two",
                                      {"graph": repr(decorated), "class": list(equivalence_class)})

    decorated_index = {v: index for index, v in enumerate(decorated.decorated_vertices())}
    class_index = {h: len(decorated_index) + index
                   for index, equivalence_class in enumerate(classification.classes) for h in equivalence_class}
    edges = [(decorated_index[decorated.graph.vertex_of(h)], class_index[h]) for h in bound]
    return HalfEdgeGraph.from_edges(len(decorated_index) + len(classification.classes), edges)


def bipartite_euler_characteristic(decorated: DecoratedGraph, classification: HalfEdgeClassification) -> Fraction:
    """
    The Euler characteristic of G' as #decorated vertices + sum over bound half-edges h of (1/|[h]| - 1).
    """
    return len(decorated.decorated_vertices()) + sum(
        (Fraction(1, len(classification.class_of(h))) - 1 for h in classification.bound_half_edges()), Fraction(0))


def bound_halfedge_bound(decorated: DecoratedGraph,
                         semantics: FreeEdgeSemantics = FreeEdgeSemantics.INTERIOR) -> int:
    """
    Counts the bound half-edges and checks that there are at most 2g - 2 + 2L.beta of them, where g is the total
    genus and beta the total class. The check goes through G': its Euler characteristic is at least 1 - g, and every
    bound half-edge lowers it by at least 1/2 while every decorated vertex raises it by one.

    :param decorated: A stable decorated graph with at least one bound half-edge
    :type decorated: DecoratedGraph
    :param semantics: Reading of paths returning to the vertex itself
    :type semantics: FreeEdgeSemantics
    :raises CounterexampleFound: If one of the inequalities fails
    :return: The number of bound half-edges
    :rtype: int
    """
    classification = classify_half_edges(decorated, semantics)
    g_prime = bipartite_contraction_graph(decorated, semantics, classification)
    bound = len(classification.bound_half_edges())
    genus = decorated.total_genus
    degree = decorated.monoid.degree_of(decorated.curve_class)

    euler = g_prime.number_of_vertices - len(g_prime.internal_edges())
    payload = {"graph": repr(decorated), "bound": bound, "euler_characteristic": euler}
    if euler != bipartite_euler_characteristic(decorated, classification):
        raise CounterexampleFound("Euler characteristic of G'", payload)
    if euler < 1 - genus:
        raise CounterexampleFound("Euler characteristic of G' is at least 1 - g", payload)
    if bound > 2 * genus - 2 + 2 * degree:
        raise CounterexampleFound("bound half-edges", payload)
    return bound


def decorated_vertex_bound(decorated: DecoratedGraph) -> bool:
    """
    True if there are at most L.beta decorated vertices.
    """
    return len(decorated.decorated_vertices()) <= decorated.monoid.degree_of(decorated.curve_class)


def _check_free_precondition(decorated: DecoratedGraph, i: int, semantics: FreeEdgeSemantics) -> int:
    free = count_free(decorated, semantics)
    if free > i:
        raise ValueError("The graph has {} > {} free half-edges".format(free, i))
    return free


def check_plain_bound(decorated: DecoratedGraph, i: int,
                      semantics: FreeEdgeSemantics = FreeEdgeSemantics.INTERIOR) -> bool:
    """
    Checks that a saturated graph with at most i free half-edges has at most max(i + 2g + 2L.beta, 1) plain
    vertices.

    :param decorated: A saturated stable decorated graph
    :type decorated: DecoratedGraph
    :param i: Upper bound on the free half-edges
    :type i: int
    :return: True if the bound holds
    :rtype: bool
    """
    if not is_saturated(decorated):
        raise ValueError("The graph has to be saturated")
    _check_free_precondition(decorated, i, semantics)
    degree = decorated.monoid.degree_of(decorated.curve_class)
    return len(decorated.plain_vertices()) <= max(i + 2 * decorated.total_genus + 2 * degree, 1)


def check_nonplain_valence_bound(decorated: DecoratedGraph, i: int,
                                 semantics: FreeEdgeSemantics = FreeEdgeSemantics.INTERIOR) -> bool:
    """
    Checks that the valences of the non-plain vertices of a graph with at most i free half-edges sum up to at most
    i + max(2g - 2 + 2L.beta, 0).
    """
    _check_free_precondition(decorated, i, semantics)
    degree = decorated.monoid.degree_of(decorated.curve_class)
    total = sum(decorated.graph.valence(v) for v in decorated.non_plain_vertices())
    return total <= i + max(2 * decorated.total_genus - 2 + 2 * degree, 0)


@dataclass(frozen=True)
class TreeBoundReport:
    """
    The quantities of the external edge bound for a stable tree of excess i: the number of trivalent vertices without
    legs (m30) and with one leg (m31) and the number s of vertices of valence greater than three.
    """
    i: int
    external_count: int
    m30: int
    m31: int
    s: int
    single_vertex: bool
    ok: bool

    @property
    def bound(self) -> Fraction:
        return Fraction(13 * self.i, 2)


def tree_precondition_failure(tree: HalfEdgeGraph, i: int) -> Optional[str]:
    """
    Returns the first violated precondition of the external edge bound, or None if the tree qualifies.
    """
    if not tree.is_connected() or betti_1(tree) != 0:
        return "simply connected"
    if any(tree.valence(v) < 3 for v in range(tree.number_of_vertices)):
        return "all valences at least 3"
    if sum(tree.valence(v) - 3 for v in range(tree.number_of_vertices)) != i:
        return "sum of n(v) - 3 equals i"
    trivalent_with_leg = set()
    for v in range(tree.number_of_vertices):
        if tree.valence(v) == 3:
            legs = len(tree.legs_at(v))
            if legs >= 2:
                return "no trivalent vertex with at least 2 external edges"
            if legs == 1:
                trivalent_with_leg.add(v)
    for a, b in tree.internal_edges():
        if tree.vertex_of(a) in trivalent_with_leg and tree.vertex_of(b) in trivalent_with_leg:
            return "no adjacent trivalent vertices both with an external edge"
    return None


def check_tree_bound(tree: HalfEdgeGraph, i: int) -> TreeBoundReport:
    """
    Checks that a stable tree of excess i without reducible configurations has at most 13i/2 external edges,
    together with the intermediate inequalities m30 <= s - 2 and 2 m31 <= 3 m30 + 3s + i.

    :param tree: A tree with all valences at least three
    :type tree: HalfEdgeGraph
    :param i: The excess, sum of n(v) - 3
    :type i: int
    :raises ValueError: If a precondition fails, naming it
    :return: The report
    :rtype: TreeBoundReport
    """
    failure = tree_precondition_failure(tree, i)
    if failure is not None:
        raise ValueError("Precondition failed: {}".format(failure))

    external = tree.n_external
    m30 = m31 = s = 0
    for v in range(tree.number_of_vertices):
        if tree.valence(v) > 3:
            s += 1
        elif len(tree.legs_at(v)) == 0:
            m30 += 1
        else:
            m31 += 1

    within = Fraction(external) <= Fraction(13 * i, 2)
    single_vertex = tree.number_of_vertices == 1
    if single_vertex:
        ok = within
    else:
        ok = m30 <= s - 2 and 2 * m31 <= 3 * m30 + 3 * s + i and within
    return TreeBoundReport(i, external, m30, m31, s, single_vertex, ok)


def qualifying_trees(i: int, max_vertices: Optional[int] = None) -> List[HalfEdgeGraph]:
    """
    All trees of excess i meeting the preconditions of :func:`check_tree_bound`, one per shape.

    Leaves of the skeleton need at least two legs and therefore valence at least four, so skeleta with more than i
    leaves are skipped. By default, trees with up to two vertices more than the proven bound (11i - 10)/2 are
    searched.

    :param i: The excess
    :type i: int
    :param max_vertices: Largest number of vertices to search
    :type max_vertices: Optional[int]
    :return: The qualifying trees
    :rtype: List[HalfEdgeGraph]
    """
    if max_vertices is None:
        max_vertices = max(1, (11 * i - 10) // 2) + 2
    trees = excess_trees(i, max_vertices=max_vertices, max_leaves=i)
    result = [tree for tree in trees if tree_precondition_failure(tree, i) is None]
    logger.info("%d of %d trees of excess %d qualify", len(result), len(trees), i)
    return result


class ReducedGraph(DecoratedGraph):
    """
    A saturated stable decorated graph in which every plain vertex carries at most one leg. The only exception is a
    graph consisting of a single plain vertex, which keeps as many legs as its stability requires.
    """

    def __init__(self, graph: HalfEdgeGraph, genus=None, classes=None, monoid: Optional[CurveClassMonoid] = None):
        super().__init__(graph, genus, classes, monoid)
        if not is_reduced(self):
            raise ValueError("The graph is not reduced")

    @staticmethod
    def from_decorated(decorated: DecoratedGraph) -> ReducedGraph:
        return ReducedGraph(decorated.graph, decorated.genus, decorated.classes, decorated.monoid)


def _lone_vertex_legs(decorated: DecoratedGraph) -> int:
    return max(1, 3 - 2 * decorated.graph.loops_at(0))


def is_reduced(decorated: DecoratedGraph) -> bool:
    if not is_saturated(decorated):
        return False
    graph = decorated.graph
    if graph.number_of_vertices == 1 and decorated.is_plain(0):
        return len(graph.legs_at(0)) <= _lone_vertex_legs(decorated)
    return all(len(graph.legs_at(v)) <= 1 for v in decorated.plain_vertices())


def reduce_graph(decorated: DecoratedGraph) -> ReducedGraph:
    """
    Computes the reduced representative of the orbit of a saturated graph: every plain vertex keeps only its
    smallest leg, plain vertices left with one leg and one edge are contracted into their neighbour and the legs
    are renumbered 1..n in the order of their old labels.

    :param decorated: A saturated stable decorated graph
    :type decorated: DecoratedGraph
    :return: The reduced graph
    :rtype: ReducedGraph
    """
    if not is_saturated(decorated):
        raise ValueError("Only saturated graphs can be reduced")
    graph = decorated.graph
    lone = graph.number_of_vertices == 1 and decorated.is_plain(0)

    dropped = set()
    for vertex in decorated.plain_vertices():
        keep = _lone_vertex_legs(decorated) if lone else 1
        legs = sorted((graph.label(h), h) for h in graph.vertices[vertex] if graph.is_external(h))
        dropped.update(h for _, h in legs[keep:])
    stripped = HalfEdgeGraph([[h for h in block if h not in dropped] for block in graph.vertices],
                             graph.internal_edges(), {h: l for h, l in graph.labels.items() if h not in dropped})
    result = DecoratedGraph(stripped, decorated.genus, decorated.classes, decorated.monoid)

    unstable = [next(h for h in stripped.vertices[v] if not stripped.is_external(h))
                for v in result.plain_vertices() if stripped.valence(v) == 2 and len(stripped.legs_at(v)) == 1]
    if unstable:
        result = contract_decorated(result, [(h, stripped.sigma(h)) for h in unstable])[0]

    order = sorted(result.graph.labels.values())
    result = result.relabel_legs({old: new for new, old in enumerate(order, start=1)})
    return ReducedGraph.from_decorated(result)


@dataclass
class OrbitEntry:
    """
    A reduced representative together with the number of saturated classes of its orbit per number of legs.
    """
    representative: ReducedGraph
    sizes: Dict[int, int] = field(default_factory=dict)

    @property
    def free(self) -> int:
        return count_free(self.representative)


def orbit_decompose(h: int, n: int, beta: Optional[ClassLike] = None, i_max: int = 0,
                    monoid: Optional[CurveClassMonoid] = None, ceiling: Optional[int] = None,
                    semantics: FreeEdgeSemantics = FreeEdgeSemantics.INTERIOR) -> List[OrbitEntry]:
    """
    Decomposes the saturated classes Q(h,m,beta) with at most i_max free half-edges, for m = 0..n, into orbits.
    Two classes lie in the same orbit if their reduced graphs agree up to relabelling the legs.

    :param h: Total genus
    :type h: int
    :param n: Largest number of legs
    :type n: int
    :param beta: Total curve class
    :type beta: Optional[Union[int, Sequence[int]]]
    :param i_max: Largest number of free half-edges
    :type i_max: int
    :return: The orbits, ordered by the certificate of their representative
    :rtype: List[OrbitEntry]
    """
    orbits: Dict[Certificate, OrbitEntry] = {}
    for legs in range(n + 1):
        for decorated in enumerate_q(h, legs, beta, monoid, ceiling):
            if count_free(decorated, semantics) > i_max:
                continue
            reduced = reduce_graph(decorated)
            entry = orbits.setdefault(reduced.certificate(labelled=False), OrbitEntry(reduced))
            entry.sizes[legs] = entry.sizes.get(legs, 0) + 1
    logger.info("Q(%d,<=%d,%s) with <= %d free half-edges splits into %d orbits", h, n, beta, i_max, len(orbits))
    return [orbits[c] for c in sorted(orbits)]


def reduced_leg_bound(i: int, g: int, degree: int) -> int:
    """
    Bound max(i + 2g + 2 deg, 1) + i on the number of legs of a reduced graph with at most i free half-edges.
    """
    return max(i + 2 * g + 2 * degree, 1) + i


def enumerate_reduced(h: int, beta: Optional[ClassLike] = None, i_max: int = 0,
                      monoid: Optional[CurveClassMonoid] = None, ceiling: Optional[int] = None,
                      semantics: FreeEdgeSemantics = FreeEdgeSemantics.INTERIOR) -> List[ReducedGraph]:
    """
    Lists the reduced orbit representatives with at most i_max free half-edges across all numbers of legs, one per
    class up to relabelling. The search range of leg counts is :func:`reduced_leg_bound`, extended to three for the
    single plain vertex.
    """
    monoid = monoid if monoid is not None else CurveClassMonoid()
    beta = monoid.zero if beta is None else monoid.element(beta)
    limit = max(reduced_leg_bound(i_max, h, monoid.degree_of(beta)), 3)
    found: Dict[Certificate, ReducedGraph] = {}
    for legs in range(limit + 1):
        for decorated in enumerate_q(h, legs, beta, monoid, ceiling):
            if is_reduced(decorated) and count_free(decorated, semantics) <= i_max:
                found.setdefault(decorated.certificate(labelled=False), ReducedGraph.from_decorated(decorated))
    return [found[c] for c in sorted(found)]


def check_reduced_leg_bound(reduced: DecoratedGraph, i: int,
                            semantics: FreeEdgeSemantics = FreeEdgeSemantics.INTERIOR,
                            variant: Optional[HeightVariant] = None) -> bool:
    """
    Checks n(K) <= max(b, 1) for a reduced graph K with at most i free half-edges, where b is the
    :func:`height_leg_bound` of the variant. The single plain vertex with three legs is exempt.

    :param reduced: A reduced graph
    :type reduced: DecoratedGraph
    :param i: Bound on the free half-edges of the graph
    :type i: int
    :param variant: Which constant the legs have to fit, STANDARD by default
    :type variant: Optional[HeightVariant]
    :return: True if the bound holds
    :rtype: bool
    """
    _check_free_precondition(reduced, i, semantics)
    graph = reduced.graph
    if graph.number_of_vertices == 1 and reduced.is_plain(0) and graph.loops_at(0) == 0:
        return True
    degree = reduced.monoid.degree_of(reduced.curve_class)
    bound = height_leg_bound(i, reduced.total_genus, degree, variant or HeightVariant.STANDARD)
    return graph.n_external <= max(bound, 1)


@dataclass(frozen=True)
class StratumFactor:
    """
    A factor of Y(K): either the stable maps of a non-plain vertex, or the locus of genus e curves with all
    components of genus zero for a plain vertex without legs, with e self edges and r remaining half-edges.
    """
    vertex: int
    genus: int
    points: int
    curve_class: CurveClass
    plain_locus: bool

    def render(self) -> str:
        if self.plain_locus:
            return "M'_{{{},{}}}(X,0)".format(self.genus, self.points)
        return "M_{{{},{}}}(X,{})".format(self.genus, self.points, list(self.curve_class))


@dataclass(frozen=True)
class LegFamily:
    """
    The family N_K(h, x) attached to the leg h: the moduli space of genus `genus` curves, all components of genus
    zero, with |x| + `offset` marked points, or a point if |x| + `offset` <= 2.
    """
    label: int
    vertex: int
    genus: int
    offset: int
    plain: bool

    def is_point(self, fiber_size: int) -> bool:
        return fiber_size + self.offset <= 2

    def render(self) -> str:
        return "N({},x) = Mbar_{{{},x+{},0}}".format(self.label, self.genus, self.offset)


@dataclass(frozen=True)
class StratumFactorization:
    """
    The product decomposition Y(K) x prod over legs h of N_K(h, f^-1(h)) of the orbit of a reduced graph K.
    """
    vertex_factors: Tuple[StratumFactor, ...]
    leg_families: Tuple[LegFamily, ...]

    @property
    def factor_count(self) -> int:
        return 1 + len(self.leg_families)

    def render(self) -> str:
        lines = ["Y(K) = " + (" x ".join(f.render() for f in self.vertex_factors) or "point")]
        lines += [family.render() for family in self.leg_families]
        return "\n".join(lines)


def stratum_factorization(reduced: DecoratedGraph) -> StratumFactorization:
    """
    Computes the symbolic product decomposition of the orbit of a reduced graph. Y(K) has a factor for every vertex
    that is non-plain or carries no leg. A leg at a non-plain vertex contributes genus zero curves with one extra
    point; a leg at a plain vertex v with e self edges and r half-edges outside self edges contributes genus e curves
    with r - 1 extra points.

    :param reduced: A reduced graph
    :type reduced: DecoratedGraph
    :return: The factorization
    :rtype: StratumFactorization
    """
    if not is_reduced(reduced):
        raise ValueError("The graph is not reduced")
    graph = reduced.graph
    factors = []
    for v in range(graph.number_of_vertices):
        loops = graph.loops_at(v)
        if not reduced.is_plain(v):
            factors.append(StratumFactor(v, reduced.genus[v], graph.valence(v), reduced.classes[v], False))
        elif not graph.legs_at(v):
            factors.append(StratumFactor(v, loops, graph.valence(v) - 2 * loops, reduced.classes[v], True))

    families = []
    for half_edge in graph.external_half_edges():
        v = graph.vertex_of(half_edge)
        label = graph.label(half_edge)
        if reduced.is_plain(v):
            loops = graph.loops_at(v)
            families.append(LegFamily(label, v, loops, graph.valence(v) - 2 * loops - 1, True))
        else:
            families.append(LegFamily(label, v, 0, 1, False))
    return StratumFactorization(tuple(factors), tuple(families))


class HeightVariant(Enum):
    """
    The two constants: STANDARD uses the factor i + 2g + 2 deg + 1, LEG_BOUND the factor 2i + 2g + 2 deg + 1
    arising from the leg bound of reduced graphs.
    """
    STANDARD = "standard"
    LEG_BOUND = "leg-bound"


def height_constant(i: int, g: int, degree: int, variant: HeightVariant = HeightVariant.STANDARD) -> int:
    """
    The height bound (13i/2 + 1)(i + 2g + 2 deg + 1), or (13i/2 + 1)(2i + 2g + 2 deg + 1) for the LEG_BOUND variant,
    computed exactly and rounded up.

    :param i: Homological degree
    :type i: int
    :param g: Genus
    :type g: int
    :param degree: The degree L.alpha
    :type degree: int
    :param variant: Which constant
    :type variant: HeightVariant
    :return: The integer bound
    :rtype: int
    """
    first = Fraction(13 * i, 2) + 1
    return ceil_fraction(first * (height_leg_bound(i, g, degree, variant) + 1))


def height_leg_bound(i: int, g: int, degree: int, variant: HeightVariant = HeightVariant.STANDARD) -> int:
    """
    The number of legs of a reduced graph accounted for by the height constant: i + 2g + 2 deg, or 2i + 2g + 2 deg
    for the LEG_BOUND variant.
    """
    if min(i, g, degree) < 0:
        raise ValueError("i, g and the degree have to be nonnegative")
    leading = i if variant == HeightVariant.STANDARD else 2 * i
    return leading + 2 * g + 2 * degree


def leaf_height(j: int) -> int:
    """
    The height bound max(13j/2, 1) of the genus zero pieces, rounded up.
    """
    return max(math.ceil(Fraction(13 * j, 2)), 1)
