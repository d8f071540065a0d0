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
    Stable decorated graphs over an abstract monoid of curve classes, the finite sets Stab(h,n,beta) of their
    isomorphism classes, saturation, and the two contraction posets on Stab(h,n,beta) and on its saturated quotient
    Q(h,n,beta).

    A vertex is *undecorated* if its curve class vanishes and *plain* if in addition its genus is zero. A decorated
    graph is stable if it is connected, every plain vertex has valence at least three and every undecorated genus one
    vertex has valence at least one.

    Usage
    -----

    .. code-block:: python

        >>> len(enumerate_stab(0, 4))
        4
        >>> poset = build_stab_poset(1, 2)
        >>> poset.is_antisymmetric()
        True

    Curve classes live in a :class:`CurveClassMonoid`; the default is the rank one monoid with degree one:

    .. code-block:: python

        >>> monoid = CurveClassMonoid(degree=(1, 2))
        >>> monoid.degree_of((1, 1))
        3

    Methods
    -------
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
from tqdm import tqdm

from fsStrata.common import Certificate, CounterexampleFound, CurveClass, ResourceGuard, certificate_digest
from fsStrata.graph_core import (Contraction, Edge, HalfEdgeGraph, add_edge, automorphism_group_order, betti_1,
                                 canonical_form, contract_edges, split_vertex)

logger = logging.getLogger(__name__)

ClassLike = Union[int, Sequence[int]]


class CurveClassMonoid:
    """
    Effective curve classes modelled as vectors of nonnegative integers, together with an ample degree functional
    L given by one positive integer weight per coordinate.

    :param degree: The weights of the degree functional; its length is the rank of the monoid
    :type degree: Sequence[int]
    """

    def __init__(self, degree: Sequence[int] = (1,)):
        weights = [int(d) for d in degree]
        if not weights:
            raise ValueError("A curve class monoid needs rank at least one")
        if any(w < 1 for w in weights):
            raise ValueError("The degree functional has to be positive, got {}".format(weights))
        self._degree = np.array(weights, dtype=np.int64)

    @property
    def rank(self) -> int:
        return len(self._degree)

    @property
    def degree(self) -> Tuple[int, ...]:
        return tuple(int(d) for d in self._degree)

    @property
    def zero(self) -> CurveClass:
        return (0,) * self.rank

    def element(self, values: ClassLike) -> CurveClass:
        """
        Validates a curve class. Integers are accepted for rank one monoids.

        :param values: Coordinates of the class
        :type values: Union[int, Sequence[int]]
        :return: The class as a tuple
        :rtype: CurveClass
        """
        if isinstance(values, (int, np.integer)):
            values = (int(values),)
        alpha = tuple(int(x) for x in values)
        if not self.is_effective(alpha):
            raise ValueError("{} is not an effective class of a rank {} monoid".format(alpha, self.rank))
        return alpha

    def is_effective(self, alpha: Sequence[int]) -> bool:
        return len(alpha) == self.rank and all(x >= 0 for x in alpha)

    def degree_of(self, alpha: Sequence[int]) -> int:
        """
        The ample degree L.alpha.
        """
        return int(np.dot(self._degree, np.asarray(alpha, dtype=np.int64)))

    def add(self, *classes: Sequence[int]) -> CurveClass:
        if not classes:
            return self.zero
        return tuple(int(x) for x in np.sum(np.asarray(classes, dtype=np.int64), axis=0))

    def sub_classes(self, beta: Sequence[int]) -> List[CurveClass]:
        """
        All effective classes alpha such that beta - alpha is effective, in lexicographic order.
        """
        return [tuple(int(x) for x in index) for index in np.ndindex(*(b + 1 for b in beta))]

    def splits(self, beta: Sequence[int]) -> List[Tuple[CurveClass, CurveClass]]:
        """
        All ordered pairs of effective classes summing to beta.
        """
        beta = tuple(beta)
        return [(alpha, tuple(b - a for a, b in zip(alpha, beta))) for alpha in self.sub_classes(beta)]

    def decompositions(self, beta: Sequence[int], parts: int) -> Iterator[Tuple[CurveClass, ...]]:
        """
        All ordered tuples of the given length of effective classes summing to beta.
        """
        if parts == 0:
            if not any(beta):
                yield ()
            return
        if parts == 1:
            yield (tuple(beta),)
            return
        for first, rest in self.splits(beta):
            for tail in self.decompositions(rest, parts - 1):
                yield (first,) + tail

    def __eq__(self, other):
        return isinstance(other, CurveClassMonoid) and self.degree == other.degree

    def __hash__(self):
        return hash(self.degree)

    def __repr__(self):
        return "CurveClassMonoid(degree={})".format(self.degree)


class DecoratedGraph:
    """
    A half-edge graph together with a genus and a curve class for every vertex.

    :param graph: The underlying graph
    :type graph: HalfEdgeGraph
    :param genus: Genus label per vertex index, zero if omitted
    :type genus: Optional[Sequence[int]]
    :param classes: Curve class per vertex index, zero if omitted
    :type classes: Optional[Sequence[Union[int, Sequence[int]]]]
    :param monoid: The curve class monoid, rank one with degree one if omitted
    :type monoid: Optional[CurveClassMonoid]
    """

    def __init__(self, graph: HalfEdgeGraph, genus: Optional[Sequence[int]] = None,
                 classes: Optional[Sequence[ClassLike]] = None, monoid: Optional[CurveClassMonoid] = None):
        self.monoid = monoid if monoid is not None else CurveClassMonoid()
        size = graph.number_of_vertices
        self.graph = graph
        self.genus = tuple(int(g) for g in genus) if genus is not None else (0,) * size
        self.classes = tuple(self.monoid.element(a) for a in classes) if classes is not None \
            else (self.monoid.zero,) * size
        if len(self.genus) != size or len(self.classes) != size:
            raise ValueError("Expected genus and class labels for each of the {} vertices".format(size))
        if any(g < 0 for g in self.genus):
            raise ValueError("Genus labels have to be nonnegative")
        self._certificates: Dict[bool, Certificate] = {}

    @staticmethod
    def from_edges(n_vertices: int, edges: Iterable[Tuple[int, int]], legs: Optional[Mapping[int, int]] = None,
                   genus: Optional[Sequence[int]] = None, classes: Optional[Sequence[ClassLike]] = None,
                   monoid: Optional[CurveClassMonoid] = None) -> DecoratedGraph:
        """
        Shorthand for decorating :meth:`HalfEdgeGraph.from_edges`.
        """
        return DecoratedGraph(HalfEdgeGraph.from_edges(n_vertices, edges, legs), genus, classes, monoid)

    @property
    def total_genus(self) -> int:
        """
        The arithmetic genus h^1(G) + sum of g(v).
        """
        return betti_1(self.graph) + sum(self.genus)

    @property
    def curve_class(self) -> CurveClass:
        return self.monoid.add(*self.classes)

    @property
    def n_legs(self) -> int:
        return self.graph.n_external

    def is_undecorated(self, vertex: int) -> bool:
        return not any(self.classes[vertex])

    def is_decorated(self, vertex: int) -> bool:
        return any(self.classes[vertex])

    def is_plain(self, vertex: int) -> bool:
        return self.genus[vertex] == 0 and not any(self.classes[vertex])

    def plain_vertices(self) -> List[int]:
        return [v for v in range(self.graph.number_of_vertices) if self.is_plain(v)]

    def non_plain_vertices(self) -> List[int]:
        return [v for v in range(self.graph.number_of_vertices) if not self.is_plain(v)]

    def decorated_vertices(self) -> List[int]:
        return [v for v in range(self.graph.number_of_vertices) if self.is_decorated(v)]

    def vertex_colors(self) -> List[Tuple[int, CurveClass]]:
        return list(zip(self.genus, self.classes))

    def certificate(self, labelled: bool = True) -> Certificate:
        """
        Canonical certificate of the decorated graph, see :func:`fsStrata.graph_core.canonical_form`.

        :param labelled: If false, leg labels are forgotten
        :type labelled: bool
        :return: The certificate
        :rtype: Certificate
        """
        if labelled not in self._certificates:
            self._certificates[labelled] = canonical_form(self.graph, self.vertex_colors(), labelled)
        return self._certificates[labelled]

    def digest(self) -> str:
        return certificate_digest(self.certificate())

    def automorphism_order(self) -> int:
        return automorphism_group_order(self.graph, self.vertex_colors())

    def is_isomorphic(self, other: DecoratedGraph) -> bool:
        return self.certificate() == other.certificate()

    def relabel_legs(self, mapping: Mapping[int, int]) -> DecoratedGraph:
        return DecoratedGraph(self.graph.relabel_legs(mapping), self.genus, self.classes, self.monoid)

    def __eq__(self, other):
        if not isinstance(other, DecoratedGraph):
            return NotImplemented
        return (self.graph == other.graph and self.genus == other.genus and self.classes == other.classes
                and self.monoid == other.monoid)

    def __hash__(self):
        return hash((self.graph, self.genus, self.classes))

    def __repr__(self):
        return "DecoratedGraph({!r}, genus={}, classes={})".format(self.graph, list(self.genus),
                                                                  [list(a) for a in self.classes])


def _stable_vertex(genus: int, undecorated: bool, valence: int) -> bool:
    if not undecorated:
        return True
    if genus == 0:
        return valence >= 3
    if genus == 1:
        return valence >= 1
    return True


def is_stable(decorated: DecoratedGraph, h: Optional[int] = None, n: Optional[int] = None,
              beta: Optional[ClassLike] = None) -> bool:
    """
    Checks whether the decorated graph is stable: the graph is connected, plain vertices have valence at least
    three and undecorated genus one vertices have valence at least one. If h, n or beta are given, the total genus,
    the number of legs and the total curve class have to match as well.

    :param decorated: The decorated graph
    :type decorated: DecoratedGraph
    :param h: Expected total genus
    :type h: Optional[int]
    :param n: Expected number of legs, labelled 1..n
    :type n: Optional[int]
    :param beta: Expected total curve class
    :type beta: Optional[Union[int, Sequence[int]]]
    :return: True if and only if all conditions hold
    :rtype: bool
    """
    if not decorated.graph.is_connected():
        return False
    if h is not None and decorated.total_genus != h:
        return False
    if n is not None and sorted(decorated.graph.labels.values()) != list(range(1, n + 1)):
        return False
    if beta is not None and decorated.curve_class != decorated.monoid.element(beta):
        return False
    return all(_stable_vertex(decorated.genus[v], decorated.is_undecorated(v), decorated.graph.valence(v))
               for v in range(decorated.graph.number_of_vertices))


def contract_decorated(decorated: DecoratedGraph,
                       edges: Iterable[Iterable[int]]) -> Tuple[DecoratedGraph, Contraction]:
    """
    Contracts internal edges of a decorated graph. The class of a new vertex is the sum of the classes of its
    fiber; its genus is the sum of the genera of the fiber plus the first Betti number of the contracted edges
    inside the fiber.

    :param decorated: The decorated graph
    :type decorated: DecoratedGraph
    :param edges: Internal edges as pairs of half-edges
    :type edges: Iterable[Iterable[int]]
    :return: The contracted decorated graph and the contraction of the underlying graphs
    :rtype: Tuple[DecoratedGraph, Contraction]
    """
    target, contraction = contract_edges(decorated.graph, edges)
    fibers: List[List[int]] = [[] for _ in range(target.number_of_vertices)]
    for vertex, image in enumerate(contraction.vertex_map):
        fibers[image].append(vertex)
    inner_edges = [0] * target.number_of_vertices
    for a, _ in contraction.contracted_edges():
        inner_edges[contraction.vertex_map[decorated.graph.vertex_of(a)]] += 1

    genus = [sum(decorated.genus[v] for v in fiber) + inner_edges[t] - len(fiber) + 1
             for t, fiber in enumerate(fibers)]
    classes = [decorated.monoid.add(*(decorated.classes[v] for v in fiber)) for fiber in fibers]
    return DecoratedGraph(target, genus, classes, decorated.monoid), contraction


@dataclass(frozen=True)
class VertexBound:
    """
    The vertex count bound of a stable graph in Stab(h,n,beta): at most `special` vertices are non-plain or carry
    a leg, at most `plain_interior` vertices are plain without legs.
    """
    special: int
    plain_interior: int

    @property
    def total(self) -> int:
        return self.special + self.plain_interior

    def admits(self, decorated: DecoratedGraph) -> bool:
        graph = decorated.graph
        special = sum(1 for v in range(graph.number_of_vertices)
                      if not decorated.is_plain(v) or graph.legs_at(v))
        return special <= self.special and graph.number_of_vertices - special <= self.plain_interior


def max_vertex_count(h: int, n: int, beta: Optional[ClassLike] = None,
                     monoid: Optional[CurveClassMonoid] = None) -> VertexBound:
    """
    Bounds the number of vertices of the graphs in Stab(h,n,beta) by an Euler characteristic argument: with
    a = L.beta + h + n, at most a vertices are non-plain or carry a leg, and every plain vertex without legs lowers
    the Euler characteristic by at least 1/2, which is at least 1 - h. Hence there are at most 2a + n + 2h - 2 of
    them.

    :return: The bound
    :rtype: VertexBound
    """
    monoid = monoid if monoid is not None else CurveClassMonoid()
    beta = monoid.zero if beta is None else monoid.element(beta)
    special = monoid.degree_of(beta) + h + n
    return VertexBound(special, max(2 * special + n + 2 * h - 2, 0))


def _expansions(decorated: DecoratedGraph) -> Iterator[DecoratedGraph]:
    """
    All stable decorated graphs with one more edge that contract onto the given one along the new edge.
    """
    graph, monoid = decorated.graph, decorated.monoid
    for vertex, block in enumerate(graph.vertices):
        genus, alpha = decorated.genus[vertex], decorated.classes[vertex]
        undecorated = not any(alpha)

        if genus >= 1 and _stable_vertex(genus - 1, undecorated, len(block) + 2):
            expanded, _ = add_edge(graph, vertex, vertex)
            new_genus = list(decorated.genus)
            new_genus[vertex] = genus - 1
            yield DecoratedGraph(expanded, new_genus, decorated.classes, monoid)

        # the first half-edge always stays, so every unordered split is visited once
        fixed, free = list(block[:1]), block[1:]
        for size in range(len(free) + 1):
            for chosen in itertools.combinations(free, size):
                kept = fixed + list(chosen)
                kept_valence = len(kept) + 1
                moved_valence = len(block) - len(kept) + 1
                for kept_genus in range(genus + 1):
                    for kept_class, moved_class in monoid.splits(alpha):
                        if not (_stable_vertex(kept_genus, not any(kept_class), kept_valence)
                                and _stable_vertex(genus - kept_genus, not any(moved_class), moved_valence)):
                            continue
                        expanded, _ = split_vertex(graph, vertex, kept)
                        new_genus = list(decorated.genus) + [genus - kept_genus]
                        new_genus[vertex] = kept_genus
                        new_classes = list(decorated.classes) + [moved_class]
                        new_classes[vertex] = kept_class
                        yield DecoratedGraph(expanded, new_genus, new_classes, monoid)


def _corolla(h: int, n: int, beta: CurveClass, monoid: CurveClassMonoid) -> DecoratedGraph:
    return DecoratedGraph.from_edges(1, [], {label: 0 for label in range(1, n + 1)}, [h], [beta], monoid)


def enumerate_stab(h: int, n: int, beta: Optional[ClassLike] = None, monoid: Optional[CurveClassMonoid] = None,
                   ceiling: Optional[int] = None, progress: bool = False) -> List[DecoratedGraph]:
    """
    Enumerates Stab(h,n,beta), one representative per isomorphism class.

    Every stable graph with at least one edge contracts along any single edge to a stable graph with one edge less,
    so all classes are reached from the one-vertex graph by repeatedly inserting loops and splitting vertices.
    Candidates are deduplicated by their canonical certificate and checked against :func:`max_vertex_count`.

    :param h: Total genus
    :type h: int
    :param n: Number of legs
    :type n: int
    :param beta: Total curve class, zero if omitted
    :type beta: Optional[Union[int, Sequence[int]]]
    :param monoid: The curve class monoid
    :type monoid: Optional[CurveClassMonoid]
    :param ceiling: Maximal number of generated candidates
    :type ceiling: Optional[int]
    :param progress: Show a progress bar
    :type progress: bool
    :return: The representatives, sorted by certificate
    :rtype: List[DecoratedGraph]
    """
    if h < 0 or n < 0:
        raise ValueError("h and n have to be nonnegative, got h={}, n={}".format(h, n))
    monoid = monoid if monoid is not None else CurveClassMonoid()
    beta = monoid.zero if beta is None else monoid.element(beta)

    top = _corolla(h, n, beta, monoid)
    if not is_stable(top):
        logger.info("Stab(%d,%d,%s) is empty", h, n, beta)
        return []

    guard = ResourceGuard("Stab({},{},{})".format(h, n, beta), ceiling)
    bound = max_vertex_count(h, n, beta, monoid)
    found = {top.certificate(): top}
    level = dict(found)
    edges = 0
    with tqdm(desc="Stab({},{},{})".format(h, n, beta), unit=" classes", disable=not progress) as bar:
        bar.update(1)
        while level:
            following: Dict[Certificate, DecoratedGraph] = {}
            for decorated in level.values():
                for candidate in _expansions(decorated):
                    guard.tick()
                    if not bound.admits(candidate):
                        raise CounterexampleFound("vertex count bound", {"h": h, "n": n, "beta": list(beta),
                                                                         "graph": repr(candidate)})
                    following.setdefault(candidate.certificate(), candidate)
            edges += 1
            if following:
                logger.info("Stab(%d,%d,%s): %d classes with %d edges", h, n, beta, len(following), edges)
            found.update(following)
            bar.update(len(following))
            level = following
    return [found[c] for c in sorted(found)]


def is_saturated(decorated: DecoratedGraph) -> bool:
    """
    True if no two distinct plain vertices are adjacent.
    """
    graph = decorated.graph
    for a, b in graph.internal_edges():
        u, w = graph.vertex_of(a), graph.vertex_of(b)
        if u != w and decorated.is_plain(u) and decorated.is_plain(w):
            return False
    return True


def _plain_subgraph(decorated: DecoratedGraph) -> nx.MultiGraph:
    graph = decorated.graph
    plain = set(decorated.plain_vertices())
    result = nx.MultiGraph()
    result.add_nodes_from(sorted(plain))
    for a, b in graph.internal_edges():
        u, w = graph.vertex_of(a), graph.vertex_of(b)
        if u != w and u in plain and w in plain:
            result.add_edge(u, w, key=(a, b))
    return result


def plain_spanning_forests(decorated: DecoratedGraph) -> Iterator[List[Edge]]:
    """
    Iterates over all spanning forests of the subgraph of plain vertices and the non-loop edges between them.
    """
    plain_graph = _plain_subgraph(decorated)
    if plain_graph.number_of_nodes() == 0:
        yield []
        return
    size = plain_graph.number_of_nodes() - nx.number_connected_components(plain_graph)
    for chosen in itertools.combinations(sorted(plain_graph.edges(keys=True)), size):
        forest = nx.MultiGraph()
        forest.add_nodes_from(plain_graph)
        forest.add_edges_from(chosen)
        if nx.is_forest(forest):
            yield [key for _, _, key in chosen]


def saturate(decorated: DecoratedGraph, forest: Optional[Iterable[Iterable[int]]] = None) -> DecoratedGraph:
    """
    Computes the saturation by contracting a spanning forest of the subgraph spanned by the plain vertices and the
    non-loop edges between them. The result does not depend on the forest up to isomorphism.

    :param decorated: A stable decorated graph
    :type decorated: DecoratedGraph
    :param forest: A spanning forest as edges given by pairs of half-edges; computed if omitted
    :type forest: Optional[Iterable[Iterable[int]]]
    :return: The saturated graph
    :rtype: DecoratedGraph
    """
    plain_graph = _plain_subgraph(decorated)
    if forest is None:
        forest = [key for _, _, key in nx.minimum_spanning_edges(plain_graph, algorithm="kruskal", keys=True,
                                                                 data=False)]
    else:
        forest = sorted(tuple(sorted(edge)) for edge in forest)
        available = {key: (u, w) for u, w, key in plain_graph.edges(keys=True)}
        if any(edge not in available for edge in forest):
            raise ValueError("A spanning forest may only use edges between distinct plain vertices")
        chosen = nx.MultiGraph()
        chosen.add_nodes_from(plain_graph)
        chosen.add_edges_from(available[edge] for edge in forest)
        if plain_graph.number_of_nodes() and (
                not nx.is_forest(chosen)
                or nx.number_connected_components(chosen) != nx.number_connected_components(plain_graph)):
            raise ValueError("The given edges do not form a spanning forest of the plain subgraph")
    if not forest:
        return decorated
    return contract_decorated(decorated, forest)[0]


def invariant_I(decorated: DecoratedGraph) -> Tuple[int, int, int]:
    """
    The invariant (sum of g(v), -#non-plain vertices, sum of n(v) over non-plain vertices). It is weakly increasing
    along contractions and strictly increasing unless two distinct plain vertices get merged.

    :param decorated: The decorated graph
    :type decorated: DecoratedGraph
    :return: The triple, to be compared lexicographically
    :rtype: Tuple[int, int, int]
    """
    non_plain = decorated.non_plain_vertices()
    return (sum(decorated.genus), -len(non_plain), sum(decorated.graph.valence(v) for v in non_plain))


class ContractionPoset:
    """
    A finite poset of isomorphism classes of decorated graphs given by its covering relations. A class [G] lies
    below [G'] if there is a contraction G -> G', so graphs with fewer edges are larger.

    :param elements: Representative per certificate
    :type elements: Mapping[Certificate, DecoratedGraph]
    :param covers: Triples (lower, upper, witness); the witness is the contracted edge or None
    :type covers: Iterable[Tuple[Certificate, Certificate, Optional[Edge]]]
    """

    def __init__(self, elements: Mapping[Certificate, DecoratedGraph],
                 covers: Iterable[Tuple[Certificate, Certificate, Optional[Edge]]] = ()):
        self.elements = dict(elements)
        self.digraph = nx.DiGraph()
        self.digraph.add_nodes_from(sorted(self.elements))
        for lower, upper, witness in covers:
            if lower not in self.elements or upper not in self.elements:
                raise ValueError("Covering relation between unknown classes")
            if not self.digraph.has_edge(lower, upper):
                self.digraph.add_edge(lower, upper, witness=witness)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements))

    def __contains__(self, certificate):
        return certificate in self.elements

    def leq(self, lower: Certificate, upper: Certificate) -> bool:
        return lower == upper or nx.has_path(self.digraph, lower, upper)

    def covers(self) -> List[Tuple[Certificate, Certificate]]:
        return sorted(self.digraph.edges())

    def witness(self, lower: Certificate, upper: Certificate) -> Optional[Edge]:
        return self.digraph.edges[lower, upper]["witness"]

    def is_antisymmetric(self) -> bool:
        """
        The relation is antisymmetric if and only if the cover digraph has no directed cycle.
        """
        return nx.is_directed_acyclic_graph(self.digraph)

    def find_cycle(self) -> List[Tuple[Certificate, Certificate]]:
        try:
            return [(u, w) for u, w in nx.find_cycle(self.digraph)]
        except nx.NetworkXNoCycle:
            return []

    def relation_pairs(self) -> List[Tuple[Certificate, Certificate]]:
        """
        All pairs lower < upper of the transitive closure.
        """
        if self.is_antisymmetric():
            closure = nx.transitive_closure_dag(self.digraph)
        else:
            closure = nx.transitive_closure(self.digraph, reflexive=False)
        return sorted((u, w) for u, w in closure.edges() if u != w)

    def hasse_diagram(self) -> nx.DiGraph:
        """
        The covering relations of the partial order as a digraph from lower to upper classes.
        """
        if not self.is_antisymmetric():
            raise ValueError("The relation is not antisymmetric, so there is no Hasse diagram")
        return nx.transitive_reduction(self.digraph)

    def minimal_elements(self) -> List[Certificate]:
        return sorted(c for c in self.elements if self.digraph.in_degree(c) == 0)

    def maximal_elements(self) -> List[Certificate]:
        return sorted(c for c in self.elements if self.digraph.out_degree(c) == 0)

    def to_json(self) -> dict:
        """
        The poset as JSON data: elements as certificate digests, relations as pairs of digests.
        """
        digests = {c: certificate_digest(c) for c in self.elements}
        covers = self.hasse_diagram() if self.is_antisymmetric() else self.digraph
        return {
            "elements": sorted(digests.values()),
            "covers": sorted([digests[u], digests[w]] for u, w in covers.edges()),
            "relations": sorted([digests[u], digests[w]] for u, w in self.relation_pairs()),
        }


def build_stab_poset(h: int, n: int, beta: Optional[ClassLike] = None, monoid: Optional[CurveClassMonoid] = None,
                     ceiling: Optional[int] = None, stab: Optional[Sequence[DecoratedGraph]] = None,
                     progress: bool = False) -> ContractionPoset:
    """
    Builds the contraction poset on Stab(h,n,beta). Its covering relations are the single edge contractions.

    :param stab: Optionally a previously computed result of :func:`enumerate_stab`
    :type stab: Optional[Sequence[DecoratedGraph]]
    :return: The poset
    :rtype: ContractionPoset
    """
    if stab is None:
        stab = enumerate_stab(h, n, beta, monoid, ceiling, progress)
    elements = {decorated.certificate(): decorated for decorated in stab}
    covers = []
    for certificate, decorated in elements.items():
        for edge in decorated.graph.internal_edges():
            contracted, _ = contract_decorated(decorated, [edge])
            covers.append((certificate, contracted.certificate(), edge))
    return ContractionPoset(elements, covers)


def saturation_map(stab_poset: ContractionPoset) -> Dict[Certificate, Certificate]:
    """
    Maps every class of a Stab poset to the class of its saturation.
    """
    return {c: saturate(decorated).certificate() for c, decorated in stab_poset.elements.items()}


def enumerate_q(h: int, n: int, beta: Optional[ClassLike] = None, monoid: Optional[CurveClassMonoid] = None,
                ceiling: Optional[int] = None) -> List[DecoratedGraph]:
    """
    Enumerates Q(h,n,beta), the saturated classes of Stab(h,n,beta).
    """
    return [decorated for decorated in enumerate_stab(h, n, beta, monoid, ceiling) if is_saturated(decorated)]


def build_q_poset(h: int, n: int, beta: Optional[ClassLike] = None, monoid: Optional[CurveClassMonoid] = None,
                  ceiling: Optional[int] = None, stab_poset: Optional[ContractionPoset] = None) -> ContractionPoset:
    """
    Builds the poset Q(h,n,beta) on saturated classes. Its relation is the transitive closure of the saturations
    of all relations of the Stab poset.

    :param stab_poset: Optionally a previously computed result of :func:`build_stab_poset`
    :type stab_poset: Optional[ContractionPoset]
    :return: The poset
    :rtype: ContractionPoset
    """
    if stab_poset is None:
        stab_poset = build_stab_poset(h, n, beta, monoid, ceiling)
    projection = saturation_map(stab_poset)
    elements = {c: d for c, d in stab_poset.elements.items() if is_saturated(d)}
    missing = set(projection.values()) - set(elements)
    if missing:
        raise CounterexampleFound("saturation is a retraction", {"missing": sorted(map(certificate_digest,
                                                                                      missing))})
    covers = [(projection[u], projection[w], None) for u, w in stab_poset.covers() if projection[u] != projection[w]]
    return ContractionPoset(elements, covers)


def pullback(decorated: DecoratedGraph, surjection: Mapping[int, int], saturated: bool = True) -> DecoratedGraph:
    """
    The action of a surjection f: {1..m} -> {1..n} on a graph with legs 1..n: a leg j with a single preimage is
    relabelled, a leg j with several preimages is replaced by an edge to a new plain vertex carrying the legs of
    the fiber of j.

    :param decorated: A decorated graph with n legs
    :type decorated: DecoratedGraph
    :param surjection: Maps every label 1..m to a label of the graph
    :type surjection: Mapping[int, int]
    :param saturated: Saturate the result
    :type saturated: bool
    :return: The pulled back graph
    :rtype: DecoratedGraph
    """
    graph = decorated.graph
    if sorted(surjection) != list(range(1, len(surjection) + 1)):
        raise ValueError("The surjection has to be defined on 1..m")
    if set(surjection.values()) != set(graph.labels.values()):
        raise ValueError("The surjection has to map onto the leg labels of the graph")

    fibers: Dict[int, List[int]] = {}
    for source, target in sorted(surjection.items()):
        fibers.setdefault(target, []).append(source)

    blocks = [list(block) for block in graph.vertices]
    pairs = list(graph.internal_edges())
    labels = {}
    genus, classes = list(decorated.genus), list(decorated.classes)
    next_id = max(graph.half_edges) + 1
    for half_edge in graph.external_half_edges():
        fiber = fibers[graph.label(half_edge)]
        if len(fiber) == 1:
            labels[half_edge] = fiber[0]
            continue
        pairs.append((half_edge, next_id))
        block = [next_id]
        next_id += 1
        for label in fiber:
            block.append(next_id)
            labels[next_id] = label
            next_id += 1
        blocks.append(block)
        genus.append(0)
        classes.append(decorated.monoid.zero)

    result = DecoratedGraph(HalfEdgeGraph(blocks, pairs, labels), genus, classes, decorated.monoid)
    return saturate(result) if saturated else result


def _leg_assignments(n: int, needs: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    counts = [0] * len(needs)
    assignment: List[int] = []

    def _recurse(label: int):
        deficit = sum(max(0, need - count) for need, count in zip(needs, counts))
        if deficit > n - label + 1:
            return
        if label > n:
            yield tuple(assignment)
            return
        for vertex in range(len(needs)):
            counts[vertex] += 1
            assignment.append(vertex)
            yield from _recurse(label + 1)
            counts[vertex] -= 1
            assignment.pop()

    yield from _recurse(1)


def _naive_skeleta(h: int, max_vertices: int) -> Iterator[Tuple[int, List[Tuple[int, int]], Tuple[int, ...]]]:
    for atlas_graph in nx.graph_atlas_g():
        order = atlas_graph.number_of_nodes()
        if order > max_vertices:
            break
        if order == 0 or not nx.is_connected(atlas_graph):
            continue
        edges = sorted(tuple(sorted(edge)) for edge in atlas_graph.edges())
        zeros = (0,) * order
        if len(edges) == order - 1:
            if h == 0:
                yield order, edges, zeros
                continue
            for vertex in range(order):
                yield order, edges, tuple(1 if v == vertex else 0 for v in range(order))
                yield order, edges + [(vertex, vertex)], zeros
            for edge in edges:
                yield order, edges + [edge], zeros
        elif len(edges) == order and h == 1:
            yield order, edges, zeros


def enumerate_stab_naive(h: int, n: int, beta: Optional[ClassLike] = None,
                         monoid: Optional[CurveClassMonoid] = None) -> List[DecoratedGraph]:
    """
    Independent enumeration of Stab(h,n,beta) for h <= 1: every connected skeleton of first Betti number at most
    h with at most 2h - 2 + n + 2L.beta vertices is taken from the networkX graph atlas, decorated in all labelled
    ways and deduplicated with :func:`networkx.is_isomorphic`.

    :return: One representative per isomorphism class
    :rtype: List[DecoratedGraph]
    """
    if h not in (0, 1):
        raise ValueError("The naive generator only supports h <= 1")
    monoid = monoid if monoid is not None else CurveClassMonoid()
    beta = monoid.zero if beta is None else monoid.element(beta)
    max_vertices = max(1, 2 * h - 2 + n + 2 * monoid.degree_of(beta))
    if max_vertices > 7:
        raise ValueError("The graph atlas only covers graphs with up to 7 vertices, {} are needed"
                         .format(max_vertices))

    buckets: Dict[tuple, List[Tuple[nx.MultiGraph, DecoratedGraph]]] = {}
    for order, edges, genus in _naive_skeleta(h, max_vertices):
        degrees = [0] * order
        for u, w in edges:
            degrees[u] += 1
            degrees[w] += 1
        for classes in monoid.decompositions(beta, order):
            needs = []
            for vertex in range(order):
                required = 0 if any(classes[vertex]) else (3 if genus[vertex] == 0 else int(genus[vertex] == 1))
                needs.append(required - degrees[vertex])
            for assignment in _leg_assignments(n, needs):
                legs = {label + 1: vertex for label, vertex in enumerate(assignment)}
                decorated = DecoratedGraph.from_edges(order, edges, legs, genus, classes, monoid)
                multigraph = decorated.graph.to_networkx()
                for vertex in multigraph.nodes:
                    multigraph.nodes[vertex]["decoration"] = (genus[vertex], classes[vertex],
                                                              multigraph.nodes[vertex]["legs"])
                key = tuple(sorted((multigraph.nodes[v]["decoration"], multigraph.degree(v),
                                    multigraph.number_of_edges(v, v)) for v in multigraph.nodes))
                bucket = buckets.setdefault(key, [])
                if not any(nx.is_isomorphic(multigraph, other,
                                            node_match=lambda a, b: a["decoration"] == b["decoration"])
                           for other, _ in bucket):
                    bucket.append((multigraph, decorated))

    result = [decorated for bucket in buckets.values() for _, decorated in bucket]
    logger.info("Naive generator found %d classes of Stab(%d,%d,%s)", len(result), h, n, beta)
    return sorted(result, key=lambda d: d.certificate())
