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
    Independence complexes of graphic matroids and their reduced rational homology.

    The faces of the independence complex of a graph are the sets of internal edges containing no cycle. The complex
    is pure and shellable, so its reduced homology is concentrated in the top degree |E| - e - 1, where e is the
    first Betti number. The rank in that degree is denoted I(G); it agrees with the Tutte polynomial evaluated at
    (0, 1), which serves as an independent oracle.

    Usage
    -----

    .. code-block:: python

        >>> theta = HalfEdgeGraph.from_edges(2, [(0, 1), (0, 1), (0, 1)])
        >>> homology_ranks(independence_complex(theta)).ranks
        {-1: 0, 0: 2}
        >>> tutte_01(theta)
        2

    Methods
    -------
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

import sympy
from networkx.utils import UnionFind
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from fsStrata.common import Certificate
from fsStrata.graph_core import Edge, HalfEdgeGraph, betti_1, canonical_form, contract_edges, delete_edges

logger = logging.getLogger(__name__)

Face = Tuple[int, ...]


class IndependenceComplex:
    """
    The simplicial complex of forests of a graph. Vertices of the complex are the indices of the internal edges in
    :meth:`HalfEdgeGraph.internal_edges`, faces are sorted index tuples and the empty face is included.

    :param graph: A connected graph
    :type graph: HalfEdgeGraph
    """

    def __init__(self, graph: HalfEdgeGraph):
        if not graph.is_connected():
            raise ValueError("The independence complex is only defined for connected graphs")
        self.graph = graph
        self.ground_set: Tuple[Edge, ...] = graph.internal_edges()
        self._endpoints = [graph.endpoints(edge) for edge in self.ground_set]
        self.faces: Dict[int, List[Face]] = self._build_faces()

    def _is_forest(self, face: Face) -> bool:
        components = UnionFind()
        for index in face:
            u, w = self._endpoints[index]
            if components[u] == components[w]:
                return False
            components.union(u, w)
        return True

    def _build_faces(self) -> Dict[int, List[Face]]:
        faces = {-1: [()]}
        dimension = -1
        while faces[dimension]:
            larger = [face + (index,) for face in faces[dimension]
                      for index in range((face[-1] + 1) if face else 0, len(self.ground_set))
                      if self._is_forest(face + (index,))]
            dimension += 1
            faces[dimension] = larger
        del faces[dimension]
        return faces

    @property
    def rank(self) -> int:
        """
        The rank |E| - e of the graphic matroid.
        """
        return len(self.ground_set) - betti_1(self.graph)

    @property
    def dimension(self) -> int:
        return max(self.faces)

    def f_vector(self) -> Dict[int, int]:
        return {k: len(v) for k, v in sorted(self.faces.items())}

    def is_pure(self) -> bool:
        """
        True if every maximal face has dimension rank - 1.
        """
        top = set(self.faces.get(self.rank - 1, []))
        return all(any(set(face).issubset(maximal) for maximal in top)
                   for faces in self.faces.values() for face in faces)

    def __len__(self):
        return sum(len(v) for v in self.faces.values())

    def __contains__(self, face):
        face = tuple(sorted(face))
        return face in set(self.faces.get(len(face) - 1, []))


def independence_complex(graph: HalfEdgeGraph) -> IndependenceComplex:
    """
    Builds the independence complex of the graphic matroid of a connected graph.
    """
    return IndependenceComplex(graph)


@dataclass(frozen=True)
class HomologyRanks:
    """
    Ranks of the reduced rational homology per degree, from -1 up to the dimension of the complex.
    """
    ranks: Dict[int, int]
    top_degree: int

    @property
    def i_invariant(self) -> int:
        return self.ranks.get(self.top_degree, 0)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * r for k, r in self.ranks.items())

    def is_concentrated(self) -> bool:
        return all(r == 0 for k, r in self.ranks.items() if k != self.top_degree)


def _boundary_rank(complex_: IndependenceComplex, dimension: int) -> int:
    """
    Rank of the boundary map from faces of the given dimension to faces of one dimension lower.
    """
    faces = complex_.faces.get(dimension, [])
    lower = complex_.faces.get(dimension - 1, [])
    if not faces or not lower:
        return 0
    position = {face: row for row, face in enumerate(lower)}
    rows = [[QQ(0)] * len(faces) for _ in lower]
    for column, face in enumerate(faces):
        for k in range(len(face)):
            rows[position[face[:k] + face[k + 1:]]][column] = QQ((-1) ** k)
    return DomainMatrix(rows, (len(lower), len(faces)), QQ).rank()


def homology_ranks(complex_: IndependenceComplex) -> HomologyRanks:
    """
    Computes the reduced homology ranks over the rationals from the ranks of the boundary matrices, with the
    augmentation to the empty face in degree -1. The complex consisting of the empty face only has rank one in
    degree -1.

    :param complex_: The complex
    :type complex_: IndependenceComplex
    :return: The ranks
    :rtype: HomologyRanks
    """
    boundary = {k: _boundary_rank(complex_, k) for k in complex_.faces}
    ranks = {k: len(faces) - boundary[k] - boundary.get(k + 1, 0) for k, faces in complex_.faces.items()}
    logger.debug("Reduced homology ranks %s of a complex with f-vector %s", ranks, complex_.f_vector())
    return HomologyRanks(ranks, complex_.rank - 1)


def reduced_euler_characteristic(complex_: IndependenceComplex) -> int:
    """
    The alternating sum of the face numbers, including the empty face in dimension -1.
    """
    return sum((-1) ** k * count for k, count in complex_.f_vector().items())


def i_invariant(graph: HalfEdgeGraph) -> int:
    """
    I(G), the rank of the reduced homology of the independence complex in degree |E| - e - 1.

    :param graph: A connected graph
    :type graph: HalfEdgeGraph
    :return: The rank
    :rtype: int
    """
    return homology_ranks(independence_complex(graph)).i_invariant


def _strip_legs(graph: HalfEdgeGraph) -> HalfEdgeGraph:
    legs = set(graph.external_half_edges())
    return HalfEdgeGraph([[h for h in block if h not in legs] for block in graph.vertices], graph.internal_edges())


def _is_bridge(graph: HalfEdgeGraph, edge: Edge) -> bool:
    return not graph.is_loop(edge) and \
        delete_edges(graph, [edge]).number_of_components() > graph.number_of_components()


def _deletion_contraction(graph: HalfEdgeGraph, cache: Dict[Certificate, object], loop, bridge, combine, empty):
    key = canonical_form(graph, labelled=False)
    if key in cache:
        return cache[key]
    edges = graph.internal_edges()
    if not edges:
        value = empty
    else:
        edge = edges[0]
        if graph.is_loop(edge):
            value = loop(_deletion_contraction(delete_edges(graph, [edge]), cache, loop, bridge, combine, empty))
        elif _is_bridge(graph, edge):
            value = bridge(_deletion_contraction(contract_edges(graph, [edge])[0], cache, loop, bridge, combine,
                                                 empty))
        else:
            value = combine(
                _deletion_contraction(delete_edges(graph, [edge]), cache, loop, bridge, combine, empty),
                _deletion_contraction(contract_edges(graph, [edge])[0], cache, loop, bridge, combine, empty))
    cache[key] = value
    return value


def tutte_01(graph: HalfEdgeGraph) -> int:
    """
    Evaluates the Tutte polynomial at x = 0, y = 1 by deletion and contraction: loops are deleted, a bridge gives
    zero, any other edge e gives T(G - e) + T(G / e).

    :param graph: A connected graph
    :type graph: HalfEdgeGraph
    :return: T_G(0, 1)
    :rtype: int
    """
    if not graph.is_connected():
        raise ValueError("The graph has to be connected")
    return _deletion_contraction(_strip_legs(graph), {}, lambda t: t, lambda t: 0, lambda a, b: a + b, 1)


def tutte_polynomial(graph: HalfEdgeGraph) -> sympy.Poly:
    """
    The Tutte polynomial as a polynomial in x and y, by deletion and contraction.

    :param graph: A connected graph
    :type graph: HalfEdgeGraph
    :return: The Tutte polynomial
    :rtype: sympy.Poly
    """
    if not graph.is_connected():
        raise ValueError("The graph has to be connected")
    x, y = sympy.symbols("x y")
    one = sympy.Poly(1, x, y)
    return _deletion_contraction(_strip_legs(graph), {}, lambda t: t * sympy.Poly(y, x, y),
                                 lambda t: t * sympy.Poly(x, x, y), lambda a, b: a + b, one)
