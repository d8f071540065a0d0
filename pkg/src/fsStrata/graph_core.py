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
    Graphs in the half-edge formalism: a finite set of half-edges, an involution pairing half-edges into internal
    edges and a partition of the half-edges into vertices. The fixed points of the involution are the external
    edges (legs); each of them carries a marking label.

    Besides the data structure itself, this module implements contractions, isomorphism testing via canonical
    forms and the automorphism groups of such graphs, together with two generators used throughout the package:
    stable trees of a given excess and all connected multigraphs up to a number of edges.

    Usage
    -----

    Graphs are most easily built from a vertex count, a list of edges and a mapping from marking labels to vertices:

    .. code-block:: python

        >>> theta = HalfEdgeGraph.from_edges(2, [(0, 1), (0, 1), (0, 1)])
        >>> betti_1(theta)
        2
        >>> len(automorphisms(theta))
        12

    Two graphs are isomorphic if and only if their canonical forms agree:

    .. code-block:: python

        >>> tripod = HalfEdgeGraph.from_edges(1, [], {1: 0, 2: 0, 3: 0})
        >>> canonical_form(tripod) == canonical_form(tripod.renumber()[0])
        True

    Methods
    -------
"""

from __future__ import annotations

import itertools
import logging
import math
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from fsStrata.common import Certificate, ResourceGuard, compositions

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


class HalfEdgeGraph:
    """
    An immutable graph given by half-edges.

    :param vertices: One block of half-edge ids per vertex. The position of a block is its vertex index.
    :type vertices: Sequence[Iterable[int]]
    :param involution: The internal edges as pairs of half-edge ids. Half-edges not listed are external.
    :type involution: Iterable[Tuple[int, int]]
    :param labels: Marking label of every external half-edge
    :type labels: Optional[Mapping[int, int]]
    """

    __slots__ = ("_vertices", "_sigma", "_labels", "_vertex_of", "_edges", "_hash")

    def __init__(self, vertices: Sequence[Iterable[int]], involution: Iterable[Tuple[int, int]] = (),
                 labels: Optional[Mapping[int, int]] = None):
        blocks = tuple(tuple(sorted(int(h) for h in block)) for block in vertices)
        vertex_of: Dict[int, int] = {}
        for index, block in enumerate(blocks):
            for half_edge in block:
                if half_edge in vertex_of:
                    raise ValueError("Half-edge {} lies in more than one vertex".format(half_edge))
                vertex_of[half_edge] = index

        sigma = {h: h for h in vertex_of}
        for pair in involution:
            a, b = (int(x) for x in pair)
            if a not in vertex_of or b not in vertex_of:
                raise ValueError("Edge {} uses a half-edge that belongs to no vertex".format((a, b)))
            if a == b:
                raise ValueError("An internal edge needs two distinct half-edges, got {}".format((a, b)))
            if sigma[a] != a or sigma[b] != b:
                raise ValueError("Half-edge of {} is already part of another edge".format((a, b)))
            sigma[a] = b
            sigma[b] = a

        labels = {int(h): int(label) for h, label in (labels or {}).items()}
        fixed_points = {h for h, image in sigma.items() if h == image}
        if set(labels) != fixed_points:
            raise ValueError("Every external half-edge needs exactly one marking label and only external "
                             "half-edges may carry one")
        if len(set(labels.values())) != len(labels):
            raise ValueError("Marking labels have to be distinct")
        if any(label < 1 for label in labels.values()):
            raise ValueError("Marking labels have to be positive")

        self._vertices = blocks
        self._sigma = sigma
        self._labels = labels
        self._vertex_of = vertex_of
        self._edges = tuple(sorted((h, image) for h, image in sigma.items() if h < image))
        self._hash = None

    @staticmethod
    def from_edges(n_vertices: int, edges: Iterable[Tuple[int, int]],
                   legs: Optional[Mapping[int, int]] = None) -> HalfEdgeGraph:
        """
        Builds a graph from a vertex count, the internal edges as pairs of vertex indices (loops allowed) and a
        mapping from marking labels to vertex indices. Half-edge ids are assigned consecutively, edges first.

        :param n_vertices: Number of vertices
        :type n_vertices: int
        :param edges: Internal edges as pairs of vertex indices
        :type edges: Iterable[Tuple[int, int]]
        :param legs: Maps every marking label to the vertex carrying it
        :type legs: Optional[Mapping[int, int]]
        :return: The graph
        :rtype: HalfEdgeGraph
        """
        blocks: List[List[int]] = [[] for _ in range(n_vertices)]
        pairs = []
        next_id = 0
        for u, w in edges:
            if not (0 <= u < n_vertices and 0 <= w < n_vertices):
                raise ValueError("Edge {} refers to a vertex outside of 0..{}".format((u, w), n_vertices - 1))
            blocks[u].append(next_id)
            blocks[w].append(next_id + 1)
            pairs.append((next_id, next_id + 1))
            next_id += 2
        labels = {}
        for label, vertex in sorted((legs or {}).items()):
            if not 0 <= vertex < n_vertices:
                raise ValueError("Leg {} is attached to a non-existing vertex {}".format(label, vertex))
            blocks[vertex].append(next_id)
            labels[next_id] = label
            next_id += 1
        return HalfEdgeGraph(blocks, pairs, labels)

    @property
    def half_edges(self) -> Tuple[int, ...]:
        return tuple(sorted(self._sigma))

    @property
    def vertices(self) -> Tuple[Tuple[int, ...], ...]:
        return self._vertices

    @property
    def labels(self) -> Dict[int, int]:
        return dict(self._labels)

    @property
    def number_of_vertices(self) -> int:
        return len(self._vertices)

    @property
    def n_external(self) -> int:
        """
        The number n(G) of external edges.
        """
        return len(self._labels)

    def sigma(self, half_edge: int) -> int:
        return self._sigma[half_edge]

    def vertex_of(self, half_edge: int) -> int:
        return self._vertex_of[half_edge]

    def valence(self, vertex: int) -> int:
        """
        The valence n(v), i.e. the number of half-edges at the vertex.
        """
        return len(self._vertices[vertex])

    def label(self, half_edge: int) -> Optional[int]:
        return self._labels.get(half_edge)

    def is_external(self, half_edge: int) -> bool:
        return self._sigma[half_edge] == half_edge

    def internal_edges(self) -> Tuple[Edge, ...]:
        """
        All internal edges as sorted pairs of half-edges, in increasing order.
        """
        return self._edges

    def external_half_edges(self) -> Tuple[int, ...]:
        """
        All external half-edges, ordered by their marking label.
        """
        return tuple(h for h, _ in sorted(self._labels.items(), key=lambda item: item[1]))

    def legs_at(self, vertex: int) -> Tuple[int, ...]:
        """
        The sorted marking labels of the external edges at the given vertex.
        """
        return tuple(sorted(self._labels[h] for h in self._vertices[vertex] if h in self._labels))

    def leg_with_label(self, label: int) -> int:
        for half_edge, value in self._labels.items():
            if value == label:
                return half_edge
        raise KeyError(label)

    def endpoints(self, edge: Edge) -> Tuple[int, int]:
        return self._vertex_of[edge[0]], self._vertex_of[edge[1]]

    def is_loop(self, edge: Edge) -> bool:
        return self._vertex_of[edge[0]] == self._vertex_of[edge[1]]

    def loops_at(self, vertex: int) -> int:
        return sum(1 for a, b in self._edges if self._vertex_of[a] == vertex and self._vertex_of[b] == vertex)

    def edge_multiplicities(self) -> List[Dict[int, int]]:
        """
        For every vertex, the number of edges to each other adjacent vertex. Loops are not included.
        """
        adjacency: List[Dict[int, int]] = [{} for _ in self._vertices]
        for a, b in self._edges:
            u, w = self._vertex_of[a], self._vertex_of[b]
            if u != w:
                adjacency[u][w] = adjacency[u].get(w, 0) + 1
                adjacency[w][u] = adjacency[w].get(u, 0) + 1
        return adjacency

    def to_networkx(self) -> nx.MultiGraph:
        """
        Converts the graph into a networkX multigraph. Nodes are the vertex indices and carry the sorted marking
        labels of their legs in the attribute 'legs'; the key of every edge is its pair of half-edges.

        :return: The underlying multigraph
        :rtype: nx.MultiGraph
        """
        g = nx.MultiGraph()
        for vertex in range(self.number_of_vertices):
            g.add_node(vertex, legs=self.legs_at(vertex))
        for a, b in self._edges:
            g.add_edge(self._vertex_of[a], self._vertex_of[b], key=(a, b))
        return g

    def is_connected(self) -> bool:
        if self.number_of_vertices == 0:
            return False
        return nx.is_connected(self.to_networkx())

    def number_of_components(self) -> int:
        if self.number_of_vertices == 0:
            return 0
        return nx.number_connected_components(self.to_networkx())

    def relabel_legs(self, mapping: Mapping[int, int]) -> HalfEdgeGraph:
        """
        Replaces every marking label l by mapping[l].

        :param mapping: Old label to new label
        :type mapping: Mapping[int, int]
        :return: The relabelled graph
        :rtype: HalfEdgeGraph
        """
        return HalfEdgeGraph(self._vertices, self._edges,
                             {h: mapping[label] for h, label in self._labels.items()})

    def renumber(self) -> Tuple[HalfEdgeGraph, Dict[int, int]]:
        """
        Renumbers the half-edges consecutively from zero, in the order of the vertices.

        :return: The renumbered graph and the map from old to new half-edge ids
        :rtype: Tuple[HalfEdgeGraph, Dict[int, int]]
        """
        mapping = {}
        for block in self._vertices:
            for half_edge in block:
                mapping[half_edge] = len(mapping)
        graph = HalfEdgeGraph([[mapping[h] for h in block] for block in self._vertices],
                              [(mapping[a], mapping[b]) for a, b in self._edges],
                              {mapping[h]: label for h, label in self._labels.items()})
        return graph, mapping

    def __eq__(self, other):
        if not isinstance(other, HalfEdgeGraph):
            return NotImplemented
        return (self._vertices == other._vertices and self._edges == other._edges
                and self._labels == other._labels)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._vertices, self._edges, tuple(sorted(self._labels.items()))))
        return self._hash

    def __repr__(self):
        return "HalfEdgeGraph(vertices={}, involution={}, labels={})".format(list(map(list, self._vertices)),
                                                                            list(self._edges),
                                                                            dict(sorted(self._labels.items())))

    def __str__(self):
        return "Graph with {} vertices, {} internal and {} external edges".format(self.number_of_vertices,
                                                                                  len(self._edges),
                                                                                  self.n_external)


class Contraction:
    """
    A contraction source -> target, witnessed by an embedding of the half-edges of the target into the half-edges
    of the source. The constructor checks that the embedding commutes with the involutions, that it is a
    bijection on external edges and that the induced map on vertices is well defined and surjective.

    :param source: The graph being contracted
    :type source: HalfEdgeGraph
    :param target: The contracted graph
    :type target: HalfEdgeGraph
    :param embedding: Maps every half-edge of the target to a half-edge of the source
    :type embedding: Mapping[int, int]
    """

    def __init__(self, source: HalfEdgeGraph, target: HalfEdgeGraph, embedding: Mapping[int, int]):
        self.source = source
        self.target = target
        self.embedding = dict(embedding)
        self.vertex_map = self._check_and_derive_vertex_map()

    @staticmethod
    def from_embedding(source: HalfEdgeGraph, target: HalfEdgeGraph, embedding: Mapping[int, int]) -> Contraction:
        return Contraction(source, target, embedding)

    def _check_and_derive_vertex_map(self) -> Tuple[int, ...]:
        source, target, iota = self.source, self.target, self.embedding

        if set(iota) != set(target.half_edges):
            raise ValueError("The embedding has to be defined on every half-edge of the target")
        image = set(iota.values())
        if len(image) != len(iota) or not image.issubset(source.half_edges):
            raise ValueError("The embedding has to be injective into the half-edges of the source")
        for half_edge, value in iota.items():
            if source.sigma(value) != iota[target.sigma(half_edge)]:
                raise ValueError("The embedding does not commute with the involutions at {}".format(half_edge))
        if {iota[h] for h in target.external_half_edges()} != set(source.external_half_edges()):
            raise ValueError("The embedding has to be a bijection on external edges")
        for half_edge in target.external_half_edges():
            if target.label(half_edge) != source.label(iota[half_edge]):
                raise ValueError("The embedding does not preserve marking labels")

        # Source vertices glued along contracted edges map to a single target vertex
        glued = nx.Graph()
        glued.add_nodes_from(range(source.number_of_vertices))
        for a, b in source.internal_edges():
            if a not in image:
                glued.add_edge(source.vertex_of(a), source.vertex_of(b))

        preimage = {h: t for t, h in iota.items()}
        vertex_map: Dict[int, int] = {}
        hit = set()
        unassigned = []
        for component in sorted(nx.connected_components(glued), key=min):
            targets = {target.vertex_of(preimage[h]) for v in component for h in source.vertices[v] if h in image}
            if len(targets) > 1:
                raise ValueError("The adjacency condition fails: source vertices {} map to several target "
                                 "vertices".format(sorted(component)))
            if not targets:
                unassigned.append(component)
                continue
            (t,) = targets
            if t in hit:
                raise ValueError("Target vertex {} is the image of two components of contracted edges".format(t))
            hit.add(t)
            for v in component:
                vertex_map[v] = t

        empty = [t for t in range(target.number_of_vertices) if t not in hit]
        if len(empty) != len(unassigned) or any(target.valence(t) for t in empty):
            raise ValueError("The induced vertex map is not surjective")
        for component, t in zip(unassigned, empty):
            for v in component:
                vertex_map[v] = t

        return tuple(vertex_map[v] for v in range(source.number_of_vertices))

    def contracted_edges(self) -> Tuple[Edge, ...]:
        image = set(self.embedding.values())
        return tuple(edge for edge in self.source.internal_edges() if edge[0] not in image)

    def compose(self, other: Contraction) -> Contraction:
        """
        Composes this contraction A -> B with a contraction B -> C.

        :param other: The contraction starting at the target of this one
        :type other: Contraction
        :return: The contraction A -> C
        :rtype: Contraction
        """
        if other.source != self.target:
            raise ValueError("Contractions are not composable")
        return Contraction(self.source, other.target,
                           {h: self.embedding[other.embedding[h]] for h in other.target.half_edges})

    def __repr__(self):
        return "Contraction({!r} -> {!r})".format(self.source, self.target)


def betti_1(graph: HalfEdgeGraph) -> int:
    """
    The first Betti number |internal edges| - |vertices| + #components.

    :param graph: The graph
    :type graph: HalfEdgeGraph
    :return: Rank of the cycle space
    :rtype: int
    """
    return len(graph.internal_edges()) - graph.number_of_vertices + graph.number_of_components()


def _normalize_edges(graph: HalfEdgeGraph, edges: Iterable[Iterable[int]]) -> List[Edge]:
    result = set()
    for edge in edges:
        a, b = sorted(edge)
        if graph.is_external(a) or graph.is_external(b):
            raise ValueError("Only internal edges can be contracted or deleted, got {}".format((a, b)))
        if graph.sigma(a) != b:
            raise ValueError("{} is not an internal edge".format((a, b)))
        result.add((a, b))
    return sorted(result)


def contract_edges(graph: HalfEdgeGraph, edges: Iterable[Iterable[int]]) -> Tuple[HalfEdgeGraph, Contraction]:
    """
    Contracts a set of internal edges: vertices are merged along the non-loop edges of the set and the half-edges
    of all edges in the set are removed. The remaining half-edges keep their ids. The vertices of the result are
    ordered by the smallest source vertex they contain.

    :param graph: The graph
    :type graph: HalfEdgeGraph
    :param edges: Internal edges as pairs of half-edges
    :type edges: Iterable[Iterable[int]]
    :return: The contracted graph together with the contraction witness
    :rtype: Tuple[HalfEdgeGraph, Contraction]
    """
    edges = _normalize_edges(graph, edges)
    removed = {h for edge in edges for h in edge}

    glued = nx.Graph()
    glued.add_nodes_from(range(graph.number_of_vertices))
    glued.add_edges_from(graph.endpoints(edge) for edge in edges)
    components = sorted(nx.connected_components(glued), key=min)

    blocks = [[h for v in sorted(component) for h in graph.vertices[v] if h not in removed]
              for component in components]
    target = HalfEdgeGraph(blocks, [edge for edge in graph.internal_edges() if edge[0] not in removed],
                           graph.labels)
    return target, Contraction(graph, target, {h: h for h in target.half_edges})


def delete_edges(graph: HalfEdgeGraph, edges: Iterable[Iterable[int]]) -> HalfEdgeGraph:
    """
    Removes internal edges together with their half-edges; all vertices are kept.
    """
    removed = {h for edge in _normalize_edges(graph, edges) for h in edge}
    return HalfEdgeGraph([[h for h in block if h not in removed] for block in graph.vertices],
                         [edge for edge in graph.internal_edges() if edge[0] not in removed], graph.labels)


def _next_id(graph: HalfEdgeGraph) -> int:
    return max(graph.half_edges, default=-1) + 1


def add_edge(graph: HalfEdgeGraph, u: int, w: int) -> Tuple[HalfEdgeGraph, Edge]:
    """
    Adds a new internal edge between u and w (a loop if u == w).

    :return: The new graph and the new edge
    :rtype: Tuple[HalfEdgeGraph, Edge]
    """
    a = _next_id(graph)
    blocks = [list(block) for block in graph.vertices]
    blocks[u].append(a)
    blocks[w].append(a + 1)
    return HalfEdgeGraph(blocks, graph.internal_edges() + ((a, a + 1),), graph.labels), (a, a + 1)


def add_pendant(graph: HalfEdgeGraph, vertex: int) -> Tuple[HalfEdgeGraph, Edge]:
    """
    Adds a new vertex joined to the given vertex by a single new edge.
    """
    a = _next_id(graph)
    blocks = [list(block) for block in graph.vertices]
    blocks[vertex].append(a)
    blocks.append([a + 1])
    return HalfEdgeGraph(blocks, graph.internal_edges() + ((a, a + 1),), graph.labels), (a, a + 1)


def split_vertex(graph: HalfEdgeGraph, vertex: int, kept: Iterable[int]) -> Tuple[HalfEdgeGraph, Edge]:
    """
    Splits a vertex into two vertices joined by a new edge. The given half-edges stay at the vertex, all others
    move to a new vertex appended at the end. Contracting the new edge gives back the original graph.

    :param graph: The graph
    :type graph: HalfEdgeGraph
    :param vertex: Index of the vertex to split
    :type vertex: int
    :param kept: The half-edges remaining at the vertex
    :type kept: Iterable[int]
    :return: The new graph and the new edge, whose first half-edge lies at the original vertex
    :rtype: Tuple[HalfEdgeGraph, Edge]
    """
    kept = set(kept)
    block = graph.vertices[vertex]
    if not kept.issubset(block):
        raise ValueError("Only half-edges of vertex {} can be kept".format(vertex))
    a = _next_id(graph)
    blocks = [list(b) for b in graph.vertices]
    blocks[vertex] = sorted(kept) + [a]
    blocks.append([h for h in block if h not in kept] + [a + 1])
    return HalfEdgeGraph(blocks, graph.internal_edges() + ((a, a + 1),), graph.labels), (a, a + 1)


def _vertex_keys(graph: HalfEdgeGraph, coloring: Optional[Sequence[Hashable]], labelled: bool) -> List[tuple]:
    keys = []
    for vertex in range(graph.number_of_vertices):
        color = () if coloring is None else coloring[vertex]
        legs = graph.legs_at(vertex)
        keys.append((color, legs if labelled else (len(legs),), graph.loops_at(vertex)))
    return keys


def _rank(values: Sequence) -> List[int]:
    ranking = {value: r for r, value in enumerate(sorted(set(values)))}
    return [ranking[value] for value in values]


def _refine(colors: List[int], adjacency: List[Dict[int, int]]) -> List[int]:
    cells = len(set(colors))
    while True:
        colors = _rank([(colors[v], tuple(sorted((colors[u], m) for u, m in adjacency[v].items())))
                        for v in range(len(colors))])
        new_cells = len(set(colors))
        if new_cells == cells:
            return colors
        cells = new_cells


def _individualize(colors: List[int], vertex: int) -> List[int]:
    # Keeps the order of all other cells and places the vertex first within its own cell
    return [2 * c + (0 if v == vertex else 1) for v, c in enumerate(colors)]


def _are_twins(u: int, w: int, adjacency: List[Dict[int, int]]) -> bool:
    for x in set(adjacency[u]) | set(adjacency[w]):
        if x not in (u, w) and adjacency[u].get(x, 0) != adjacency[w].get(x, 0):
            return False
    return True


def _encode(order: Sequence[int], keys: List[tuple], adjacency: List[Dict[int, int]]) -> Certificate:
    size = len(order)
    return (size,
            tuple(keys[v] for v in order),
            tuple(adjacency[order[i]].get(order[j], 0) for i in range(size) for j in range(i + 1, size)))


def canonical_form(graph: HalfEdgeGraph, coloring: Optional[Sequence[Hashable]] = None,
                   labelled: bool = True) -> Certificate:
    """
    Computes a canonical certificate of the graph. Two graphs receive the same certificate if and only if there is
    a bijection of half-edges preserving the involution, the vertex partition, the marking labels and the vertex
    coloring.

    The certificate is the lexicographically smallest encoding over the leaves of an individualization-refinement
    search tree. Vertices that can be swapped without changing anything else are only branched on once.

    :param graph: The graph
    :type graph: HalfEdgeGraph
    :param coloring: Optional decoration key per vertex index. Keys of one graph have to be mutually comparable.
    :type coloring: Optional[Sequence[Hashable]]
    :param labelled: If false, marking labels are forgotten and only the number of legs per vertex is kept
    :type labelled: bool
    :return: The certificate
    :rtype: Certificate
    """
    keys = _vertex_keys(graph, coloring, labelled)
    adjacency = graph.edge_multiplicities()
    if not keys:
        return _encode([], keys, adjacency)

    best = [None]

    def _visit(colors: List[int]):
        colors = _refine(colors, adjacency)
        cells: Dict[int, List[int]] = {}
        for vertex, color in enumerate(colors):
            cells.setdefault(color, []).append(vertex)
        target = next((cells[c] for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            encoding = _encode(sorted(range(len(colors)), key=colors.__getitem__), keys, adjacency)
            if best[0] is None or encoding < best[0]:
                best[0] = encoding
            return
        representatives: List[int] = []
        for vertex in target:
            if not any(_are_twins(vertex, r, adjacency) for r in representatives):
                representatives.append(vertex)
        for vertex in representatives:
            _visit(_individualize(colors, vertex))

    _visit(_rank(keys))
    return best[0]


def _vertex_automorphisms(keys: List[tuple], adjacency: List[Dict[int, int]]) -> List[Tuple[int, ...]]:
    size = len(keys)
    colors = _refine(_rank(keys), adjacency)
    mapping: List[Optional[int]] = [None] * size
    used = set()
    result = []

    def _extend(vertex: int):
        if vertex == size:
            result.append(tuple(mapping))
            return
        for image in range(size):
            if image in used or colors[image] != colors[vertex]:
                continue
            if all(adjacency[vertex].get(u, 0) == adjacency[image].get(mapping[u], 0) for u in range(vertex)):
                mapping[vertex] = image
                used.add(image)
                _extend(vertex + 1)
                used.discard(image)
        mapping[vertex] = None

    _extend(0)
    return result


def automorphisms(graph: HalfEdgeGraph, coloring: Optional[Sequence[Hashable]] = None) -> List[Dict[int, int]]:
    """
    Lists all automorphisms of the graph, i.e. all bijections of the half-edges preserving the involution, the
    vertex partition, the marking labels and the coloring.

    Every automorphism is induced by an automorphism of the underlying vertex-colored multigraph together with a
    permutation of each bundle of parallel edges and a permutation and orientation of the loops at every vertex.

    :param graph: The graph
    :type graph: HalfEdgeGraph
    :param coloring: Optional decoration key per vertex index
    :type coloring: Optional[Sequence[Hashable]]
    :return: The automorphisms as maps from half-edges to half-edges; the first one is the identity
    :rtype: List[Dict[int, int]]
    """
    keys = _vertex_keys(graph, coloring, True)
    adjacency = graph.edge_multiplicities()

    loops: Dict[int, List[Edge]] = {}
    bundles: Dict[Tuple[int, int], List[Edge]] = {}
    for a, b in graph.internal_edges():
        u, w = graph.vertex_of(a), graph.vertex_of(b)
        if u == w:
            loops.setdefault(u, []).append((a, b))
        else:
            # orient every edge from the smaller to the larger vertex index
            oriented = (a, b) if u < w else (b, a)
            bundles.setdefault((min(u, w), max(u, w)), []).append(oriented)
    legs = {h: h for h in graph.external_half_edges()}

    result = []
    for phi in _vertex_automorphisms(keys, adjacency):
        choices = []
        for vertex, own in loops.items():
            options = []
            for images in itertools.permutations(loops[phi[vertex]]):
                for flips in itertools.product((False, True), repeat=len(own)):
                    option = {}
                    for (a, b), (c, d), flip in zip(own, images, flips):
                        option[a], option[b] = (d, c) if flip else (c, d)
                    options.append(option)
            choices.append(options)
        for (u, w), own in bundles.items():
            pu, pw = phi[u], phi[w]
            options = []
            for images in itertools.permutations(bundles[(min(pu, pw), max(pu, pw))]):
                option = {}
                for (a, b), (c, d) in zip(own, images):
                    option[a], option[b] = (c, d) if pu < pw else (d, c)
                options.append(option)
            choices.append(options)
        for combination in itertools.product(*choices):
            permutation = dict(legs)
            for option in combination:
                permutation.update(option)
            result.append(permutation)

    identity = {h: h for h in graph.half_edges}
    result.sort(key=lambda p: p != identity)
    return result


def automorphism_group_order(graph: HalfEdgeGraph, coloring: Optional[Sequence[Hashable]] = None) -> int:
    """
    The order of the automorphism group, computed without listing the group.

    :param graph: The graph
    :type graph: HalfEdgeGraph
    :param coloring: Optional decoration key per vertex index
    :type coloring: Optional[Sequence[Hashable]]
    :return: Number of automorphisms
    :rtype: int
    """
    keys = _vertex_keys(graph, coloring, True)
    adjacency = graph.edge_multiplicities()
    order = len(_vertex_automorphisms(keys, adjacency))
    for vertex in range(graph.number_of_vertices):
        k = graph.loops_at(vertex)
        order *= math.factorial(k) * 2 ** k
        for other, multiplicity in adjacency[vertex].items():
            if other > vertex:
                order *= math.factorial(multiplicity)
    return order


def _trees(order: int) -> List[nx.Graph]:
    if order == 1:
        return [nx.empty_graph(1)]
    return list(nx.nonisomorphic_trees(order))


def excess_trees(excess: int, n_legs: Optional[int] = None, max_vertices: Optional[int] = None,
                 max_leaves: Optional[int] = None) -> List[HalfEdgeGraph]:
    """
    Generates all trees with every valence at least three and sum of n(v) - 3 equal to the excess, one per shape.
    Shapes are counted up to isomorphism forgetting the marking labels; legs are numbered along the vertices.

    Either the number of legs or a maximal number of vertices has to be given; a tree with V vertices has
    V + excess + 2 legs.

    :param excess: The degree sum of n(v) - 3
    :type excess: int
    :param n_legs: Only trees with this many legs
    :type n_legs: Optional[int]
    :param max_vertices: Only trees with at most this many vertices
    :type max_vertices: Optional[int]
    :param max_leaves: Skip skeleta with more leaves
    :type max_leaves: Optional[int]
    :return: The trees, sorted by certificate
    :rtype: List[HalfEdgeGraph]
    """
    if excess < 0:
        raise ValueError("The excess has to be nonnegative")
    if n_legs is not None:
        vertex_counts = [n_legs - excess - 2] if n_legs - excess - 2 >= 1 else []
    elif max_vertices is not None:
        vertex_counts = list(range(1, max_vertices + 1))
    else:
        raise ValueError("Either n_legs or max_vertices is required")

    found: Dict[Certificate, HalfEdgeGraph] = {}
    for order in vertex_counts:
        for tree in _trees(order):
            degrees = [tree.degree(v) for v in range(order)]
            if max_leaves is not None and order > 1 and degrees.count(1) > max_leaves:
                continue
            edges = sorted(tuple(sorted(edge)) for edge in tree.edges())
            for extra in compositions(excess, order, [d - 3 for d in degrees]):
                legs = {}
                for vertex in range(order):
                    for _ in range(3 + extra[vertex] - degrees[vertex]):
                        legs[len(legs) + 1] = vertex
                graph = HalfEdgeGraph.from_edges(order, edges, legs)
                found.setdefault(canonical_form(graph, labelled=False), graph)
    logger.debug("Generated %d tree shapes of excess %d", len(found), excess)
    return [found[c] for c in sorted(found)]


def connected_multigraphs(max_edges: int, ceiling: Optional[int] = None) -> Dict[int, List[HalfEdgeGraph]]:
    """
    Generates every connected multigraph (loops allowed, no legs) with at most max_edges edges, one per
    isomorphism class. Graphs with k + 1 edges are obtained from those with k edges by adding a loop, an edge
    between two vertices or a pendant edge to a new vertex.

    :param max_edges: Maximal number of edges
    :type max_edges: int
    :param ceiling: Resource ceiling on the number of generated candidates
    :type ceiling: Optional[int]
    :return: The graphs grouped by number of edges, each group sorted by certificate
    :rtype: Dict[int, List[HalfEdgeGraph]]
    """
    guard = ResourceGuard("connected multigraph generation", ceiling)
    point = HalfEdgeGraph([[]])
    level = {canonical_form(point): point}
    result = {0: [point]}
    for edges in range(1, max_edges + 1):
        following: Dict[Certificate, HalfEdgeGraph] = {}
        for graph in level.values():
            size = graph.number_of_vertices
            candidates = [add_edge(graph, u, w)[0] for u in range(size) for w in range(u, size)]
            candidates += [add_pendant(graph, v)[0] for v in range(size)]
            guard.tick(len(candidates))
            for candidate in candidates:
                following.setdefault(canonical_form(candidate), candidate)
        level = following
        result[edges] = [level[c] for c in sorted(level)]
        logger.info("%d connected multigraphs with %d edges", len(level), edges)
    return result
