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
    Genus zero pieces: the Betti numbers of the moduli spaces of stable marked rational curves, the rewriting of
    boundary classes [H] of stable trees as pullbacks along surjections, the genus e graphs indexing the
    filtration of a rose, and upper bounds for the first page of the resulting spectral sequence.

    A boundary class [H] of a stable tree H with n legs has degree index i = sum of n(v) - 3. If n > 13i/2, either
    a trivalent vertex carries two legs a < b and [H] is the pullback of a class with n - 1 legs along the
    surjection merging a and b, or two adjacent trivalent vertices carry one leg each and an exchange of legs
    produces a tree of the first kind.

    Usage
    -----

    .. code-block:: python

        >>> poincare_m0n(6)
        [1, 16, 16, 1]
        >>> tree = StableTreeClass(HalfEdgeGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)],
        ...                                                 {1: 0, 2: 0, 3: 1, 4: 2, 5: 2, 6: 3, 7: 3}))
        >>> step = find_reduction(tree)
        >>> step.kind, step.merged
        (<RewriteKind.CASE1: 'case1'>, (1, 2))
        >>> [len(entry.graphs) for entry in enumerate_ge(1, 1)]
        [1, 2]

    Methods
    -------
"""

from __future__ import annotations

import functools
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple

import sympy

from fsStrata.common import CounterexampleFound, binomial, compositions, multinomial
from fsStrata.decorated_graphs import DecoratedGraph, enumerate_stab, pullback
from fsStrata.fs_calculus import HeightCertificate, HeightRule, HeightStep
from fsStrata.graph_core import HalfEdgeGraph, automorphism_group_order, betti_1, canonical_form, \
    connected_multigraphs
from fsStrata.halfedge_analysis import leaf_height
from fsStrata.independence_homology import i_invariant

logger = logging.getLogger(__name__)

_q = sympy.Symbol("q")


@functools.lru_cache(maxsize=None)
def _poincare_poly(n: int) -> sympy.Poly:
    # P_{m+1} = (1 + q) P_m + q/2 sum_{j=2}^{m-2} C(m, j) P_{j+1} P_{m-j+1}
    if n == 3:
        return sympy.Poly(1, _q, domain=sympy.QQ)
    m = n - 1
    result = sympy.Poly(1 + _q, _q, domain=sympy.QQ) * _poincare_poly(m)
    for j in range(2, m - 1):
        result += sympy.Poly(sympy.Rational(binomial(m, j), 2) * _q, _q, domain=sympy.QQ) * \
            _poincare_poly(j + 1) * _poincare_poly(m - j + 1)
    return result


def poincare_m0n(n: int) -> List[int]:
    """
    The even Betti numbers b_0, b_2, ..., b_{2(n-3)} of the moduli space of stable rational curves with n marked
    points, by Keel's recursion for the Poincare polynomial. All odd Betti numbers vanish.

    :param n: Number of marked points
    :type n: int
    :return: The Betti number b_{2k} at position k
    :rtype: List[int]
    """
    if n < 3:
        raise ValueError("n has to be at least 3")
    coefficients = _poincare_poly(n).all_coeffs()[::-1]
    return [int(c) for c in coefficients] + [0] * (n - 2 - len(coefficients))


def betti_m0n(n: int, q: int) -> int:
    """
    The q-th Betti number, zero in odd degrees and outside of 0..2(n-3).
    """
    if q < 0 or q % 2:
        return 0
    betti = poincare_m0n(n)
    return betti[q // 2] if q // 2 < len(betti) else 0


def b2_closed_form(n: int) -> int:
    """
    b_2 = 2^(n-1) - n(n-1)/2 - 1 for n >= 4.
    """
    return 2 ** (n - 1) - binomial(n, 2) - 1


def euler_characteristic_m0n(n: int) -> int:
    """
    The Euler characteristic from the stratification by stable trees: the sum over all trees of the product over
    vertices of (-1)^(n(v)-3) (n(v)-3)!, the Euler characteristic of the open stratum. This does not use the
    recursion of :func:`poincare_m0n` and serves as an oracle for it.
    """
    if n < 3:
        raise ValueError("n has to be at least 3")
    total = 0
    for tree in enumerate_stab(0, n):
        product = 1
        for v in range(tree.graph.number_of_vertices):
            excess = tree.graph.valence(v) - 3
            product *= (-1) ** excess * math.factorial(excess)
        total += product
    return total


@dataclass(frozen=True)
class StableTreeClass:
    """
    The boundary class [H] of an undecorated genus zero stable graph H, with degree index i = sum of n(v) - 3.
    """
    graph: HalfEdgeGraph

    def __post_init__(self):
        graph = self.graph
        if not graph.is_connected() or betti_1(graph) != 0:
            raise ValueError("A stable tree has to be simply connected")
        if any(graph.valence(v) < 3 for v in range(graph.number_of_vertices)):
            raise ValueError("Every vertex of a stable tree needs valence at least 3")

    @property
    def n(self) -> int:
        return self.graph.n_external

    @property
    def degree(self) -> int:
        return sum(self.graph.valence(v) - 3 for v in range(self.graph.number_of_vertices))


class RewriteKind(Enum):
    CASE1 = "case1"
    CASE2 = "case2-then-case1"


@dataclass(frozen=True)
class RewriteStep:
    """
    A rewrite [H] = delta^* [H_0]. For CASE2 the pullback equals the exchanged tree H', which represents the same
    class as H by the WDVV relation.

    :param kind: Which case applied
    :param source: The tree H
    :param merged: The labels a < b at a common trivalent vertex (of H' for CASE2)
    :param delta: The surjection [n] -> [n - 1] identifying a and b
    :param residual: The tree H_0 with n - 1 legs
    :param exchanged: The tree H' for CASE2
    """
    kind: RewriteKind
    source: StableTreeClass
    merged: Tuple[int, int]
    delta: Dict[int, int]
    residual: StableTreeClass
    exchanged: Optional[StableTreeClass] = None

    @property
    def target(self) -> StableTreeClass:
        return self.exchanged if self.exchanged is not None else self.source


def _graph_payload(graph: HalfEdgeGraph) -> dict:
    return {"vertices": [list(block) for block in graph.vertices],
            "edges": [list(edge) for edge in graph.internal_edges()],
            "labels": {str(h): label for h, label in sorted(graph.labels.items())}}


def _merging_surjection(n: int, a: int, b: int) -> Dict[int, int]:
    return {k: (k if k < b else (a if k == b else k - 1)) for k in range(1, n + 1)}


def _case1(graph: HalfEdgeGraph) -> Optional[Tuple[int, int, int]]:
    """
    The first trivalent vertex carrying two legs, with the two labels.
    """
    for v in range(graph.number_of_vertices):
        legs = graph.legs_at(v)
        if graph.valence(v) == 3 and len(legs) >= 2:
            return v, legs[0], legs[1]
    return None


def _remove_cherry(graph: HalfEdgeGraph, vertex: int, a: int, b: int) -> HalfEdgeGraph:
    """
    Removes a trivalent vertex with legs a < b; the half-edge opposite of it becomes leg a and the remaining
    labels are renumbered by the merging surjection.
    """
    delta = _merging_surjection(graph.n_external, a, b)
    inner = next(h for h in graph.vertices[vertex] if not graph.is_external(h))
    opposite = graph.sigma(inner)
    blocks = [block for index, block in enumerate(graph.vertices) if index != vertex]
    pairs = [edge for edge in graph.internal_edges() if inner not in edge]
    labels = {h: delta[label] for h, label in graph.labels.items() if label not in (a, b)}
    labels[opposite] = a
    return HalfEdgeGraph(blocks, pairs, labels)


def _case2(graph: HalfEdgeGraph) -> Optional[HalfEdgeGraph]:
    """
    Finds adjacent trivalent vertices u, w with one leg each and moves the leg of w to u and the remaining
    half-edge of u to w.
    """
    for first, second in graph.internal_edges():
        u, w = graph.vertex_of(first), graph.vertex_of(second)
        if u == w or graph.valence(u) != 3 or graph.valence(w) != 3:
            continue
        if len(graph.legs_at(u)) != 1 or len(graph.legs_at(w)) != 1:
            continue
        leg_w = graph.leg_with_label(graph.legs_at(w)[0])
        rest_u = next(h for h in graph.vertices[u] if h != first and not graph.is_external(h))
        blocks = [list(block) for block in graph.vertices]
        blocks[u].remove(rest_u)
        blocks[u].append(leg_w)
        blocks[w].remove(leg_w)
        blocks[w].append(rest_u)
        return HalfEdgeGraph(blocks, graph.internal_edges(), graph.labels)
    return None


def find_reduction(tree: StableTreeClass) -> RewriteStep:
    """
    Finds a rewrite of [H] as a pullback of a class with fewer legs.

    :param tree: A stable tree of degree index i >= 1 with more than 13i/2 legs
    :type tree: StableTreeClass
    :raises ValueError: If the precondition fails
    :raises CounterexampleFound: If neither case applies
    :return: The rewrite step
    :rtype: RewriteStep
    """
    i, n = tree.degree, tree.n
    if i < 1:
        raise ValueError("Precondition failed: the degree index has to be at least 1")
    if 2 * n <= 13 * i:
        raise ValueError("Precondition failed: more than 13i/2 legs required")

    graph, exchanged, kind = tree.graph, None, RewriteKind.CASE1
    found = _case1(graph)
    if found is None:
        swapped = _case2(graph)
        if swapped is None:
            logger.warning("No reduction for a tree with %d legs and degree index %d", n, i)
            raise CounterexampleFound("reduction dichotomy", {"i": i, "n": n, "graph": _graph_payload(graph)})
        exchanged, kind, graph = StableTreeClass(swapped), RewriteKind.CASE2, swapped
        found = _case1(graph)
    vertex, a, b = found
    residual = StableTreeClass(_remove_cherry(graph, vertex, a, b))
    logger.debug("%s merging %d and %d", kind.value, a, b)
    return RewriteStep(kind, tree, (a, b), _merging_surjection(n, a, b), residual, exchanged)


def apply_reduction(step: RewriteStep) -> HalfEdgeGraph:
    """
    Replays a rewrite step: pulls H_0 back along delta and checks that the result is the tree H (or H' for
    CASE2) up to isomorphism preserving labels.

    :raises CounterexampleFound: If the pullback differs
    :return: The pulled back tree
    :rtype: HalfEdgeGraph
    """
    pulled = pullback(DecoratedGraph(step.residual.graph), step.delta, saturated=False).graph
    if canonical_form(pulled) != canonical_form(step.target.graph):
        raise CounterexampleFound("pullback reproduces the tree", {"expected": _graph_payload(step.target.graph),
                                                                   "pulled_back": _graph_payload(pulled)})
    return pulled


def generation_degree(i: int) -> int:
    """
    Classes of degree index i are pulled back from trees with at most max(13i/2, 3) legs, rounded up.
    """
    if i < 0:
        raise ValueError("i has to be nonnegative")
    return max(-(-13 * i // 2), 3)


@dataclass(frozen=True)
class GeEntry:
    graph: HalfEdgeGraph
    automorphism_order: int
    i_invariant: int


@dataclass(frozen=True)
class BarIndex:
    """
    The isomorphism classes of connected graphs of genus e with e + p edges.
    """
    e: int
    p: int
    graphs: Tuple[GeEntry, ...]


def enumerate_ge(e: int, max_excess: int, ceiling: Optional[int] = None) -> List[BarIndex]:
    """
    Lists the connected multigraphs of first Betti number e with at most e + max_excess edges, grouped by the
    edge excess p = |E| - e.

    :param e: The genus
    :type e: int
    :param max_excess: Largest edge excess
    :type max_excess: int
    :param ceiling: Resource ceiling for the graph generation
    :type ceiling: Optional[int]
    :return: One entry per p = 0..max_excess
    :rtype: List[BarIndex]
    """
    if e < 1:
        raise ValueError("The genus e has to be at least 1")
    if max_excess < 0:
        raise ValueError("The excess has to be nonnegative")
    graphs = connected_multigraphs(e + max_excess, ceiling)
    result = []
    for p in range(max_excess + 1):
        entries = tuple(GeEntry(g, automorphism_group_order(g), i_invariant(g))
                        for g in graphs[e + p] if betti_1(g) == e)
        logger.info("G_%d: %d classes with %d edges", e, len(entries), e + p)
        result.append(BarIndex(e, p, entries))
    return result


def _stable_fibers(graph: HalfEdgeGraph, n: int):
    valences = [graph.valence(v) for v in range(graph.number_of_vertices)]
    for sizes in compositions(n, len(valences), [3 - valence for valence in valences]):
        yield sizes, [size + valence for size, valence in zip(sizes, valences)]


def stable_functions(graph: HalfEdgeGraph, n: int) -> int:
    """
    The number of functions f: [n] -> V(G) with |f^-1(v)| + n(v) >= 3 for every vertex.
    """
    return sum(multinomial(sizes) for sizes, _ in _stable_fibers(graph, n))


def fn_dimension(graph: HalfEdgeGraph, n: int, q: int) -> int:
    """
    The dimension of H_q(F_n(G)), where F_n(G) is the disjoint union over stable f: [n] -> V(G) of the products
    over vertices of the moduli spaces with |f^-1(v)| + n(v) marked points, by Kunneth.

    :param graph: A connected graph without legs
    :type graph: HalfEdgeGraph
    :param n: Number of points
    :type n: int
    :param q: Homological degree
    :type q: int
    :return: The dimension
    :rtype: int
    """
    if q < 0 or q % 2:
        return 0
    total = 0
    for sizes, points in _stable_fibers(graph, n):
        product = sympy.Poly(1, _q, domain=sympy.QQ)
        for m in points:
            product *= _poincare_poly(m)
        total += multinomial(sizes) * int(product.coeff_monomial(_q ** (q // 2)))
    return total


def e1_upper_bound(e: int, n: int, p: int, q: int, index: Optional[List[BarIndex]] = None,
                   ceiling: Optional[int] = None) -> int:
    """
    Upper bound sum over G with |E| - e = p of dim H_q(F_n(G)) * I(G) for the entry E^1_{p,q}(n), ignoring the
    coinvariants of Aut(G).

    :param index: A result of :func:`enumerate_ge` covering p, computed if omitted
    :type index: Optional[List[BarIndex]]
    """
    if index is None:
        index = enumerate_ge(e, p, ceiling)
    entries = next((entry.graphs for entry in index if entry.p == p), ())
    return sum(fn_dimension(entry.graph, n, q) * entry.i_invariant for entry in entries if entry.i_invariant)


def e1_table(e: int, n: int, max_excess: int, max_q: int,
             ceiling: Optional[int] = None) -> Dict[int, Dict[int, int]]:
    """
    The bounds of :func:`e1_upper_bound` for p = 0..max_excess and q = 0..max_q.
    """
    index = enumerate_ge(e, max_excess, ceiling)
    return {p: {q: e1_upper_bound(e, n, p, q, index) for q in range(max_q + 1)} for p in range(max_excess + 1)}


def fn_height_certificate(graph: HalfEdgeGraph, j: int) -> HeightCertificate:
    """
    Bounds the height of the FS^op module n -> H_j(F_n(G)). For every splitting of j over the vertices, the piece
    is a convolution over the vertices of the genus zero modules of degree j_v shifted by n(v); each of them has
    height at most max(13 j_v/2, 1). The module is the sum over the splittings.

    :param graph: A connected graph without legs
    :type graph: HalfEdgeGraph
    :param j: The degree index
    :type j: int
    :return: The certificate of the largest piece, closed by the sum
    :rtype: HeightCertificate
    """
    if j < 0:
        raise ValueError("j has to be nonnegative")
    size = graph.number_of_vertices
    splittings = list(compositions(j, size))
    best = max(splittings, key=lambda split: sum(leaf_height(part) for part in split))

    steps = []
    for v, part in enumerate(best):
        steps.append(HeightStep(HeightRule.CITED, leaf_height(part),
                                "genus zero degree {} at vertex {}".format(part, v)))
        steps.append(HeightStep(HeightRule.SHIFT, leaf_height(part), "shift by {}".format(graph.valence(v))))
    bound = sum(leaf_height(part) for part in best)
    steps.append(HeightStep(HeightRule.CONVOLUTION, bound, "over {} vertices".format(size)))
    steps.append(HeightStep(HeightRule.SUM, bound, "max over {} splittings".format(len(splittings))))
    return HeightCertificate(bound, tuple(steps))
