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
    Reading and writing graphs and reports.

    Graphs are stored as JSON objects

    .. code-block:: json

        {"half_edges": [0, 1, 2], "involution": [[0, 1]], "vertices": [[0, 1, 2]], "labels": {"2": 1}}

    Decorated graphs add "genus" and "classes", both keyed by the vertex index, and the "degree" functional of
    the curve class monoid. Reports are written with sorted keys and without timestamps, so that identical runs
    produce identical files. Graphs and posets can be exported as DOT sources.

    Usage
    -----

    .. code-block:: python

        >>> loop = DecoratedGraph(HalfEdgeGraph([[0, 1, 2]], [(0, 1)], {2: 1}), genus=[0])
        >>> data = decorated_to_json(loop)
        >>> decorated_from_json(data).certificate() == loop.certificate()
        True

    Methods
    -------
"""

from __future__ import annotations

import json
import logging
import os
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Union

import graphviz
import numpy as np

from fsStrata.common import CounterexampleFound
from fsStrata.decorated_graphs import ContractionPoset, CurveClassMonoid, DecoratedGraph
from fsStrata.graph_core import HalfEdgeGraph

logger = logging.getLogger(__name__)

GraphLike = Union[HalfEdgeGraph, DecoratedGraph]


def graph_to_json(graph: HalfEdgeGraph) -> Dict[str, Any]:
    return {
        "half_edges": list(graph.half_edges),
        "involution": [list(edge) for edge in graph.internal_edges()],
        "vertices": [list(block) for block in graph.vertices],
        "labels": {str(h): label for h, label in sorted(graph.labels.items())},
    }


def _int_list(value, what: str) -> List[int]:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise ValueError("'{}' has to be a list of integers".format(what))
    return value


def graph_from_json(data: Mapping[str, Any]) -> HalfEdgeGraph:
    """
    Reads a graph from the JSON schema.

    :param data: The decoded JSON object
    :type data: Mapping[str, Any]
    :raises ValueError: If the data does not follow the schema or does not describe a valid graph
    :return: The graph
    :rtype: HalfEdgeGraph
    """
    if not isinstance(data, Mapping):
        raise ValueError("A graph has to be a JSON object")
    missing = [key for key in ("vertices", "involution") if key not in data]
    if missing:
        raise ValueError("Missing keys: {}".format(", ".join(missing)))
    vertices = [_int_list(block, "vertices") for block in data["vertices"]]
    pairs = [_int_list(pair, "involution") for pair in data["involution"]]
    if any(len(pair) != 2 for pair in pairs):
        raise ValueError("Every entry of 'involution' has to be a pair")
    try:
        labels = {int(h): int(label) for h, label in data.get("labels", {}).items()}
    except (TypeError, ValueError, AttributeError):
        raise ValueError("'labels' has to map half-edge ids to integers")
    if "half_edges" in data:
        declared = sorted(_int_list(data["half_edges"], "half_edges"))
        if declared != sorted(h for block in vertices for h in block):
            raise ValueError("'half_edges' does not match the union of the vertex blocks")
    return HalfEdgeGraph(vertices, [tuple(pair) for pair in pairs], labels)


def decorated_to_json(decorated: DecoratedGraph) -> Dict[str, Any]:
    data = graph_to_json(decorated.graph)
    data["genus"] = {str(v): g for v, g in enumerate(decorated.genus)}
    data["classes"] = {str(v): list(a) for v, a in enumerate(decorated.classes)}
    data["degree"] = list(decorated.monoid.degree)
    return data


def decorated_from_json(data: Mapping[str, Any]) -> DecoratedGraph:
    """
    Reads a decorated graph. Missing genus and class entries are zero, a missing degree is (1,).
    """
    graph = graph_from_json(data)
    monoid = CurveClassMonoid(_int_list(data["degree"], "degree")) if "degree" in data else CurveClassMonoid()
    size = graph.number_of_vertices
    try:
        genus_entries = {int(v): int(g) for v, g in data.get("genus", {}).items()}
        class_entries = {int(v): a for v, a in data.get("classes", {}).items()}
    except (TypeError, ValueError, AttributeError):
        raise ValueError("'genus' and 'classes' have to be keyed by vertex indices")
    if any(not 0 <= v < size for v in list(genus_entries) + list(class_entries)):
        raise ValueError("'genus' or 'classes' refers to a vertex outside of 0..{}".format(size - 1))
    genus = [genus_entries.get(v, 0) for v in range(size)]
    classes = [class_entries.get(v, monoid.zero) for v in range(size)]
    return DecoratedGraph(graph, genus, classes, monoid)


def read_graph(path: str) -> DecoratedGraph:
    """
    Reads a (decorated) graph from a JSON file.

    :param path: The file
    :type path: str
    :raises ValueError: If the file is not valid JSON or does not describe a valid graph
    :return: The graph, undecorated graphs with all labels zero
    :rtype: DecoratedGraph
    """
    with open(path, encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as error:
            raise ValueError("{} is not valid JSON: {}".format(path, error))
    return decorated_from_json(data)


def read_graph_directory(directory: str) -> Dict[str, DecoratedGraph]:
    """
    Reads all .json files of a directory, keyed by file name.
    """
    result = {}
    for name in sorted(os.listdir(directory)):
        if name.endswith(".json"):
            result[name] = read_graph(os.path.join(directory, name))
    logger.info("Read %d graphs from %s", len(result), directory)
    return result


def write_graph(decorated: GraphLike, path: str):
    data = graph_to_json(decorated) if isinstance(decorated, HalfEdgeGraph) else decorated_to_json(decorated)
    write_report(data, path)


def to_jsonable(value: Any) -> Any:
    """
    Converts report values into plain JSON types: tuples to lists, fractions to strings, enums to their values and
    numpy scalars to Python numbers. Dictionary keys become strings.
    """
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else int(value)
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Mapping):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, HalfEdgeGraph):
        return graph_to_json(value)
    if isinstance(value, DecoratedGraph):
        return decorated_to_json(value)
    return value


def dump_report(report: Any) -> str:
    """
    The deterministic JSON text of a report.
    """
    return json.dumps(to_jsonable(report), sort_keys=True, indent=2) + "\n"


def write_report(report: Any, path: Optional[str] = None) -> str:
    """
    Writes a report to the path, if given, and returns its text.
    """
    text = dump_report(report)
    if path is not None:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
        logger.info("Wrote %s", path)
    return text


def counterexample_to_json(error: CounterexampleFound) -> Dict[str, Any]:
    return {"property": error.prop, "payload": to_jsonable(error.payload)}


def graph_to_dot(decorated: GraphLike, name: str = "G") -> graphviz.Graph:
    """
    A DOT source of the graph. Vertices are labelled genus/class, legs are small point nodes, loops and parallel
    edges are drawn individually.

    :param decorated: The graph
    :type decorated: Union[HalfEdgeGraph, DecoratedGraph]
    :return: The DOT source
    :rtype: graphviz.Graph
    """
    if isinstance(decorated, HalfEdgeGraph):
        decorated = DecoratedGraph(decorated)
    graph = decorated.graph
    dot = graphviz.Graph(name=name, strict=False)
    for v in range(graph.number_of_vertices):
        label = "{}/{}".format(decorated.genus[v], ",".join(str(x) for x in decorated.classes[v]))
        dot.node("v{}".format(v), label=label, shape="circle")
    for a, b in graph.internal_edges():
        dot.edge("v{}".format(graph.vertex_of(a)), "v{}".format(graph.vertex_of(b)))
    for half_edge in graph.external_half_edges():
        leg = "leg{}".format(graph.label(half_edge))
        dot.node(leg, label=str(graph.label(half_edge)), shape="plaintext")
        dot.edge("v{}".format(graph.vertex_of(half_edge)), leg)
    return dot


def poset_to_dot(poset: ContractionPoset, name: str = "P") -> graphviz.Digraph:
    """
    The Hasse diagram of a contraction poset, nodes named by certificate digests, arrows from smaller to larger
    elements.
    """
    dot = graphviz.Digraph(name=name)
    dot.attr(rankdir="BT")
    hasse = poset.hasse_diagram()
    for certificate in sorted(poset.elements):
        decorated = poset.elements[certificate]
        dot.node(decorated.digest()[:12], label="{}V {}E".format(decorated.graph.number_of_vertices,
                                                                  len(decorated.graph.internal_edges())))
    for lower, upper in sorted(hasse.edges()):
        dot.edge(poset.elements[lower].digest()[:12], poset.elements[upper].digest()[:12])
    return dot


def write_dot(dot: Union[graphviz.Graph, graphviz.Digraph], path: str):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dot.source)
    logger.info("Wrote %s", path)
