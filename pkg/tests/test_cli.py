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
    Unittests for cli.py
"""
import json
import os
import tempfile
import unittest
from unittest import mock

# noinspection PyUnresolvedReferences
import pytest
# noinspection PyUnresolvedReferences
import pytest_socket

from fsStrata.cli import *
from fsStrata.decorated_graphs import DecoratedGraph
from fsStrata.fs_calculus import surjection_count
from fsStrata.serialization import to_jsonable, write_graph

TINY_CONFIG = {"max_genus": 0, "max_legs": 3, "max_degree": 0, "bound_genus": 0, "bound_legs": 3,
               "bound_degree": 0, "max_free": 0, "max_tree_excess": 1, "max_reduction_excess": 1,
               "max_tree_legs": 8, "max_independence_edges": 3, "max_gf_n": 8, "max_gf_d": 3,
               "max_invariant_n": 6, "max_invariant_d": 2, "m0n_range": [4, 6], "max_euler_n": 5}


class TestCli(unittest.TestCase):

    def setUp(self):
        self._directory = tempfile.TemporaryDirectory()
        self.directory = self._directory.name

    def tearDown(self):
        self._directory.cleanup()

    def _path(self, name: str) -> str:
        return os.path.join(self.directory, name)

    def _graph(self, name: str, decorated) -> str:
        path = self._path(name)
        write_graph(decorated, path)
        return path

    def _json(self, name: str, data) -> str:
        path = self._path(name)
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(data, handle)
        return path

    def _run(self, *argv):
        return run_subcommand(["--output", self._path("report.json")] + list(argv))

    def test_enumerate(self):
        code, report = self._run("enumerate", "--h", "0", "--n", "4")

        assert code == EXIT_OK
        assert report["count"] == 4
        assert report["beta"] == [0]

        code, naive = self._run("enumerate", "--h", "0", "--n", "4", "--naive")
        assert [c["digest"] for c in naive["classes"]] == [c["digest"] for c in report["classes"]]

    def test_report_file(self):
        code, report = self._run("enumerate", "--h", "1", "--n", "1")

        with open(self._path("report.json"), encoding="utf-8") as handle:
            assert json.load(handle) == to_jsonable(report)

    def test_resource_ceiling(self):
        code, report = self._run("--ceiling", "10", "enumerate", "--h", "0", "--n", "6")

        assert code == EXIT_RESOURCES
        assert report["ceiling"] == 10

    @mock.patch.dict(os.environ, {"FSSTRATA_CEILING": "10"})
    def test_resource_ceiling_from_environment(self):
        code, _ = self._run("enumerate", "--h", "0", "--n", "6")
        assert code == EXIT_RESOURCES

    @mock.patch.dict(os.environ, {"FSSTRATA_CEILING": "10"})
    def test_explicit_ceiling_beats_environment(self):
        code, report = self._run("--ceiling", "1000000", "enumerate", "--h", "0", "--n", "6")

        assert code == EXIT_OK
        assert report["count"] == 236

    def test_usage_errors(self):
        assert run_subcommand(["enumerate", "--h", "x", "--n", "4"]) == (EXIT_USAGE, None)
        assert run_subcommand(["enumerate", "--n", "4"]) == (EXIT_USAGE, None)
        assert run_subcommand(["--ceiling", "0", "enumerate", "--h", "0", "--n", "4"]) == (EXIT_USAGE, None)

    def test_version(self):
        assert run_subcommand(["--version"]) == (EXIT_OK, None)

    def test_poset(self):
        code, report = self._run("poset", "--h", "0", "--n", "4", "--dot", self._path("poset.dot"))

        assert code == EXIT_OK
        assert report["antisymmetric"]
        assert len(report["elements"]) == 4
        assert len(report["covers"]) == 3
        assert os.path.exists(self._path("poset.dot"))

        code, report = self._run("poset", "--h", "0", "--n", "4", "--kind", "q")
        assert len(report["elements"]) == 1

    def test_saturate(self):
        path = self._graph("path.json", DecoratedGraph.from_edges(2, [(0, 1)], {1: 0, 2: 0, 3: 1, 4: 1}))
        code, report = self._run("saturate", "--graph", path)

        assert code == EXIT_OK
        assert not report["input_saturated"]
        assert len(report["graph"]["vertices"]) == 1

    def test_free_edges(self):
        path = self._graph("two.json", DecoratedGraph.from_edges(2, [(0, 1)], {1: 0, 2: 1}, classes=[1, 1]))
        code, report = self._run("free-edges", "--graph", path)

        assert code == EXIT_OK
        assert report["count_free"] == 2
        assert report["classes"] == [[0, 1]]

        loop = self._graph("loop.json", DecoratedGraph.from_edges(1, [(0, 0)], {1: 0}, classes=[1]))
        code, report = self._run("free-edges", "--graph", loop, "--semantics", "endpoint")
        assert report["count_free"] == 3

    def test_bounds_check(self):
        path = self._graph("two.json", DecoratedGraph.from_edges(2, [(0, 1)], {1: 0, 2: 1}, classes=[1, 1]))
        code, report = self._run("bounds-check", "--graph", path, "--i", "2")

        assert code == EXIT_OK
        assert report["bound_half_edges"] == 2
        assert report["plain_vertex_bound"]
        assert report["reduced_leg_bound"]
        assert report["counterexamples"] == []

        code, _ = self._run("bounds-check", "--graph", path, "--i", "1")
        assert code == EXIT_INVALID_INPUT

    def test_bounds_check_needs_a_graph(self):
        code, report = self._run("bounds-check")

        assert code == EXIT_INVALID_INPUT
        assert "--sweep" in report["error"]

    def test_reduce(self):
        path = self._graph("corolla.json", DecoratedGraph.from_edges(1, [], {k: 0 for k in range(1, 6)}))
        code, report = self._run("reduce", "--graph", path)

        assert code == EXIT_OK
        assert report["factor_count"] == 4
        assert report["graph"]["labels"] == {"0": 1, "1": 2, "2": 3}

    def test_orbits(self):
        code, report = self._run("orbits", "--h", "0", "--n", "5")

        assert code == EXIT_OK
        assert len(report["orbits"]) == 1
        assert report["orbits"][0]["sizes"] == {3: 1, 4: 1, 5: 1}

    def test_independence(self):
        path = self._graph("theta.json", DecoratedGraph.from_edges(2, [(0, 1), (0, 1), (0, 1)]))
        code, report = self._run("independence", "--graph", path)

        assert code == EXIT_OK
        assert report["ranks"] == {-1: 0, 0: 2}
        assert report["i_invariant"] == 2
        assert report["tutte01"] == 2

    def test_missing_file(self):
        code, _ = self._run("independence", "--graph", self._path("missing.json"))
        assert code == EXIT_INVALID_INPUT

    def test_ge_enumerate(self):
        code, report = self._run("ge-enumerate", "--e", "1", "--excess", "1")

        assert code == EXIT_OK
        assert [level["count"] for level in report["levels"]] == [1, 2]

    def test_e1_table(self):
        code, report = self._run("e1-table", "--e", "1", "--n", "1", "--excess", "1", "--max-q", "2")
        assert report["table"] == {0: {0: 1, 1: 0, 2: 0}, 1: {0: 0, 1: 0, 2: 0}}

    def test_reduce_tree(self):
        path = self._graph("tree.json", DecoratedGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)],
                                                                  {1: 0, 2: 0, 3: 1, 4: 2, 5: 2, 6: 3, 7: 3}))
        code, report = self._run("reduce-tree", "--graph", path)

        assert code == EXIT_OK
        assert report["kind"] == "case1"
        assert report["merged"] == [1, 2]
        assert report["exchanged"] is None

        loop = self._graph("loop.json", DecoratedGraph.from_edges(1, [(0, 0)], {1: 0}))
        code, _ = self._run("reduce-tree", "--graph", loop)
        assert code == EXIT_INVALID_INPUT

    def test_gf(self):
        code, report = self._run("gf", "projective", "--d", "2", "--terms", "5")

        assert code == EXIT_OK
        assert report["series"] == [0, 0, 2, 6, 14]
        assert report["denominator"] == {1: 1, 2: 1}

    def test_gf_fit(self):
        path = self._json("values.json", [surjection_count(n, 2) for n in range(12)])
        code, report = self._run("gf", "fit", "--file", path, "--C", "2")

        assert code == EXIT_OK
        assert report["fit"]["polynomials"] == {1: (-2,), 2: (1,)}
        assert report["fit"]["tail_start"] == 1

        path = self._json("powers.json", [3 ** n for n in range(6)])
        code, report = self._run("gf", "fit", "--file", path, "--C", "1")
        assert code == EXIT_PROPERTY_FAILED
        assert report["fit"] is None

        code, _ = self._run("gf", "fit")
        assert code == EXIT_INVALID_INPUT

    def test_height_constant(self):
        code, report = self._run("height-constant", "--i", "2", "--g", "1", "--degree", "1", "--variant", "leg-bound")

        assert code == EXIT_OK
        assert report["bound"] == 126

    def test_height_constant_variant_names(self):
        _, report = self._run("height-constant", "--i", "2", "--g", "1", "--degree", "1", "--variant", "theorem")
        assert report["bound"] == 98
        assert report["variant"] == HeightVariant.STANDARD

        _, report = self._run("height-constant", "--i", "2", "--g", "1", "--degree", "1", "--variant", "prop62")
        assert report["bound"] == 126
        assert report["variant"] == HeightVariant.LEG_BOUND

        code, _ = self._run("height-constant", "--i", "2", "--g", "1", "--degree", "1", "--variant", "other")
        assert code == EXIT_USAGE

    def test_bounds_sweep_variant(self):
        path = self._json("config.json", TINY_CONFIG)
        code, report = self._run("bounds-check", "--sweep", "--config", path, "--variant", "leg-bound")

        assert code == EXIT_OK
        assert report["details"]["height_variant"] == "leg-bound"

    def test_height_trace(self):
        code, report = self._run("height-trace", "--expr", "conv(shift(P3,2),P1)")

        assert code == EXIT_OK
        assert report["bound"] == 4
        assert len(report["trace"]) == 4

        code, _ = self._run("height-trace", "--expr", "conv(P1")
        assert code == EXIT_INVALID_INPUT

    @pytest.mark.xdist_group("verification_group")
    def test_verify_all(self):
        path = self._json("tiny.json", TINY_CONFIG)
        code, report = self._run("verify-all", "--config", path)

        assert code == EXIT_OK
        assert report["status"] == "passed"

    def test_main(self):
        assert main(["--output", self._path("report.json"), "height-constant", "--i", "0", "--g", "0",
                     "--degree", "0"]) == EXIT_OK
