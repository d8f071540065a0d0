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
    Unittests for config.py
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

from fsStrata.config import *


def _write_json(directory: str, data) -> str:
    path = os.path.join(directory, "config.json")
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(data, handle)
    return path


class TestSweepConfig(unittest.TestCase):

    def test_defaults(self):
        config = SweepConfig()

        assert config.free_edge_semantics == FreeEdgeSemantics.INTERIOR
        assert config.height_variant == HeightVariant.STANDARD
        assert config.monoid_rank == 1
        assert config.monoid().degree == (1,)

    def test_values_from_json_types(self):
        config = SweepConfig(m0n_range=[4, 6], degree=[1, 2], free_edge_semantics="endpoint",
                             height_variant="leg-bound")

        assert config.m0n_range == (4, 6)
        assert config.degree == (1, 2)
        assert config.free_edge_semantics == FreeEdgeSemantics.ENDPOINT
        assert config.height_variant == HeightVariant.LEG_BOUND

    def test_invalid_values(self):
        for values in [{"max_legs": -1}, {"max_legs": "4"}, {"ceiling": 0}, {"jobs": 0}, {"m0n_range": [2, 5]},
                       {"m0n_range": [6, 5]}, {"degree": []}, {"degree": [0]}, {"max_genus": 2},
                       {"max_legs": 7}, {"free_edge_semantics": "both"}]:
            with pytest.raises(ValueError):
                SweepConfig(**values)

    def test_to_json(self):
        data = SweepConfig(jobs=3, output="out", progress=True).to_json()

        assert "jobs" not in data
        assert "output" not in data
        assert "progress" not in data
        assert data["free_edge_semantics"] == "interior"
        assert data["m0n_range"] == [4, 9]
        json.dumps(data)


class TestProfiles(unittest.TestCase):

    @mock.patch.dict(os.environ, {}, clear=True)
    def test_small(self):
        config = SweepConfig.from_profile("small", jobs=2)

        assert config.max_legs == 4
        assert config.jobs == 2

    @mock.patch.dict(os.environ, {}, clear=True)
    def test_full(self):
        config = SweepConfig.from_profile("full")

        assert config.max_legs == 5
        assert (config.bound_genus, config.bound_legs, config.bound_degree) == (2, 8, 2)
        assert config.max_free == 3
        assert config.max_tree_excess == 3

    @mock.patch.dict(os.environ, {}, clear=True)
    def test_small_bound_sweep_is_reduced(self):
        small = SweepConfig.from_profile("small")
        full = SweepConfig.from_profile("full")

        assert small.bound_legs < full.bound_legs
        assert small.bound_genus <= full.bound_genus

    def test_unknown_profile(self):
        with pytest.raises(ValueError):
            SweepConfig.from_profile("huge")

    @mock.patch.dict(os.environ, {}, clear=True)
    def test_none_overrides_are_ignored(self):
        assert SweepConfig.from_profile("full", max_legs=None).max_legs == 5

    @mock.patch.dict(os.environ, {}, clear=True)
    def test_config_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = _write_json(directory, {"max_legs": 3, "m0n_range": [4, 5]})
            config = SweepConfig.from_profile("full", path, max_free=1)

        assert config.max_legs == 3
        assert config.m0n_range == (4, 5)
        assert config.max_free == 1
        assert config.bound_genus == 2

    def test_unknown_keys(self):
        with tempfile.TemporaryDirectory() as directory:
            path = _write_json(directory, {"max_legs": 3, "colour": "red"})
            with pytest.raises(ValueError, match="colour"):
                load_config_file(path)

    def test_not_an_object(self):
        with tempfile.TemporaryDirectory() as directory:
            path = _write_json(directory, [1, 2])
            with pytest.raises(ValueError):
                load_config_file(path)

    @mock.patch.dict(os.environ, {CEILING_VARIABLE: "500"})
    def test_ceiling_from_environment(self):
        assert SweepConfig.from_profile("small").ceiling == 500
        assert SweepConfig.from_profile("small", ceiling=None).ceiling == 500

    @mock.patch.dict(os.environ, {CEILING_VARIABLE: "500"})
    def test_explicit_ceiling_beats_environment(self):
        assert SweepConfig.from_profile("small", ceiling=10).ceiling == 10

    @mock.patch.dict(os.environ, {CEILING_VARIABLE: "500"})
    def test_environment_beats_config_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = _write_json(directory, {"ceiling": 20})
            config = SweepConfig.from_profile("small", path)

        assert config.ceiling == 500

    @mock.patch.dict(os.environ, {CEILING_VARIABLE: "many"})
    def test_invalid_ceiling_from_environment(self):
        with pytest.raises(ValueError):
            SweepConfig.from_profile("small")
