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
    Sweep configuration: the parameter ranges of the verification suites, resource ceilings and semantics flags.

    Configurations start from a named profile. A JSON file and keyword overrides are merged on top, and the
    environment variable FSSTRATA_CEILING replaces the resource ceiling.

    Usage
    -----

    .. code-block:: python

        >>> config = SweepConfig.from_profile("small", jobs=2)
        >>> config.max_legs, config.jobs
        (4, 2)

    Methods
    -------
"""

from __future__ import annotations

import dataclasses
import json
import logging
import os
from dataclasses import dataclass
from typing import Any, Dict, Mapping, Optional, Tuple

from fsStrata.common import DEFAULT_CEILING
from fsStrata.decorated_graphs import CurveClassMonoid
from fsStrata.halfedge_analysis import FreeEdgeSemantics, HeightVariant

logger = logging.getLogger(__name__)

CEILING_VARIABLE = "FSSTRATA_CEILING"


@dataclass(frozen=True)
class SweepConfig:
    """
    Ranges of the verification suites. All bounds are inclusive.

    max_genus, max_legs and max_degree bound the enumeration oracle and poset suites; bound_genus, bound_legs,
    bound_degree and max_free the saturated graphs of the bound suite; max_tree_excess its trees.
    """
    max_genus: int = 1
    max_legs: int = 4
    max_degree: int = 1
    bound_genus: int = 1
    bound_legs: int = 2
    bound_degree: int = 1
    max_free: int = 2
    max_tree_excess: int = 2
    max_reduction_excess: int = 2
    max_tree_legs: int = 14
    max_independence_edges: int = 5
    max_gf_n: int = 20
    max_gf_d: int = 6
    max_invariant_n: int = 12
    max_invariant_d: int = 4
    m0n_range: Tuple[int, int] = (4, 9)
    max_euler_n: int = 6
    ceiling: int = DEFAULT_CEILING
    free_edge_semantics: FreeEdgeSemantics = FreeEdgeSemantics.INTERIOR
    height_variant: HeightVariant = HeightVariant.STANDARD
    degree: Tuple[int, ...] = (1,)
    jobs: int = 1
    progress: bool = False
    output: Optional[str] = None

    def __post_init__(self):
        # Values coming from JSON arrive as lists and strings.
        object.__setattr__(self, "m0n_range", tuple(int(x) for x in self.m0n_range))
        object.__setattr__(self, "degree", tuple(int(x) for x in self.degree))
        object.__setattr__(self, "free_edge_semantics", FreeEdgeSemantics(self.free_edge_semantics))
        object.__setattr__(self, "height_variant", HeightVariant(self.height_variant))

        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            if field.type in ("int", int) and (not isinstance(value, int) or value < 0):
                raise ValueError("{} has to be a nonnegative integer, got {}".format(field.name, value))
        if self.ceiling < 1 or self.jobs < 1:
            raise ValueError("ceiling and jobs have to be positive")
        if len(self.m0n_range) != 2 or not 3 <= self.m0n_range[0] <= self.m0n_range[1]:
            raise ValueError("m0n_range has to be a pair 3 <= low <= high, got {}".format(self.m0n_range))
        if not self.degree or any(d <= 0 for d in self.degree):
            raise ValueError("The degree functional needs positive entries")
        if self.max_genus > 1:
            raise ValueError("The enumeration oracle supports genus at most 1")
        if 2 * self.max_genus - 2 + self.max_legs + 2 * self.max_degree > 7:
            raise ValueError("The enumeration oracle covers graphs with at most 7 vertices")

    @property
    def monoid_rank(self) -> int:
        return len(self.degree)

    def monoid(self) -> CurveClassMonoid:
        return CurveClassMonoid(self.degree)

    @staticmethod
    def from_profile(name: str = "small", config_file: Optional[str] = None, **overrides) -> SweepConfig:
        """
        Builds a configuration from a named profile, an optional JSON file and keyword overrides, in that order.
        FSSTRATA_CEILING replaces the ceiling of the profile and the file, but not an explicit ceiling override.

        :param name: 'small' or 'full'
        :type name: str
        :param config_file: Path to a JSON object with field values
        :type config_file: Optional[str]
        :return: The configuration
        :rtype: SweepConfig
        """
        if name not in PROFILES:
            raise ValueError("Unknown profile '{}', expected one of {}".format(name, sorted(PROFILES)))
        values: Dict[str, Any] = dict(PROFILES[name])
        if config_file is not None:
            values.update(load_config_file(config_file))
        overrides = {k: v for k, v in overrides.items() if v is not None}
        if CEILING_VARIABLE in os.environ and "ceiling" not in overrides:
            try:
                values["ceiling"] = int(os.environ[CEILING_VARIABLE])
            except ValueError:
                raise ValueError("{} has to be an integer".format(CEILING_VARIABLE))
            logger.info("Resource ceiling %d taken from %s", values["ceiling"], CEILING_VARIABLE)
        values.update(overrides)
        return SweepConfig(**values)

    def to_json(self) -> Dict[str, Any]:
        result = dataclasses.asdict(self)
        result["free_edge_semantics"] = self.free_edge_semantics.value
        result["height_variant"] = self.height_variant.value
        result["m0n_range"] = list(self.m0n_range)
        result["degree"] = list(self.degree)
        # Output location and execution details do not change results.
        for key in ("output", "jobs", "progress"):
            del result[key]
        return result


def load_config_file(path: str) -> Mapping[str, Any]:
    """
    Reads a JSON object of configuration values, rejecting unknown keys.
    """
    with open(path, encoding="utf-8") as handle:
        values = json.load(handle)
    if not isinstance(values, dict):
        raise ValueError("The configuration file has to contain a JSON object")
    known = {field.name for field in dataclasses.fields(SweepConfig)}
    unknown = sorted(set(values) - known)
    if unknown:
        raise ValueError("Unknown configuration keys: {}".format(", ".join(unknown)))
    return values


PROFILES: Dict[str, Dict[str, Any]] = {
    "small": {},
    "full": {
        "max_legs": 5,
        "bound_genus": 2,
        "bound_legs": 8,
        "bound_degree": 2,
        "max_free": 3,
        "max_tree_excess": 3,
        "max_independence_edges": 7,
        "max_euler_n": 7,
    },
}
