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
    Property sweeps checking the finite combinatorics against independent oracles.

    Every suite checks one family of properties over the ranges of a :class:`~fsStrata.config.SweepConfig` and
    returns a :class:`SuiteResult`. A failed property is recorded as a counterexample, an exceeded resource ceiling
    aborts the suite. Results contain no timings, so two runs with the same configuration produce the same report.

    Usage
    -----

    .. code-block:: python

        >>> config = SweepConfig.from_profile("small")
        >>> run_suite("generating_functions", config).status
        'passed'

    Methods
    -------
"""

from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List

from scipy.special import stirling2

from fsStrata.common import CounterexampleFound, ResourceLimitExceeded, certificate_digest
from fsStrata.config import SweepConfig
from fsStrata.decorated_graphs import CurveClassMonoid, build_q_poset, build_stab_poset, enumerate_q, \
    enumerate_stab, enumerate_stab_naive, invariant_I, saturation_map
from fsStrata.fs_calculus import fit_exponential_polynomial, gf_projective, invariant_orbit_count, \
    invariants_gf_projective, surjection_count
from fsStrata.genus0_fs import StableTreeClass, apply_reduction, b2_closed_form, euler_characteristic_m0n, \
    find_reduction, poincare_m0n
from fsStrata.graph_core import connected_multigraphs, excess_trees
from fsStrata.halfedge_analysis import bound_halfedge_bound, check_nonplain_valence_bound, check_plain_bound, \
    check_reduced_leg_bound, check_tree_bound, classify_half_edges, count_free, decorated_vertex_bound, \
    height_constant, qualifying_trees, reduce_graph
from fsStrata.independence_homology import homology_ranks, independence_complex, tutte_01
from fsStrata.serialization import counterexample_to_json, dump_report

logger = logging.getLogger(__name__)


@dataclass
class SuiteResult:
    name: str
    status: str = "passed"
    checked: int = 0
    counterexamples: List[Dict[str, Any]] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "passed"

    def fail(self, prop: str, payload: Dict[str, Any]):
        logger.warning("%s: counterexample to '%s': %s", self.name, prop, payload)
        self.counterexamples.append({"property": prop, "payload": payload})
        self.status = "failed"

    def record(self, error: CounterexampleFound):
        self.fail(error.prop, counterexample_to_json(error)["payload"])

    def to_json(self) -> Dict[str, Any]:
        return {"status": self.status, "checked": self.checked, "counterexamples": self.counterexamples,
                "details": self.details}


def _classes_up_to(monoid: CurveClassMonoid, max_degree: int):
    for values in itertools.product(range(max_degree + 1), repeat=monoid.rank):
        if monoid.degree_of(values) <= max_degree:
            yield monoid.element(values)


def _stab_ranges(config: SweepConfig):
    monoid = config.monoid()
    for h in range(config.max_genus + 1):
        for n in range(config.max_legs + 1):
            for beta in _classes_up_to(monoid, config.max_degree):
                yield h, n, beta, monoid


def check_enumeration_oracle(config: SweepConfig) -> SuiteResult:
    """
    Stab(h,n,beta) from the expansion search agrees class by class with the naive generator.
    """
    result = SuiteResult("enumeration_oracle")
    for h, n, beta, monoid in _stab_ranges(config):
        fast = {d.certificate() for d in enumerate_stab(h, n, beta, monoid, config.ceiling)}
        naive = {d.certificate() for d in enumerate_stab_naive(h, n, beta, monoid)}
        result.checked += 1
        result.details["Stab({},{},{})".format(h, n, list(beta))] = len(fast)
        if fast != naive:
            result.fail("enumeration matches naive generator",
                        {"h": h, "n": n, "beta": list(beta), "enumerated": len(fast), "naive": len(naive),
                         "only_enumerated": sorted(map(certificate_digest, fast - naive)),
                         "only_naive": sorted(map(certificate_digest, naive - fast))})
    return result


def check_poset_soundness(config: SweepConfig) -> SuiteResult:
    """
    The contraction relations on Stab and Q are antisymmetric, the invariant I is monotone along Q and saturation
    preserves the order.
    """
    result = SuiteResult("poset_soundness")
    for h, n, beta, monoid in _stab_ranges(config):
        key = {"h": h, "n": n, "beta": list(beta)}
        try:
            stab_poset = build_stab_poset(h, n, beta, monoid, config.ceiling)
            q_poset = build_q_poset(h, n, beta, monoid, config.ceiling, stab_poset)
        except CounterexampleFound as error:
            result.record(error)
            continue
        result.checked += 1
        result.details["Q({},{},{})".format(h, n, list(beta))] = len(q_poset)
        for name, poset in (("Stab", stab_poset), ("Q", q_poset)):
            if not poset.is_antisymmetric():
                cycle = [[certificate_digest(u), certificate_digest(w)] for u, w in poset.find_cycle()]
                result.fail("{} relation is antisymmetric".format(name), dict(key, cycle=cycle))
        for lower, upper in q_poset.relation_pairs():
            if invariant_I(q_poset.elements[lower]) > invariant_I(q_poset.elements[upper]):
                result.fail("invariant I is monotone", dict(key, lower=certificate_digest(lower),
                                                            upper=certificate_digest(upper)))
        projection = saturation_map(stab_poset)
        for lower, upper in stab_poset.covers():
            if not q_poset.leq(projection[lower], projection[upper]):
                result.fail("saturation preserves the order", dict(key, lower=certificate_digest(lower),
                                                                   upper=certificate_digest(upper)))
    return result


def check_independence(config: SweepConfig) -> SuiteResult:
    """
    For every connected multigraph the reduced homology of the independence complex is concentrated in degree
    |E| - e - 1 and its rank there equals T(0, 1).
    """
    result = SuiteResult("independence")
    graphs = connected_multigraphs(config.max_independence_edges, config.ceiling)
    for edges, level in sorted(graphs.items()):
        for graph in level:
            ranks = homology_ranks(independence_complex(graph))
            result.checked += 1
            payload = {"graph": repr(graph), "ranks": ranks.ranks}
            if not ranks.is_concentrated():
                result.fail("homology is concentrated in the top degree", payload)
            if ranks.i_invariant != tutte_01(graph):
                result.fail("I(G) equals T(0,1)", dict(payload, tutte01=tutte_01(graph)))
        result.details[str(edges)] = len(level)
    return result


def check_bounds(config: SweepConfig) -> SuiteResult:
    """
    The plain vertex, valence, decorated vertex and bound half-edge bounds for saturated graphs with few free
    half-edges, the legs of their reduced graphs against the height constant of the configured variant, and the
    external edge bound for qualifying trees.
    """
    result = SuiteResult("bounds")
    monoid = config.monoid()
    semantics = config.free_edge_semantics
    variant = config.height_variant
    result.details["height_variant"] = variant.value
    for g in range(config.bound_genus + 1):
        for n in range(config.bound_legs + 1):
            for beta in _classes_up_to(monoid, config.bound_degree):
                for decorated in enumerate_q(g, n, beta, monoid, config.ceiling):
                    classification = classify_half_edges(decorated, semantics)
                    i = classification.count_free
                    if i > config.max_free:
                        continue
                    result.checked += 1
                    payload = {"graph": repr(decorated), "i": i}
                    if not check_plain_bound(decorated, i, semantics):
                        result.fail("plain vertex bound", payload)
                    if not check_nonplain_valence_bound(decorated, i, semantics):
                        result.fail("non-plain valence bound", payload)
                    if not decorated_vertex_bound(decorated):
                        result.fail("decorated vertex bound", payload)
                    if classification.bound_half_edges():
                        try:
                            bound_halfedge_bound(decorated, semantics)
                        except CounterexampleFound as error:
                            result.record(error)
                    reduced = reduce_graph(decorated)
                    if not check_reduced_leg_bound(reduced, count_free(reduced, semantics), semantics, variant):
                        result.fail("legs of reduced graphs within the height constant",
                                    dict(payload, reduced=repr(reduced)))
                    degree = monoid.degree_of(beta)
                    result.details["height constant g={} degree={} i={}".format(g, degree, i)] = \
                        height_constant(i, g, degree, variant)
    for i in range(1, config.max_tree_excess + 1):
        trees = qualifying_trees(i)
        result.details["qualifying trees of excess {}".format(i)] = len(trees)
        for tree in trees:
            report = check_tree_bound(tree, i)
            result.checked += 1
            if not report.ok:
                result.fail("external edge bound of trees", {"graph": repr(tree), "i": i,
                                                             "external": report.external_count,
                                                             "m30": report.m30, "m31": report.m31, "s": report.s})
    return result


def check_reductions(config: SweepConfig) -> SuiteResult:
    """
    Every stable tree of degree index i with 13i/2 < n <= max_tree_legs admits a rewrite step, and replaying it
    reproduces the tree. Applicability does not depend on the leg labels, so one labelling per shape is checked.
    """
    result = SuiteResult("reductions")
    for i in range(1, config.max_reduction_excess + 1):
        for n in range(13 * i // 2 + 1, config.max_tree_legs + 1):
            trees = excess_trees(i, n_legs=n)
            for tree in trees:
                result.checked += 1
                try:
                    apply_reduction(find_reduction(StableTreeClass(tree)))
                except CounterexampleFound as error:
                    result.record(error)
            result.details["i={} n={}".format(i, n)] = len(trees)
    return result


def check_generating_functions(config: SweepConfig) -> SuiteResult:
    """
    Expansions of the projective generating functions against surjection counts, the invariant generating
    functions against orbit counts and the exponential polynomial fit against the projectives.
    """
    result = SuiteResult("generating_functions")
    for d in range(config.max_gf_d + 1):
        series = gf_projective(d).series(config.max_gf_n + 1)
        for n, value in enumerate(series):
            result.checked += 1
            expected = surjection_count(n, d)
            oracle = int(stirling2(n, d, exact=True)) * math.factorial(d)
            if value != expected or expected != oracle:
                result.fail("projective generating function", {"d": d, "n": n, "series": value,
                                                               "surjections": expected, "stirling": oracle})
    for d in range(1, config.max_invariant_d + 1):
        series = invariants_gf_projective(d).series(config.max_invariant_n + 1)
        for n, value in enumerate(series):
            result.checked += 1
            if value != invariant_orbit_count(n, d):
                result.fail("invariant generating function", {"d": d, "n": n, "series": value,
                                                              "orbits": invariant_orbit_count(n, d)})
    for d in range(1, min(config.max_gf_d, 3) + 1):
        target = gf_projective(d)
        fit = fit_exponential_polynomial(target.series(2 * d * (d + 1)), d)
        result.checked += 1
        if not fit.to_rational_gf().equals(target):
            result.fail("exponential polynomial fit recovers the projective", {"d": d,
                                                                                "fit": fit.polynomials})
    return result


def check_m0n(config: SweepConfig) -> SuiteResult:
    """
    Poincare duality and the closed form of b_2 for the Betti numbers of the genus zero moduli spaces, and their
    sum against the Euler characteristic of the stratification.
    """
    result = SuiteResult("m0n_oracle")
    low, high = config.m0n_range
    for n in range(low, high + 1):
        betti = poincare_m0n(n)
        result.checked += 1
        result.details[str(n)] = betti
        if betti != betti[::-1]:
            result.fail("Poincare duality", {"n": n, "betti": betti})
        if n >= 4 and betti[1] != b2_closed_form(n):
            result.fail("closed form of b_2", {"n": n, "betti": betti})
        if n <= config.max_euler_n and sum(betti) != euler_characteristic_m0n(n):
            result.fail("Euler characteristic", {"n": n, "betti": betti})
    return result


SUITES: Dict[str, Callable[[SweepConfig], SuiteResult]] = {
    "enumeration_oracle": check_enumeration_oracle,
    "poset_soundness": check_poset_soundness,
    "independence": check_independence,
    "bounds": check_bounds,
    "reductions": check_reductions,
    "generating_functions": check_generating_functions,
    "m0n_oracle": check_m0n,
}


def run_suite(name: str, config: SweepConfig) -> SuiteResult:
    """
    Runs a single suite. Exceeding the resource ceiling aborts the suite instead of failing it.
    """
    if name not in SUITES:
        raise ValueError("Unknown suite '{}', expected one of {}".format(name, sorted(SUITES)))
    try:
        result = SUITES[name](config)
    except ResourceLimitExceeded as error:
        logger.warning("%s aborted: %s", name, error)
        result = SuiteResult(name, "aborted", details={"what": error.what, "ceiling": error.ceiling,
                                                       "count": error.count})
    except CounterexampleFound as error:
        result = SuiteResult(name)
        result.record(error)
    logger.info("%s: %s after %d checks", name, result.status, result.checked)
    return result


def _run_all(config: SweepConfig) -> Dict[str, SuiteResult]:
    names = sorted(SUITES)
    if config.jobs == 1:
        results = [run_suite(name, config) for name in names]
    else:
        with ProcessPoolExecutor(max_workers=config.jobs) as executor:
            results = list(executor.map(run_suite, names, itertools.repeat(config)))
    return dict(zip(names, results))


def verify_all(config: SweepConfig) -> Dict[str, Any]:
    """
    Runs every suite, then all of them a second time to check that the serialized results are identical.

    :param config: The configuration
    :type config: SweepConfig
    :return: The report with the configuration, one entry per suite and the overall status
    :rtype: Dict[str, Any]
    """
    first = _run_all(config)
    second = _run_all(config)
    determinism = SuiteResult("determinism", checked=len(first))
    for name in sorted(first):
        if dump_report(first[name].to_json()) != dump_report(second[name].to_json()):
            determinism.fail("identical reports on reruns", {"suite": name})
    first["determinism"] = determinism

    statuses = {result.status for result in first.values()}
    status = "failed" if "failed" in statuses else ("aborted" if "aborted" in statuses else "passed")
    return {"config": config.to_json(), "suites": {name: r.to_json() for name, r in sorted(first.items())},
            "status": status}
