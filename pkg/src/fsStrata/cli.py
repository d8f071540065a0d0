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
    The fsstrata command line tool.

    Every subcommand writes a JSON report to stdout, or to the file given by --output. Log messages go to stderr.

    Exit codes: 0 on success, 1 if a property failed, 2 on usage errors, 3 if a resource ceiling was exceeded and
    4 on invalid input.

    Usage
    -----

    .. code-block:: bash

        fsstrata enumerate --h 0 --n 4 --beta 0
        fsstrata independence --graph loop.json
        fsstrata height-trace --expr "conv(shift(P3,2),P1)"
        fsstrata verify-all --profile small --jobs 4

    Methods
    -------
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

from fsStrata import __version__
from fsStrata.common import CounterexampleFound, FsStrataError, ResourceLimitExceeded
from fsStrata.config import CEILING_VARIABLE, SweepConfig
from fsStrata.decorated_graphs import CurveClassMonoid, build_q_poset, build_stab_poset, enumerate_stab, \
    enumerate_stab_naive, is_saturated, saturate
from fsStrata.fs_calculus import NoExponentialFit, fit_exponential_polynomial, gf_projective, \
    invariants_gf_projective, parse_height_expression
from fsStrata.genus0_fs import StableTreeClass, apply_reduction, e1_table, enumerate_ge, find_reduction
from fsStrata.halfedge_analysis import FreeEdgeSemantics, HeightVariant, bound_halfedge_bound, \
    check_nonplain_valence_bound, check_plain_bound, check_reduced_leg_bound, classify_half_edges, \
    decorated_vertex_bound, height_constant, is_reduced, orbit_decompose, reduce_graph, stratum_factorization
from fsStrata.independence_homology import homology_ranks, independence_complex, tutte_01
from fsStrata.serialization import counterexample_to_json, decorated_to_json, graph_to_dot, graph_to_json, \
    poset_to_dot, read_graph, write_dot, write_report
from fsStrata.verification import run_suite, verify_all

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PROPERTY_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCES = 3
EXIT_INVALID_INPUT = 4

Report = Dict[str, Any]

HEIGHT_VARIANTS = {variant.value: variant for variant in HeightVariant}
HEIGHT_VARIANTS.update({"theorem": HeightVariant.STANDARD, "prop62": HeightVariant.LEG_BOUND})


def _int_tuple(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma separated integers, got '{}'".format(text))


def _monoid(args) -> CurveClassMonoid:
    if args.degree is not None:
        return CurveClassMonoid(args.degree)
    return CurveClassMonoid((1,) * args.monoid_rank)


def _stab_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--h", type=int, required=True, help="total genus")
    parser.add_argument("--n", type=int, required=True, help="number of legs")
    parser.add_argument("--beta", type=_int_tuple, default=None, help="total curve class, e.g. 1 or 1,0")
    parser.add_argument("--monoid-rank", type=int, default=1, help="rank of the curve class monoid")
    parser.add_argument("--degree", type=_int_tuple, default=None, help="degree functional, e.g. 1,2")


def _height_variant(args) -> Optional[HeightVariant]:
    return HEIGHT_VARIANTS[args.variant] if args.variant is not None else None


def _class_entry(decorated) -> Report:
    return {"digest": decorated.digest(), "graph": decorated_to_json(decorated),
            "automorphisms": decorated.automorphism_order()}


def cmd_enumerate(args) -> Tuple[int, Report]:
    monoid = _monoid(args)
    generator = enumerate_stab_naive if args.naive else enumerate_stab
    kwargs = {} if args.naive else {"ceiling": args.ceiling, "progress": args.progress}
    classes = generator(args.h, args.n, args.beta, monoid, **kwargs)
    entries = sorted((_class_entry(d) for d in classes), key=lambda entry: entry["digest"])
    return EXIT_OK, {"h": args.h, "n": args.n, "beta": list(monoid.element(args.beta or monoid.zero)),
                     "count": len(entries), "classes": entries}


def cmd_poset(args) -> Tuple[int, Report]:
    monoid = _monoid(args)
    poset = build_stab_poset(args.h, args.n, args.beta, monoid, args.ceiling, progress=args.progress)
    if args.kind == "q":
        poset = build_q_poset(args.h, args.n, args.beta, monoid, args.ceiling, poset)
    if args.dot:
        write_dot(poset_to_dot(poset), args.dot)
    report = poset.to_json()
    report.update({"kind": args.kind, "antisymmetric": poset.is_antisymmetric()})
    return (EXIT_OK if report["antisymmetric"] else EXIT_PROPERTY_FAILED), report


def cmd_saturate(args) -> Tuple[int, Report]:
    decorated = read_graph(args.graph)
    saturated = saturate(decorated)
    if args.dot:
        write_dot(graph_to_dot(saturated), args.dot)
    return EXIT_OK, {"input_saturated": is_saturated(decorated), "digest": saturated.digest(),
                     "graph": decorated_to_json(saturated)}


def cmd_free_edges(args) -> Tuple[int, Report]:
    decorated = read_graph(args.graph)
    classification = classify_half_edges(decorated, FreeEdgeSemantics(args.semantics))
    return EXIT_OK, {"count_free": classification.count_free,
                     "free_per_vertex": list(classification.free_count),
                     "free": classification.free_half_edges(),
                     "bound": classification.bound_half_edges(),
                     "classes": [list(c) for c in classification.classes],
                     "tags": {h: tag.value for h, tag in sorted(classification.tags.items())}}


def cmd_bounds_check(args) -> Tuple[int, Report]:
    if args.sweep:
        config = SweepConfig.from_profile(args.profile, args.config, free_edge_semantics=args.semantics,
                                          ceiling=args.ceiling, height_variant=_height_variant(args))
        result = run_suite("bounds", config)
        code = {"passed": EXIT_OK, "failed": EXIT_PROPERTY_FAILED, "aborted": EXIT_RESOURCES}[result.status]
        return code, result.to_json()
    if args.graph is None or args.i is None:
        raise ValueError("bounds-check needs --graph and --i, or --sweep")

    decorated = read_graph(args.graph)
    semantics = FreeEdgeSemantics(args.semantics)
    report: Report = {"i": args.i, "counterexamples": []}
    if is_saturated(decorated):
        report["plain_vertex_bound"] = check_plain_bound(decorated, args.i, semantics)
    report["nonplain_valence_bound"] = check_nonplain_valence_bound(decorated, args.i, semantics)
    report["decorated_vertex_bound"] = decorated_vertex_bound(decorated)
    if is_reduced(decorated):
        report["reduced_leg_bound"] = check_reduced_leg_bound(decorated, args.i, semantics,
                                                             _height_variant(args))
    if classify_half_edges(decorated, semantics).bound_half_edges():
        try:
            report["bound_half_edges"] = bound_halfedge_bound(decorated, semantics)
        except CounterexampleFound as error:
            report["counterexamples"].append(counterexample_to_json(error))
    failed = report["counterexamples"] or not all(value for key, value in report.items()
                                                  if key.endswith("bound"))
    return (EXIT_PROPERTY_FAILED if failed else EXIT_OK), report


def cmd_reduce(args) -> Tuple[int, Report]:
    reduced = reduce_graph(read_graph(args.graph))
    if args.dot:
        write_dot(graph_to_dot(reduced), args.dot)
    factorization = stratum_factorization(reduced)
    return EXIT_OK, {"digest": reduced.digest(), "graph": decorated_to_json(reduced),
                     "factor_count": factorization.factor_count,
                     "factorization": factorization.render().splitlines()}


def cmd_orbits(args) -> Tuple[int, Report]:
    monoid = _monoid(args)
    orbits = orbit_decompose(args.h, args.n, args.beta, args.i_max, monoid, args.ceiling,
                             FreeEdgeSemantics(args.semantics))
    entries = [{"digest": entry.representative.digest(), "graph": decorated_to_json(entry.representative),
                "free": entry.free, "sizes": entry.sizes,
                "factorization": stratum_factorization(entry.representative).render().splitlines()}
               for entry in orbits]
    return EXIT_OK, {"h": args.h, "n": args.n, "i_max": args.i_max, "orbits": entries}


def cmd_independence(args) -> Tuple[int, Report]:
    graph = read_graph(args.graph).graph
    complex_ = independence_complex(graph)
    ranks = homology_ranks(complex_)
    return EXIT_OK, {"faces": {k: [list(face) for face in faces] for k, faces in sorted(complex_.faces.items())},
                     "ranks": ranks.ranks, "i_invariant": ranks.i_invariant, "tutte01": tutte_01(graph)}


def cmd_ge_enumerate(args) -> Tuple[int, Report]:
    index = enumerate_ge(args.e, args.excess, args.ceiling)
    return EXIT_OK, {"e": args.e, "levels": [
        {"p": entry.p, "count": len(entry.graphs),
         "classes": [{"graph": graph_to_json(g.graph), "automorphisms": g.automorphism_order,
                      "i_invariant": g.i_invariant} for g in entry.graphs]}
        for entry in index]}


def cmd_e1_table(args) -> Tuple[int, Report]:
    return EXIT_OK, {"e": args.e, "n": args.n, "table": e1_table(args.e, args.n, args.excess, args.max_q,
                                                                 args.ceiling)}


def cmd_reduce_tree(args) -> Tuple[int, Report]:
    tree = StableTreeClass(read_graph(args.graph).graph)
    step = find_reduction(tree)
    apply_reduction(step)
    return EXIT_OK, {"kind": step.kind.value, "merged": list(step.merged), "delta": step.delta,
                     "residual": graph_to_json(step.residual.graph),
                     "exchanged": graph_to_json(step.exchanged.graph) if step.exchanged else None,
                     "degree": tree.degree, "n": tree.n}


def cmd_gf(args) -> Tuple[int, Report]:
    if args.kind == "fit":
        if args.file is None:
            raise ValueError("gf fit needs --file")
        with open(args.file, encoding="utf-8") as handle:
            values = json.load(handle)
        if not isinstance(values, list) or not all(isinstance(v, int) for v in values):
            raise ValueError("{} has to contain a JSON list of integers".format(args.file))
        try:
            fit = fit_exponential_polynomial(values, args.C)
        except NoExponentialFit as error:
            return EXIT_PROPERTY_FAILED, {"fit": None, "reason": str(error)}
        gf = fit.to_rational_gf()
        return EXIT_OK, {"fit": {"polynomials": fit.polynomials, "tail_start": fit.tail_start,
                                 "multiplicities": fit.multiplicities},
                         "numerator": list(gf.numerator), "denominator": gf.multiplicities}
    gf = gf_projective(args.d) if args.kind == "projective" else invariants_gf_projective(args.d)
    return EXIT_OK, {"d": args.d, "numerator": list(gf.numerator), "denominator": gf.multiplicities,
                     "expression": str(gf.as_expr()), "series": gf.series(args.terms)}


def cmd_height_constant(args) -> Tuple[int, Report]:
    variant = HEIGHT_VARIANTS[args.variant]
    return EXIT_OK, {"i": args.i, "g": args.g, "degree": args.degree, "variant": variant,
                     "bound": height_constant(args.i, args.g, args.degree, variant)}


def cmd_height_trace(args) -> Tuple[int, Report]:
    sequence = parse_height_expression(args.expr)
    certificate = sequence.certificate
    return EXIT_OK, {"expression": sequence.render(), "bound": certificate.bound,
                     "trace": [step.render() for step in certificate.steps],
                     "values": sequence.values(args.terms)}


def cmd_verify_all(args) -> Tuple[int, Report]:
    config = SweepConfig.from_profile(args.profile, args.config, jobs=args.jobs, progress=args.progress,
                                      free_edge_semantics=args.semantics, ceiling=args.ceiling,
                                      height_variant=_height_variant(args))
    report = verify_all(config)
    code = {"passed": EXIT_OK, "failed": EXIT_PROPERTY_FAILED, "aborted": EXIT_RESOURCES}[report["status"]]
    return code, report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fsstrata", description="Combinatorics of stable graph strata and "
                                                                   "FS^op module bookkeeping.")
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    parser.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    parser.add_argument("-v", "--verbose", action="store_true", help="shorthand for --log-level INFO")
    parser.add_argument("--output", default=None, help="write the report to this file")
    parser.add_argument("--ceiling", type=int, default=None, help="resource ceiling of the enumerations")
    parser.add_argument("--progress", action="store_true", help="show progress bars")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list Stab(h,n,beta)")
    _stab_arguments(p)
    p.add_argument("--naive", action="store_true", help="use the naive generator")
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("poset", help="contraction poset of Stab or Q")
    _stab_arguments(p)
    p.add_argument("--kind", choices=["stab", "q"], default="stab")
    p.add_argument("--dot", default=None, help="write the Hasse diagram as DOT")
    p.set_defaults(handler=cmd_poset)

    for name, handler, helptext in (("saturate", cmd_saturate, "saturation of a graph"),
                                    ("reduce", cmd_reduce, "reduced graph and stratum factorization"),
                                    ("independence", cmd_independence, "independence complex homology"),
                                    ("reduce-tree", cmd_reduce_tree, "rewrite step of a stable tree")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--graph", required=True, help="JSON graph file")
        if name in ("saturate", "reduce"):
            p.add_argument("--dot", default=None, help="write the result as DOT")
        p.set_defaults(handler=handler)

    semantics = [s.value for s in FreeEdgeSemantics]
    p = sub.add_parser("free-edges", help="classify half-edges")
    p.add_argument("--graph", required=True)
    p.add_argument("--semantics", choices=semantics, default=FreeEdgeSemantics.INTERIOR.value)
    p.set_defaults(handler=cmd_free_edges)

    p = sub.add_parser("bounds-check", help="check the bounds for a graph or sweep them")
    p.add_argument("--graph", default=None)
    p.add_argument("--i", type=int, default=None, help="bound on the free half-edges")
    p.add_argument("--sweep", action="store_true")
    p.add_argument("--profile", default="small")
    p.add_argument("--config", default=None, help="JSON configuration file")
    p.add_argument("--semantics", choices=semantics, default=FreeEdgeSemantics.INTERIOR.value)
    p.add_argument("--variant", choices=list(HEIGHT_VARIANTS), default=None)
    p.set_defaults(handler=cmd_bounds_check)

    p = sub.add_parser("orbits", help="orbit decomposition into reduced graphs")
    _stab_arguments(p)
    p.add_argument("--i-max", type=int, default=0)
    p.add_argument("--semantics", choices=semantics, default=FreeEdgeSemantics.INTERIOR.value)
    p.set_defaults(handler=cmd_orbits)

    p = sub.add_parser("ge-enumerate", help="connected graphs of genus e")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--excess", type=int, default=0)
    p.set_defaults(handler=cmd_ge_enumerate)

    p = sub.add_parser("e1-table", help="upper bounds for the first page")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--excess", type=int, default=1)
    p.add_argument("--max-q", type=int, default=4)
    p.set_defaults(handler=cmd_e1_table)

    p = sub.add_parser("gf", help="generating functions")
    p.add_argument("kind", choices=["projective", "invariants", "fit"])
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--terms", type=int, default=10)
    p.add_argument("--file", default=None, help="JSON list of values to fit")
    p.add_argument("--C", type=int, default=1, help="largest base of the fit")
    p.set_defaults(handler=cmd_gf)

    p = sub.add_parser("height-constant", help="height bound for degree i")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--variant", choices=list(HEIGHT_VARIANTS), default=HeightVariant.STANDARD.value)
    p.set_defaults(handler=cmd_height_constant)

    p = sub.add_parser("height-trace", help="height certificate of an expression")
    p.add_argument("--expr", required=True)
    p.add_argument("--terms", type=int, default=8)
    p.set_defaults(handler=cmd_height_trace)

    p = sub.add_parser("verify-all", help="run every verification suite")
    p.add_argument("--profile", default="small")
    p.add_argument("--config", default=None, help="JSON configuration file")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--semantics", choices=semantics, default=None)
    p.add_argument("--variant", choices=list(HEIGHT_VARIANTS), default=None)
    p.set_defaults(handler=cmd_verify_all)
    return parser


def run_subcommand(argv: Optional[Sequence[str]] = None) -> Tuple[int, Optional[Report]]:
    """
    Parses the arguments, runs the subcommand and writes its report to stdout or the --output file.

    :param argv: The arguments without the program name
    :type argv: Optional[Sequence[str]]
    :return: The exit code and the report, which is None if the subcommand could not run
    :rtype: Tuple[int, Optional[Dict[str, Any]]]
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return (EXIT_OK if exit_.code == 0 else EXIT_USAGE), None

    logging.basicConfig(level="INFO" if args.verbose else args.log_level,
                        format="%(asctime)s %(levelname)s %(name)s %(message)s", stream=sys.stderr)
    if args.ceiling is not None and args.ceiling < 1:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE, None

    try:
        if args.ceiling is None and CEILING_VARIABLE in os.environ:
            args.ceiling = int(os.environ[CEILING_VARIABLE])
        code, report = args.handler(args)
    except ResourceLimitExceeded as error:
        logger.error("%s", error)
        code, report = EXIT_RESOURCES, {"error": "resource ceiling exceeded", "what": error.what,
                                        "ceiling": error.ceiling, "count": error.count}
    except CounterexampleFound as error:
        logger.error("%s", error)
        code, report = EXIT_PROPERTY_FAILED, {"counterexamples": [counterexample_to_json(error)]}
    except (ValueError, OSError, FsStrataError) as error:
        logger.error("%s", error)
        code, report = EXIT_INVALID_INPUT, {"error": str(error)}

    text = write_report(report, args.output)
    if args.output is None:
        sys.stdout.write(text)
    return code, report


def main(argv: Optional[List[str]] = None) -> int:
    return run_subcommand(argv)[0]
