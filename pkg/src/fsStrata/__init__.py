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
    __init__.py
"""

from fsStrata.common import CounterexampleFound, FsStrataError, ResourceLimitExceeded
from fsStrata.graph_core import Contraction, HalfEdgeGraph, automorphism_group_order, automorphisms, betti_1, \
    canonical_form, connected_multigraphs, contract_edges, excess_trees
from fsStrata.decorated_graphs import ContractionPoset, CurveClassMonoid, DecoratedGraph, build_q_poset, \
    build_stab_poset, enumerate_q, enumerate_stab, enumerate_stab_naive, invariant_I, is_saturated, is_stable, \
    pullback, saturate
from fsStrata.halfedge_analysis import FreeEdgeSemantics, HeightVariant, ReducedGraph, bound_halfedge_bound, \
    check_plain_bound, check_tree_bound, classify_half_edges, count_free, enumerate_reduced, height_constant, \
    orbit_decompose, reduce_graph, stratum_factorization
from fsStrata.independence_homology import homology_ranks, i_invariant, independence_complex, tutte_01, \
    tutte_polynomial
from fsStrata.fs_calculus import DimSequence, HeightCertificate, HorizonTooShort, NoExponentialFit, RationalGF, \
    dim_projective, fit_exponential_polynomial, gf_projective, invariants_gf_projective, parse_height_expression, \
    seq_convolve, seq_shift, seq_sum, surjection_count
from fsStrata.genus0_fs import StableTreeClass, e1_upper_bound, enumerate_ge, find_reduction, fn_dimension, \
    poincare_m0n
from fsStrata.config import SweepConfig

__version__ = '0.1.0'
