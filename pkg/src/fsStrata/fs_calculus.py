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
    Dimension sequences of FS^op modules, the height bookkeeping of their constructions and rational generating
    functions.

    An FS^op module is represented by its dimension sequence n -> dim M[n] together with the tree of operations it
    was built from. The projective P_d has dimension sequence n -> #surjections [n] -> [d] and height d. Shifting
    preserves height, the binomial convolution adds heights and direct sums take the maximum.

    A module of height at most C has a generating function that is rational with denominator a product of powers of
    (1 - jt), j <= C; equivalently its dimensions eventually are a sum of polynomials times j^n.

    Usage
    -----

    .. code-block:: python

        >>> sequence = parse_height_expression("conv(shift(P3,2),P1)")
        >>> sequence.certificate.bound
        4
        >>> gf_projective(2).series(5)
        [0, 0, 2, 6, 14]
        >>> fit = fit_exponential_polynomial([surjection_count(n, 2) for n in range(12)], 2)
        >>> fit.polynomials, fit.tail_start
        ({1: (-2,), 2: (1,)}, 1)

    Methods
    -------
"""

from __future__ import annotations

import ast
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from fsStrata.common import FsStrataError, binomial, compositions, rational

logger = logging.getLogger(__name__)


class HorizonTooShort(FsStrataError, ValueError):
    """
    Raised if too few values are given to determine an exponential polynomial fit.
    """


class NoExponentialFit(FsStrataError, ValueError):
    """
    Raised if no exponential polynomial with bases 1..C fits the given values.
    """


def surjection_count(n: int, d: int) -> int:
    """
    The number of surjections [n] -> [d] by inclusion and exclusion.

    :param n: Size of the domain
    :type n: int
    :param d: Size of the codomain
    :type d: int
    :return: The number of surjections
    :rtype: int
    """
    if n < 0 or d < 0:
        raise ValueError("n and d have to be nonnegative")
    return sum((-1) ** j * binomial(d, j) * (d - j) ** n for j in range(d + 1))


class HeightRule(Enum):
    PROJECTIVE = "projective"
    SHIFT = "shift"
    CONVOLUTION = "convolution"
    SUM = "sum"
    CITED = "cited"
    SPECTRAL_SEQUENCE = "spectral sequence"


@dataclass(frozen=True)
class HeightStep:
    rule: HeightRule
    bound: int
    detail: str

    def render(self) -> str:
        return "{}: height <= {} ({})".format(self.rule.value, self.bound, self.detail)


@dataclass(frozen=True)
class HeightCertificate:
    """
    An upper bound on the height of a module together with the closure rules that produced it, in the order they
    were applied.
    """
    bound: int
    steps: Tuple[HeightStep, ...] = ()

    def render(self) -> str:
        return "\n".join(step.render() for step in self.steps)


def _merge_steps(certificates: Iterable[HeightCertificate]) -> Tuple[HeightStep, ...]:
    steps: List[HeightStep] = []
    for certificate in certificates:
        steps.extend(step for step in certificate.steps if step not in steps)
    return tuple(steps)


class DimSequence:
    """
    A dimension sequence n -> dim M[n], computed lazily and memoized, together with the operation that produced it.

    :param kind: One of 'projective', 'shift', 'convolve', 'sum', 'explicit'
    :type kind: str
    :param compute: Computes the value at n
    :type compute: Callable[[int], int]
    :param children: The operands
    :type children: Tuple[DimSequence, ...]
    :param parameter: The degree of a projective, the amount of a shift or the values of an explicit sequence
    :param certificate: Height certificate, if the construction yields one
    :type certificate: Optional[HeightCertificate]
    """

    def __init__(self, kind: str, compute: Callable[[int], int], children: Tuple[DimSequence, ...] = (),
                 parameter=None, certificate: Optional[HeightCertificate] = None):
        self.kind = kind
        self.children = children
        self.parameter = parameter
        self.certificate = certificate
        self._compute = compute
        self._cache: Dict[int, int] = {}

    def __getitem__(self, n: int) -> int:
        if n < 0:
            raise IndexError("Dimension sequences are indexed by n >= 0")
        if n not in self._cache:
            self._cache[n] = int(self._compute(n))
        return self._cache[n]

    def values(self, count: int) -> List[int]:
        return [self[n] for n in range(count)]

    @property
    def height(self) -> Optional[int]:
        return None if self.certificate is None else self.certificate.bound

    def render(self) -> str:
        """
        The construction as an expression accepted by :func:`parse_height_expression`, except for explicit
        sequences.
        """
        if self.kind == "projective":
            return "P{}".format(self.parameter)
        if self.kind == "shift":
            return "shift({},{})".format(self.children[0].render(), self.parameter)
        if self.kind in ("convolve", "sum"):
            name = "conv" if self.kind == "convolve" else "sum"
            return "{}({})".format(name, ",".join(child.render() for child in self.children))
        return "explicit{}".format(list(self.parameter[0]))

    def replay(self) -> DimSequence:
        """
        Rebuilds the sequence from its construction tree.
        """
        if self.kind == "projective":
            return dim_projective(self.parameter)
        if self.kind == "shift":
            return seq_shift(self.children[0].replay(), self.parameter)
        if self.kind == "convolve":
            return seq_convolve(*(child.replay() for child in self.children))
        if self.kind == "sum":
            return seq_sum(*(child.replay() for child in self.children))
        values, height, reason = self.parameter
        return seq_explicit(values, height, reason)

    def __repr__(self):
        return "DimSequence({})".format(self.render())


def dim_projective(d: int) -> DimSequence:
    """
    The dimension sequence of the projective P_d, of height d.
    """
    if d < 0:
        raise ValueError("d has to be nonnegative")
    certificate = HeightCertificate(d, (HeightStep(HeightRule.PROJECTIVE, d, "P{}".format(d)),))
    return DimSequence("projective", lambda n: surjection_count(n, d), parameter=d, certificate=certificate)


def seq_shift(sequence: DimSequence, k: int) -> DimSequence:
    """
    The shift X -> M[[k] + X], with values n -> M[n + k]. Shifting preserves the height.
    """
    if k < 0:
        raise ValueError("Shifts have to be nonnegative")
    certificate = None
    if sequence.certificate is not None:
        bound = sequence.certificate.bound
        certificate = HeightCertificate(bound, sequence.certificate.steps + (
            HeightStep(HeightRule.SHIFT, bound, "shift by {} of {}".format(k, sequence.render())),))
    return DimSequence("shift", lambda n: sequence[n + k], (sequence,), k, certificate)


def seq_convolve(*sequences: DimSequence) -> DimSequence:
    """
    The binomial convolution (M * N)[n] = sum over k of C(n,k) M[k] N[n-k], the dimension sequence of the tensor
    product of FS^op modules. Heights add up.
    """
    if len(sequences) < 2:
        raise ValueError("A convolution needs at least two operands")
    if len(sequences) > 2:
        return seq_convolve(seq_convolve(*sequences[:-1]), sequences[-1])
    first, second = sequences

    certificate = None
    if first.certificate is not None and second.certificate is not None:
        bound = first.certificate.bound + second.certificate.bound
        certificate = HeightCertificate(bound, _merge_steps((first.certificate, second.certificate)) + (
            HeightStep(HeightRule.CONVOLUTION, bound, "conv({},{})".format(first.render(), second.render())),))

    def _compute(n: int) -> int:
        return sum(binomial(n, k) * first[k] * second[n - k] for k in range(n + 1))

    return DimSequence("convolve", _compute, (first, second), None, certificate)


def seq_sum(*sequences: DimSequence) -> DimSequence:
    """
    The direct sum, whose height is the maximum of the heights.
    """
    if not sequences:
        raise ValueError("A sum needs at least one operand")
    certificate = None
    if all(s.certificate is not None for s in sequences):
        bound = max(s.certificate.bound for s in sequences)
        certificate = HeightCertificate(bound, _merge_steps(s.certificate for s in sequences) + (
            HeightStep(HeightRule.SUM, bound, "sum({})".format(",".join(s.render() for s in sequences))),))
    return DimSequence("sum", lambda n: sum(s[n] for s in sequences), tuple(sequences), None, certificate)


def seq_explicit(values: Sequence[int], height: Optional[int] = None, reason: str = "") -> DimSequence:
    """
    A sequence given by finitely many values. It carries a height certificate only if a height is cited.
    """
    values = tuple(int(v) for v in values)
    certificate = None
    if height is not None:
        certificate = HeightCertificate(height, (HeightStep(HeightRule.CITED, height, reason or "cited"),))

    def _compute(n: int) -> int:
        if n >= len(values):
            raise IndexError("The sequence is only known for n < {}".format(len(values)))
        return values[n]

    return DimSequence("explicit", _compute, (), (values, height, reason), certificate)


def spectral_sequence_bound(certificates: Iterable[HeightCertificate]) -> HeightCertificate:
    """
    The height of the abutment of a convergent spectral sequence is bounded by the maximal height on a page.
    """
    certificates = list(certificates)
    bound = max((c.bound for c in certificates), default=0)
    return HeightCertificate(bound, _merge_steps(certificates) + (
        HeightStep(HeightRule.SPECTRAL_SEQUENCE, bound, "max over {} terms".format(len(certificates))),))


def parse_height_expression(text: str) -> DimSequence:
    """
    Parses expressions such as "conv(shift(P3,2),P1)" built from projectives P<d>, shift(expr, k), conv(expr, ...)
    and sum(expr, ...).

    :param text: The expression
    :type text: str
    :return: The described sequence with its height certificate
    :rtype: DimSequence
    """
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as error:
        raise ValueError("Malformed expression '{}': {}".format(text, error.msg))

    def _evaluate(node: ast.AST) -> DimSequence:
        if isinstance(node, ast.Name) and node.id.startswith("P") and node.id[1:].isdigit():
            return dim_projective(int(node.id[1:]))
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
            name, args = node.func.id, node.args
            if name == "shift" and len(args) == 2 and isinstance(args[1], ast.Constant) \
                    and isinstance(args[1].value, int):
                return seq_shift(_evaluate(args[0]), args[1].value)
            if name == "conv" and len(args) >= 2:
                return seq_convolve(*(_evaluate(a) for a in args))
            if name == "sum" and len(args) >= 1:
                return seq_sum(*(_evaluate(a) for a in args))
        raise ValueError("Unsupported expression '{}'".format(ast.unparse(node) if hasattr(ast, "unparse")
                                                               else type(node).__name__))

    return _evaluate(tree.body)


_t = sympy.Symbol("t")


class RationalGF:
    """
    A rational generating function numerator(t) / prod over j of (1 - jt)^(e_j).

    :param numerator: Coefficients of the numerator, constant term first
    :type numerator: Sequence[Union[int, Fraction]]
    :param multiplicities: The exponent e_j per base j >= 1
    :type multiplicities: Mapping[int, int]
    """

    def __init__(self, numerator: Sequence[rational], multiplicities: Mapping[int, int]):
        coefficients = [Fraction(c) for c in numerator]
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        self.numerator: Tuple[Fraction, ...] = tuple(coefficients)
        if any(j < 1 or e < 0 for j, e in multiplicities.items()):
            raise ValueError("Bases have to be positive and exponents nonnegative")
        self.multiplicities: Dict[int, int] = {j: e for j, e in sorted(multiplicities.items()) if e > 0}

    def numerator_poly(self) -> sympy.Poly:
        return sympy.Poly(sum((sympy.Rational(c.numerator, c.denominator) * _t ** k
                               for k, c in enumerate(self.numerator)), sympy.Integer(0)), _t, domain=sympy.QQ)

    def denominator_poly(self) -> sympy.Poly:
        return sympy.Poly(sympy.prod([(1 - j * _t) ** e for j, e in self.multiplicities.items()]), _t,
                          domain=sympy.QQ)

    def denominator(self) -> Tuple[Fraction, ...]:
        """
        Coefficients of the expanded denominator, constant term first.
        """
        return tuple(Fraction(int(c.p), int(c.q)) for c in reversed(self.denominator_poly().all_coeffs()))

    @property
    def poles(self) -> List[int]:
        """
        The bases j; the poles sit at 1/j.
        """
        return sorted(self.multiplicities)

    def series(self, count: int) -> List[rational]:
        """
        The first coefficients of the power series expansion, computed by exact division.
        """
        denominator = self.denominator()
        coefficients: List[Fraction] = []
        for n in range(count):
            value = self.numerator[n] if n < len(self.numerator) else Fraction(0)
            value -= sum(denominator[k] * coefficients[n - k] for k in range(1, min(n, len(denominator) - 1) + 1))
            coefficients.append(value / denominator[0])
        return [int(c) if c.denominator == 1 else c for c in coefficients]

    def equals(self, other: RationalGF) -> bool:
        """
        Equality as rational functions, by cross multiplication.
        """
        return self.numerator_poly() * other.denominator_poly() == other.numerator_poly() * self.denominator_poly()

    def as_expr(self) -> sympy.Expr:
        return self.numerator_poly().as_expr() / self.denominator_poly().as_expr()

    def __eq__(self, other):
        return isinstance(other, RationalGF) and self.equals(other)

    def __hash__(self):
        return hash(sympy.cancel(self.as_expr()))

    def __repr__(self):
        return "RationalGF({})".format(self.as_expr())


def gf_projective(d: int) -> RationalGF:
    """
    The generating function d! t^d / prod over j = 1..d of (1 - jt) of the dimensions of P_d.
    """
    if d < 0:
        raise ValueError("d has to be nonnegative")
    return RationalGF([0] * d + [math.factorial(d)], {j: 1 for j in range(1, d + 1)})


def invariants_gf_projective(d: int) -> RationalGF:
    """
    The generating function t^d / (1 - t)^d of the dimensions of the S_n invariants of P_d[n], which count
    surjections [n] -> [d] up to permutations of [n].
    """
    if d < 1:
        raise ValueError("d has to be positive")
    return RationalGF([0] * d + [1], {1: d})


def invariant_orbit_count(n: int, d: int) -> int:
    """
    Counts the S_n orbits of surjections [n] -> [d]. An orbit is determined by its vector of fiber sizes.
    """
    return sum(1 for _ in compositions(n, d, [1] * d))


@dataclass(frozen=True)
class ExponentialPolynomialFit:
    """
    values[n] = sum over j of p_j(n) j^n for all n >= tail_start; the values before the tail start are kept in
    `head`. Polynomials are coefficient tuples in n, constant term first; only nonzero ones are listed.
    """
    polynomials: Dict[int, Tuple[rational, ...]]
    tail_start: int
    head: Tuple[int, ...]
    bases: int = 0
    residuals: Tuple[int, ...] = field(default=(), compare=False)

    @property
    def multiplicities(self) -> Dict[int, int]:
        """
        The fitted exponents e_j = deg p_j + 1.
        """
        return {j: len(p) for j, p in self.polynomials.items()}

    def value(self, n: int) -> rational:
        if n < self.tail_start:
            return self.head[n]
        total = sum(sum(Fraction(c) * n ** k for k, c in enumerate(p)) * j ** n
                    for j, p in self.polynomials.items())
        return int(total) if total.denominator == 1 else total

    def to_rational_gf(self) -> RationalGF:
        """
        The generating function of the fitted sequence.
        """
        skeleton = RationalGF([1], self.multiplicities)
        denominator = skeleton.denominator()
        length = self.tail_start + len(denominator) - 1
        values = [Fraction(self.value(n)) for n in range(length)]
        numerator = [sum(denominator[k] * values[n - k] for k in range(min(n, len(denominator) - 1) + 1))
                     for n in range(length)]
        return RationalGF(numerator, self.multiplicities)


def _solve_exact(rows: List[List[Fraction]], rhs: List[Fraction]) -> Optional[List[Fraction]]:
    """
    Solves the linear system exactly. Returns None if it is inconsistent and raises HorizonTooShort if the
    solution is not unique.
    """
    columns = len(rows[0])
    augmented = DomainMatrix([[QQ(c.numerator, c.denominator) for c in row] + [QQ(b.numerator, b.denominator)]
                              for row, b in zip(rows, rhs)], (len(rows), columns + 1), QQ)
    reduced, pivots = augmented.rref()
    if columns in pivots:
        return None
    if len(pivots) < columns:
        raise HorizonTooShort("The linear system is underdetermined")
    entries = reduced.to_Matrix()
    solution = [Fraction(0)] * columns
    for row, column in enumerate(pivots):
        value = entries[row, columns]
        solution[column] = Fraction(int(value.p), int(value.q))
    return solution


def fit_exponential_polynomial(values: Sequence[int], C: int) -> ExponentialPolynomialFit:
    """
    Finds polynomials p_1, ..., p_C of minimal degree such that values[n] = sum of p_j(n) j^n for all n from a
    tail start on, by exact linear algebra. All polynomials share a degree bound D = 0, 1, ..., C; for each D, the
    smallest tail start is taken for which the system still has at least twice as many equations as unknowns.

    :param values: The values for n = 0, 1, ...
    :type values: Sequence[int]
    :param C: The largest base
    :type C: int
    :raises HorizonTooShort: If fewer than 2C(C+1) values are given
    :raises NoExponentialFit: If no fit exists within the horizon
    :return: The fit
    :rtype: ExponentialPolynomialFit
    """
    if C < 1:
        raise ValueError("C has to be positive")
    horizon = len(values)
    if horizon < 2 * C * (C + 1):
        raise HorizonTooShort("{} values given, at least {} are needed for C = {}".format(horizon,
                                                                                          2 * C * (C + 1), C))
    for degree in range(C + 1):
        unknowns = C * (degree + 1)
        tail_start = 0
        while horizon - tail_start >= 2 * unknowns:
            ns = range(tail_start, horizon)
            rows = [[Fraction(n ** k * j ** n) for j in range(1, C + 1) for k in range(degree + 1)] for n in ns]
            solution = _solve_exact(rows, [Fraction(values[n]) for n in ns])
            if solution is not None:
                polynomials = {}
                for index, j in enumerate(range(1, C + 1)):
                    coefficients = list(solution[index * (degree + 1):(index + 1) * (degree + 1)])
                    while coefficients and coefficients[-1] == 0:
                        coefficients.pop()
                    if coefficients:
                        polynomials[j] = tuple(int(c) if c.denominator == 1 else c for c in coefficients)
                logger.info("Fitted %d values with degree bound %d and tail start %d", horizon, degree, tail_start)
                return ExponentialPolynomialFit(polynomials, tail_start, tuple(values[:tail_start]), C)
            tail_start += 1
    raise NoExponentialFit("No exponential polynomial with bases 1..{} fits the {} values".format(C, horizon))
