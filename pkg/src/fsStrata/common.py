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
    Collects some basic types used in other modules as well as useful methods: the certificate and curve class
    aliases, the exceptions raised by the package, the resource guard used by all enumerations and a few helpers for
    exact integer arithmetic.
"""

from __future__ import annotations

import hashlib
import math
from fractions import Fraction
from typing import Any, Dict, Iterator, Optional, Sequence, Tuple, Union

from scipy.special import comb

Certificate = Tuple[Any, ...]
CurveClass = Tuple[int, ...]
rational = Union[int, Fraction]

DEFAULT_CEILING = 10 ** 6


class FsStrataError(Exception):
    """
    Base class of all errors raised by fsStrata.
    """


class ResourceLimitExceeded(FsStrataError, RuntimeError):
    """
    Raised as soon as an enumeration produced more candidates than the configured ceiling allows.
    Enumerations never truncate silently.
    """

    def __init__(self, what: str, ceiling: int, count: int):
        self.what = what
        self.ceiling = ceiling
        self.count = count
        super().__init__("{} exceeded the resource ceiling of {} candidates ({} generated)".format(what, ceiling,
                                                                                                   count))


class CounterexampleFound(FsStrataError, AssertionError):
    """
    Raised whenever a checked property fails. The payload is a JSON-serializable description of the offending
    object, so callers can report it instead of crashing.
    """

    def __init__(self, prop: str, payload: Dict[str, Any]):
        self.prop = prop
        self.payload = payload
        super().__init__("Counterexample to '{}': {}".format(prop, payload))


class ResourceGuard:
    """
    Counts generated candidates and aborts with :class:`ResourceLimitExceeded` above the ceiling.

    :param what: Name of the enumeration, used in the diagnostic
    :type what: str
    :param ceiling: Maximal number of candidates
    :type ceiling: int
    """

    def __init__(self, what: str, ceiling: Optional[int] = None):
        self.what = what
        self.ceiling = DEFAULT_CEILING if ceiling is None else ceiling
        if self.ceiling <= 0:
            raise ValueError("The resource ceiling has to be positive")
        self.count = 0

    def tick(self, amount: int = 1):
        """
        Registers newly generated candidates.

        :param amount: Number of new candidates
        :type amount: int
        """
        self.count += amount
        if self.count > self.ceiling:
            raise ResourceLimitExceeded(self.what, self.ceiling, self.count)


def binomial(n: int, k: int) -> int:
    """
    Exact binomial coefficient, zero outside of 0 <= k <= n.

    :param n: Upper index
    :type n: int
    :param k: Lower index
    :type k: int
    :return: The binomial coefficient
    :rtype: int
    """
    if k < 0 or n < 0 or k > n:
        return 0
    return int(comb(n, k, exact=True))


def multinomial(parts: Sequence[int]) -> int:
    """
    Exact multinomial coefficient (sum(parts); parts).

    :param parts: The block sizes
    :type parts: Sequence[int]
    :return: Number of ways to distribute sum(parts) labelled elements into blocks of the given sizes
    :rtype: int
    """
    result = 1
    total = 0
    for part in parts:
        total += part
        result *= binomial(total, part)
    return result


def ceil_fraction(value: rational) -> int:
    """
    Rounds an exact rational number up to the next integer.

    :param value: The number
    :type value: Union[int, Fraction]
    :return: The smallest integer not below value
    :rtype: int
    """
    return math.ceil(Fraction(value))


def compositions(total: int, parts: int, minimums: Optional[Sequence[int]] = None) -> Iterator[Tuple[int, ...]]:
    """
    Iterates over all ordered tuples of nonnegative integers of the given length summing up to total, in
    lexicographic order. If minimums are given, the i-th entry is at least minimums[i].

    :param total: The sum of all entries
    :type total: int
    :param parts: The length of the tuples
    :type parts: int
    :param minimums: Optional lower bounds per entry
    :type minimums: Optional[Sequence[int]]
    :return: Iterator over the compositions
    :rtype: Iterator[Tuple[int, ...]]
    """
    if minimums is None:
        minimums = [0] * parts
    if len(minimums) != parts:
        raise ValueError("Expected {} lower bounds, got {}".format(parts, len(minimums)))
    minimums = [max(0, m) for m in minimums]

    def _recurse(index: int, remaining: int, prefix: Tuple[int, ...]):
        if index == parts:
            if remaining == 0:
                yield prefix
            return
        still_needed = sum(minimums[index + 1:])
        for value in range(minimums[index], remaining - still_needed + 1):
            yield from _recurse(index + 1, remaining - value, prefix + (value,))

    if sum(minimums) > total:
        return
    yield from _recurse(0, total, ())


def certificate_digest(certificate: Certificate) -> str:
    """
    Obtains a short, stable textual identifier for a canonical certificate.

    :param certificate: A certificate as returned by :func:`fsStrata.graph_core.canonical_form`
    :type certificate: Certificate
    :return: SHA-256 hex digest of the certificate
    :rtype: str
    """
    return hashlib.sha256(repr(certificate).encode("utf-8")).hexdigest()
