# Copyright (c) 2026 The critset developers. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Exact short-vector enumeration for integral positive definite forms over Z

Forms are given in M-encoding: M[i][i] = Q(e_i), M[i][j] = M[j][i] = 2B(e_i, e_j),
so that Q(x) = sum M[i][i] x_i^2 + sum_{i<j} M[i][j] x_i x_j.
"""

import logging
from fractions import Fraction
from math import isqrt, floor, ceil

import numpy as np

from .ring import CritsetException

__all__ = ("gram_value", "ldl_rational", "short_vectors", "value_table", "bareiss_minors", "det_int")

logger = logging.getLogger(__name__)

# numpy int64 is used for the innermost coordinate while values stay below this
__INT64_SAFE = 1 << 62


def gram_value(M, x):
    """Q(x) for an integral M-encoded form."""
    n = len(x)
    total = 0
    for i in range(n):
        xi = x[i]
        if not xi:
            continue
        row = M[i]
        total += row[i] * xi * xi
        for j in range(i + 1, n):
            total += row[j] * xi * x[j]
    return total


def ldl_rational(M):
    """Fincke-Pohst decomposition Q(x) = sum q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2

    Returns:
        Upper triangular list of lists of Fractions

    Raises:
        CritsetException: the form is not positive definite (detail is the
                          index of the first non-positive pivot)
    """
    n = len(M)
    q = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            q[i][j] = Fraction(M[i][j]) if i == j else Fraction(M[i][j], 2)
    for i in range(n):
        for k in range(i):
            q[i][i] -= q[k][k] * q[k][i] * q[k][i]
        if q[i][i] <= 0:
            raise CritsetException("Form is not positive definite", i)
        for j in range(i + 1, n):
            for k in range(i):
                q[i][j] -= q[k][k] * q[k][i] * q[k][j]
        for j in range(i + 1, n):
            q[i][j] /= q[i][i]
    return q


def _radius(budget, pivot):
    """An integer R >= sqrt(budget / pivot)."""
    return isqrt(floor(budget / pivot)) + 1


def short_vectors(M, bound, value=None, half=True):
    """Yields every nonzero integer vector x with Q(x) <= bound

    Args:
        M: integral M-encoded positive definite form
        bound: nonnegative integer
        value: when given, only vectors with Q(x) == value are produced
        half: produce one vector of each pair {x, -x} (last nonzero entry > 0)

    Coordinate ranges come from the rational decomposition with one unit of
    slack on each side; every produced vector is checked with integers.
    """
    n = len(M)
    if n == 0 or bound < 1:
        return
    if value is not None:
        bound = min(bound, value)
    q = ldl_rational(M)

    def leaf(x, lo, hi):
        xs, vals = _innermost_values(M, x, lo, hi)
        mask = np.asarray(vals <= bound if value is None else vals == value, dtype=bool)
        tail_zero = not any(x[1:])
        for x0 in xs[mask]:
            x0 = int(x0)
            if tail_zero and x0 == 0:
                continue
            out = list(x)
            out[0] = x0
            yield tuple(out)

    yield from _descend(q, n - 1, Fraction(bound), [0] * n, leaf, half, True)


def value_table(M, bound):
    """Boolean numpy array t of length bound + 1 with t[v] set iff Q represents v.

    Only the values are collected, so the innermost coordinate never
    materialises vectors.
    """
    table = np.zeros(bound + 1, dtype=bool)
    table[0] = True
    n = len(M)
    if n == 0 or bound < 1:
        return table
    q = ldl_rational(M)

    def leaf(x, lo, hi):
        _, vals = _innermost_values(M, x, lo, hi)
        vals = vals[np.asarray((vals >= 0) & (vals <= bound), dtype=bool)]
        table[vals.astype(np.int64)] = True
        return ()

    for _ in _descend(q, n - 1, Fraction(bound), [0] * n, leaf, True, True):
        pass  # pragma: no cover
    return table


def _descend(q, i, budget, x, leaf, half, tail_zero):
    center = Fraction(0)
    for j in range(i + 1, len(x)):
        center -= q[i][j] * x[j]
    radius = _radius(budget, q[i][i])
    lo, hi = floor(center) - radius, ceil(center) + radius
    if half and tail_zero:
        lo = max(lo, 0)
    if i == 0:
        if lo <= hi:
            yield from leaf(x, lo, hi)
        return
    for xi in range(lo, hi + 1):
        used = q[i][i] * (xi - center) * (xi - center)
        if used > budget:
            continue
        x[i] = xi
        yield from _descend(q, i - 1, budget - used, x, leaf, half, tail_zero and xi == 0)
    x[i] = 0


def _innermost_values(M, x, lo, hi):
    """(xs, Q values) for x_0 over [lo, hi]: Q = M00 x0^2 + L x0 + C exactly."""
    rest = list(x)
    rest[0] = 0
    linear = sum(M[0][j] * x[j] for j in range(1, len(x)))
    const = gram_value(M, rest)
    span = max(abs(lo), abs(hi))
    peak = abs(M[0][0]) * (span * span + 1) + abs(linear) * (span + 1) + abs(const)
    dtype = np.int64 if peak < __INT64_SAFE else object
    xs = np.arange(lo, hi + 1, dtype=np.int64).astype(dtype)
    return xs, M[0][0] * xs * xs + linear * xs + const


def bareiss_minors(matrix, exact_div):
    """Leading principal minors by fraction-free elimination without pivoting

    Args:
        matrix: square matrix over an exact ring
        exact_div: callable (a, b) -> a / b, exact when b divides a

    Returns:
        List of minors of sizes 1, 2, ...; stops after the first zero minor
    """
    a = [list(row) for row in matrix]
    n = len(a)
    minors = []
    prev = 1
    for k in range(n):
        pivot = a[k][k]
        minors.append(pivot)
        if not pivot:
            break
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = exact_div(a[i][j] * pivot - a[i][k] * a[k][j], prev)
        prev = pivot
    return minors


def det_int(matrix):
    """Exact determinant of an integer matrix (Bareiss with row swaps)."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
