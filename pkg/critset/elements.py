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


"""Square classes of totally positive integers, squarefreeness and indecomposables"""

import logging
from dataclasses import dataclass
from functools import cmp_to_key
from math import isqrt

from sympy import divisors

from .ring import (
    CritsetException,
    FieldException,
    is_totally_positive,
    totally_leq,
    conjugate,
    divides,
    sign_at,
    ceil_at,
    compare_at,
    canonical_key,
    box_elements,
    omega_convergents,
)

__all__ = (
    "SquareClass",
    "IndecSequence",
    "class_of",
    "enumerate_classes",
    "elements_dominated_by",
    "elements_of_norm",
    "is_squarefree",
    "is_indecomposable",
    "decompositions",
    "indecomposable_classes",
    "indecomposable_classes_fast",
    "indecomposable_norm_bound",
    "indec_sequence",
    "squarefree_indecomposable_classes",
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SquareClass:
    """The class rep * U_K^2, stored through its canonical representative."""

    rep: object
    norm: int

    @property
    def field(self):
        return self.rep.ctx

    @property
    def sort_key(self):
        return canonical_key(self.rep)

    @property
    def is_rational(self):
        return self.rep.b == 0

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __str__(self):
        return str(self.rep)


@dataclass(frozen=True)
class IndecSequence:
    """Indecomposables ordered by the dominant embedding, beta_0 = 1.

    betas[j] is beta_{start + j}; beta_{i + t} = eps0^2 * beta_i. When the
    fundamental unit is totally positive, unit_totally_positive is set and t
    still counts the period under eps0^2.
    """

    field: object
    start: int
    betas: tuple
    t: int
    unit_totally_positive: bool

    def beta(self, i):
        if not self.start <= i < self.start + len(self.betas):
            raise CritsetException("Index outside the computed window", i)
        return self.betas[i - self.start]


def _is_reduced(x):
    """sigma_0/sigma_1 lies in [1, eps0^4): b(x) >= 0 and b(x * eps0^-2) < 0."""
    return x.b >= 0 and (x * x.ctx.unit_square_inverse).b < 0


def class_of(x):
    """Canonical square class of a totally positive element

    Raises:
        CritsetException: x is not totally positive
    """
    if not is_totally_positive(x):
        raise CritsetException("Element is not totally positive", x)
    ctx = x.ctx
    if ctx.degree == 1:
        return SquareClass(x, x.a)
    up, down = ctx.unit_square, ctx.unit_square_inverse
    while x.b < 0:
        x = x * up
    while (x * down).b >= 0:
        x = x * down
    return SquareClass(x, x.norm)


def enumerate_classes(field, bound, predicate=None):
    """All square classes of norm at most bound, in canonical order

    Args:
        field: FieldCtx
        bound: positive integer norm bound
        predicate: optional callable on SquareClass; only classes for which it
                   returns a true value are kept

    Returns:
        List of SquareClass sorted by (norm, trace, a, b)
    """
    if bound < 1:
        return []
    if field.degree == 1:
        classes = [SquareClass(field.element(n), n) for n in range(1, bound + 1)]
    else:
        root = isqrt(bound) + 1
        upper = (ceil_at(field.unit_square, 0) * root, root)
        classes = []
        for x in box_elements(field, (0, 0), upper):
            if x.b < 0 or not is_totally_positive(x):
                continue
            nrm = x.norm
            if nrm <= bound and _is_reduced(x):
                classes.append(SquareClass(x, nrm))
        classes.sort()
    if predicate is not None:
        classes = [c for c in classes if predicate(c)]
    logger.debug("%d classes of norm <= %d in %s", len(classes), bound, field)
    return classes


def elements_dominated_by(x):
    """All totally positive alpha with alpha ⪯ x, in canonical order."""
    if not is_totally_positive(x):
        raise CritsetException("Element is not totally positive", x)
    ctx = x.ctx
    upper = tuple(ceil_at(x, i) for i in range(ctx.degree))
    found = [
        y
        for y in box_elements(ctx, (0,) * ctx.degree, upper)
        if is_totally_positive(y) and totally_leq(y, x)
    ]
    found.sort(key=canonical_key)
    return found


def elements_of_norm(ctx, n):
    """Elements w with |N(w)| = n, one associate per unit orbit at least."""
    if ctx.degree == 1:
        return [ctx.element(n)]
    root = isqrt(n) + 1
    upper = (ceil_at(ctx.fund_unit, 0) * root, root)
    return [w for w in box_elements(ctx, (0, -root), upper) if abs(w.norm) == n]


def is_squarefree(x):
    """Element squarefreeness: no non-unit w with w^2 | x

    Returns:
        (True, None), or (False, w) where w is a non-unit whose square divides
        x, taken at the least possible |N(w)|
    """
    if not is_totally_positive(x):
        raise CritsetException("Element is not totally positive", x)
    nrm = x.norm
    for n in divisors(nrm):
        if n == 1 or nrm % (n * n):
            continue
        for w in sorted(elements_of_norm(x.ctx, n), key=canonical_key):
            if divides(w * w, x)[0]:
                return False, w
    return True, None


def decompositions(x):
    """Every (beta, x - beta) with beta, x - beta totally positive and
    beta no larger than x - beta in canonical order."""
    pairs = []
    for beta in elements_dominated_by(x):
        if beta == x:
            continue
        rest = x - beta
        if canonical_key(beta) <= canonical_key(rest):
            pairs.append((beta, rest))
    return pairs


def is_indecomposable(x):
    """Indecomposability of a totally positive element

    Returns:
        (True, None), or (False, (beta, x - beta)) with the canonically least
        summand beta
    """
    for beta in elements_dominated_by(x):
        if beta != x:
            return False, (beta, x - beta)
    return True, None


def indecomposable_norm_bound(field):
    """Every indecomposable has norm at most disc/4 (norm 1 over Q)."""
    return max(1, field.discriminant // 4)


def indecomposable_classes(field, bound):
    """Classes of indecomposables of norm <= bound, by the definitional scan."""
    bound = min(bound, indecomposable_norm_bound(field))
    return enumerate_classes(field, bound, lambda c: is_indecomposable(c.rep)[0])


def _period_semiconvergents(field):
    """alpha_{i,r} = alpha_i + r*alpha_{i+1} for odd i from -1 up to eps0^2."""
    target = field.unit_square
    alphas = {-1: field.one}
    quotients = {}
    semis = []
    for i, u, alpha in omega_convergents(field):
        alphas[i] = alpha
        quotients[i] = u
        # alpha_{i-2} + r * alpha_{i-1}, r <= u_i, for odd i - 2
        if i >= 1 and i % 2 == 1:
            base, step = alphas[i - 2], alphas[i - 1]
            for r in range(quotients[i] + 1):
                semis.append(base + step * r)
            if alpha == target:
                return semis
    return semis  # pragma: no cover


def indecomposable_classes_fast(field, bound):
    """Classes of indecomposables of norm <= bound from the continued fraction
    of omega (semiconvergents, their conjugates and totally positive unit
    multiples). Cross-checked against indecomposable_classes in the tests."""
    if field.degree == 1:
        return [SquareClass(field.one, 1)] if bound >= 1 else []
    multipliers = [field.one]
    if field.fund_unit_norm == 1:
        multipliers.append(field.fund_unit)
    found = {}
    for beta in _period_semiconvergents(field):
        for elem in (beta, conjugate(beta)):
            for unit in multipliers:
                cls = class_of(elem * unit)
                if cls.norm <= bound:
                    found[cls.rep] = cls
    return sorted(found.values())


def _sigma0_cmp(x, y):
    return compare_at(x, y, 0)


def indec_sequence(field, window=None):
    """The bi-infinite indecomposable sequence restricted to a window

    Args:
        field: real quadratic FieldCtx
        window: (lo, hi) inclusive index range, default one period from 0

    Returns:
        IndecSequence

    Raises:
        FieldException: field is Q
    """
    if field.degree == 1:
        raise FieldException("The indecomposable sequence of Q degenerates to {1}")
    up, down = field.unit_square, field.unit_square_inverse
    one = field.one
    period = []
    for cls in indecomposable_classes(field, indecomposable_norm_bound(field)):
        x = cls.rep
        while sign_at(x - one, 0) < 0:
            x = x * up
        while compare_at(x, up, 0) >= 0:
            x = x * down
        period.append(x)
    period.sort(key=cmp_to_key(_sigma0_cmp))
    t = len(period)
    if window is None:
        window = (0, t - 1)
    lo, hi = window
    if hi < lo:
        raise CritsetException("Empty window", window)
    betas = []
    for i in range(lo, hi + 1):
        k, j = divmod(i, t)
        betas.append(period[j] * (up ** k if k >= 0 else down ** (-k)))
    if field.fund_unit_norm == 1:
        logger.info("%s has a totally positive fundamental unit; t counts eps0^2 translation", field)
    return IndecSequence(field, lo, tuple(betas), t, field.fund_unit_norm == 1)


def squarefree_indecomposable_classes(field, bound):
    """Classes of norm <= bound whose representatives are squarefree and indecomposable."""
    return [c for c in indecomposable_classes(field, bound) if is_squarefree(c.rep)[0]]
