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


"""Totally positive definite quadratic forms over O_K and their represented values

Two representations are kept apart on purpose: value_sweep collects every
represented value inside a norm box in one pass, represents() answers a single
target by direct search. Both are exact.

Example usage:

K = make_field(5)
form = diag_form(K, [1, 1, 3, 3])
represents(form, K.element(3, 1))          # (False, None): (7+sqrt5)/2
non_represented_up_to(form, None, 20)      # classes of norm <= 20 it misses
"""

import logging
from dataclasses import dataclass, replace
from functools import lru_cache
from math import isqrt

import numpy as np

from .markers import FORM_DIAG, FORM_GRAM, X_DIAG, X_CL, X_NC
from .ring import (
    AlgInt,
    CritsetException,
    adjugate,
    box_elements,
    box_rows,
    canonical_key,
    ceil_at,
    conjugate,
    divides,
    is_totally_positive,
    sign_at,
    totally_leq,
)
from .elements import enumerate_classes
from .shortvec import bareiss_minors, short_vectors, value_table

__all__ = (
    "FormException",
    "QForm",
    "RepresentedSet",
    "diag_form",
    "gram_form",
    "zero_form",
    "validate",
    "gram_matrix",
    "evaluate",
    "trace_form",
    "represents",
    "value_sweep",
    "non_represented_up_to",
    "is_universal_up_to",
    "transform",
    "orthogonal_sum",
    "scale_form",
    "conjugate_form",
    "lift_form",
    "is_x_form",
    "class_list",
)

logger = logging.getLogger(__name__)


class FormException(CritsetException):
    """Raised for malformed, asymmetric or indefinite forms and field mismatches."""


@dataclass(frozen=True)
class QForm:
    """A quadratic form over O_K.

    For kind diag, data is the tuple of coefficients. For kind gram, data is
    the symmetric matrix M with M[i][i] = Q(e_i) and M[i][j] = 2B(e_i, e_j).
    Only forms returned by validate() (and the constructors, which call it)
    are accepted by the representation routines.
    """

    field: object
    kind: str
    data: tuple
    classical: bool = True
    validated: bool = False

    @property
    def rank(self):
        return len(self.data)

    @property
    def coeffs(self):
        if self.kind != FORM_DIAG:
            raise FormException("Gram form has no coefficient list")
        return self.data

    def __str__(self):
        if self.kind == FORM_DIAG:
            return "<%s>" % ",".join(str(c) for c in self.data)
        return "gram[%s]" % ";".join(",".join(str(e) for e in row) for row in self.data)


def _element(field, value):
    if isinstance(value, AlgInt):
        if value.ctx != field:
            raise FormException("Entry lies in another field", str(value))
        return value
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormException("Entry is not an integer of the field", repr(value))
    return field.element(value)


def diag_form(field, coeffs):
    """Validated diagonal form <coeffs...>; ints are read as rational integers."""
    return validate(QForm(field, FORM_DIAG, tuple(_element(field, c) for c in coeffs)))


def gram_form(field, M):
    """Validated form from a full symmetric M-encoded matrix."""
    return validate(QForm(field, FORM_GRAM, tuple(tuple(_element(field, e) for e in row) for row in M)))


def zero_form(field):
    """The rank-0 lattice {0}."""
    return QForm(field, FORM_DIAG, (), True, True)


def _exact_div(x, y):
    if isinstance(y, int):
        y = x.ctx.element(y)
    ok, quotient = divides(y, x)
    if not ok:  # pragma: no cover
        raise FormException("Inexact division in elimination", "%s / %s" % (x, y))
    return quotient


def validate(form):
    """Checks integrality, symmetry and total positive definiteness

    Returns:
        A copy of form with validated set and classical computed

    Raises:
        FormException: naming the failing entry, or the embedding and the
                       leading minor of the doubled Gram matrix that fails
    """
    field = form.field
    if form.kind == FORM_DIAG:
        coeffs = tuple(_element(field, c) for c in form.data)
        for idx, c in enumerate(coeffs):
            for i in range(field.degree):
                if sign_at(c, i) <= 0:
                    raise FormException(
                        "Coefficient is not totally positive",
                        "coefficient %d = %s at embedding %d" % (idx, c, i),
                    )
        return replace(form, data=coeffs, classical=True, validated=True)
    if form.kind != FORM_GRAM:
        raise FormException("Unknown form kind", form.kind)
    n = len(form.data)
    M = tuple(tuple(_element(field, e) for e in row) for row in form.data)
    if any(len(row) != n for row in M):
        raise FormException("Gram matrix is not square", n)
    for i in range(n):
        for j in range(i + 1, n):
            if M[i][j] != M[j][i]:
                raise FormException("Gram matrix is not symmetric", "entry (%d, %d)" % (i, j))
    doubled = [[2 * M[i][j] if i == j else M[i][j] for j in range(n)] for i in range(n)]
    minors = bareiss_minors(doubled, _exact_div)
    for k, minor in enumerate(minors):
        for i in range(field.degree):
            if sign_at(minor, i) <= 0:
                raise FormException(
                    "Form is not totally positive definite",
                    "leading minor %d = %s at embedding %d" % (k + 1, minor, i),
                )
    classical = all(
        M[i][j].a % 2 == 0 and M[i][j].b % 2 == 0 for i in range(n) for j in range(i + 1, n)
    )
    return replace(form, data=M, classical=classical, validated=True)


def _require_valid(form):
    if not form.validated:
        raise FormException("Form has not been validated", str(form))


def gram_matrix(form):
    """M-encoding of any form (diagonal forms give a diagonal matrix)."""
    if form.kind == FORM_GRAM:
        return form.data
    zero = form.field.zero
    n = form.rank
    return tuple(tuple(form.data[i] if i == j else zero for j in range(n)) for i in range(n))


def evaluate(form, vector):
    """Q(vector), exact."""
    field = form.field
    if len(vector) != form.rank:
        raise FormException("Vector length does not match rank", len(vector))
    x = [_element(field, v) for v in vector]
    total = field.zero
    if form.kind == FORM_DIAG:
        for c, xi in zip(form.data, x):
            total = total + c * xi * xi
        return total
    M = form.data
    for i in range(form.rank):
        total = total + M[i][i] * x[i] * x[i]
        for j in range(i + 1, form.rank):
            total = total + M[i][j] * x[i] * x[j]
    return total


def _basis(field):
    return [field.one] if field.degree == 1 else [field.one, field.omega]


def trace_form(form):
    """The integral Z-form y -> Tr Q(x) in rank * degree variables

    Variable (i, k) is the coefficient of the k-th basis element {1, w} in x_i.
    Positive definite whenever form is totally positive definite.
    """
    basis = _basis(form.field)
    M = gram_matrix(form)
    index = [(i, c) for i in range(form.rank) for c in basis]
    size = len(index)
    T = [[0] * size for _ in range(size)]
    for k, (i, ck) in enumerate(index):
        for l, (j, cl) in enumerate(index):
            if k == l:
                T[k][l] = (ck * ck * M[i][i]).trace
            elif i == j:
                T[k][l] = (ck * cl * M[i][i] * 2).trace
            else:
                T[k][l] = (ck * cl * M[i][j]).trace
    return T


def _vector_from_trace(form, y):
    basis = _basis(form.field)
    d = len(basis)
    field = form.field
    return tuple(
        sum((basis[k] * y[i * d + k] for k in range(d)), field.zero) for i in range(form.rank)
    )


def _square_candidates(coeff, limit):
    """x up to sign with coeff * x^2 ⪯ limit (limit is an element or a tuple
    of integer bounds per embedding)."""
    field = coeff.ctx
    adj = adjugate(coeff)
    nrm = coeff.norm
    radii = []
    for i in range(field.degree):
        scaled = adj * (limit[i] if isinstance(limit, tuple) else limit)
        radii.append(isqrt(max(ceil_at(scaled, i), 0) // nrm + 1) + 1)
    lower = tuple(-r for r in radii)
    for x in box_elements(field, lower, tuple(radii)):
        if x.b < 0 or (x.b == 0 and x.a < 0):
            continue
        yield x


def _diag_search(coeffs, k, remainder, failed):
    if k == len(coeffs):
        return [] if not remainder else None
    key = (k, remainder.a, remainder.b)
    if key in failed:
        return None
    a = coeffs[k]
    for x in sorted(_square_candidates(a, remainder), key=canonical_key):
        part = a * x * x
        if not totally_leq(part, remainder):
            continue
        tail = _diag_search(coeffs, k + 1, remainder - part, failed)
        if tail is not None:
            return [x] + tail
    failed.add(key)
    return None


def represents(form, target):
    """Decides whether the form represents target, by direct search

    Args:
        form: validated QForm
        target: AlgInt (or int) of the form's field

    Returns:
        (True, witness vector) or (False, None); targets that are neither zero
        nor totally positive are never represented

    Raises:
        FormException: form not validated
    """
    _require_valid(form)
    field = form.field
    target = _element(field, target)
    if not target:
        return True, tuple(field.zero for _ in range(form.rank))
    if not is_totally_positive(target) or form.rank == 0:
        return False, None
    if form.kind == FORM_DIAG:
        found = _diag_search(form.data, 0, target, set())
        if found is None:
            return False, None
        return True, tuple(found)
    tr = target.trace
    for y in short_vectors(trace_form(form), tr, value=tr):
        x = _vector_from_trace(form, y)
        if evaluate(form, x) == target:
            return True, x
    return False, None


class _ValueBox:
    """{v : 0 <= sigma_i(v) <= upper[i]} as exact a-ranges per b."""

    def __init__(self, field, upper):
        self.field = field
        self.upper = upper
        self.rows = {b: (lo, hi) for b, lo, hi in box_rows(field, (0,) * field.degree, upper)}

    def __contains__(self, key):
        row = self.rows.get(key[1])
        return row is not None and row[0] <= key[0] <= row[1]


def _sweep_box(field, bound):
    if field.degree == 1:
        return _ValueBox(field, (bound,))
    root = isqrt(bound) + 1
    return _ValueBox(field, (ceil_at(field.unit_square, 0) * root, root))


class RepresentedSet:
    """Every value of a form inside the sweep box of a norm bound.

    The box contains every canonical class representative of norm <= bound
    and is closed under going down in the totally positive order, so a class
    is represented iff its representative is in the set. Over Q the set is a
    numpy boolean table indexed by value.
    """

    def __init__(self, field, bound, box, values):
        self.field = field
        self.bound = bound
        self._box = box
        self._values = values

    def __contains__(self, x):
        if self.field.degree == 1:
            return 0 <= x.a < len(self._values) and bool(self._values[x.a])
        return (x.a, x.b) in self._values

    def __len__(self):
        if self.field.degree == 1:
            return int(np.count_nonzero(self._values))
        return len(self._values)

    def _squares(self, coeff):
        found = set()
        for x in _square_candidates(coeff, self._box.upper):
            v = coeff * x * x
            if (v.a, v.b) in self._box:
                found.add((v.a, v.b))
        return found

    def extended(self, coeff):
        """Values of form ⊥ <coeff>, reusing this sweep."""
        if self.field.degree == 1:
            table = self._values
            grown = table.copy()
            for s, _ in self._squares(coeff):
                if s:
                    grown[s:] |= table[:-s]
            return RepresentedSet(self.field, self.bound, self._box, grown)
        squares = sorted(self._squares(coeff))
        box = self._box
        grown = set(self._values)
        for va, vb in self._values:
            for sa, sb in squares:
                key = (va + sa, vb + sb)
                if key in box:
                    grown.add(key)
        return RepresentedSet(self.field, self.bound, box, grown)


def value_sweep(form, bound):
    """RepresentedSet of a validated form for classes of norm <= bound

    Diagonal forms are swept summand by summand; Gram forms through the
    vectors of the trace form up to the trace of the box corner.
    """
    _require_valid(form)
    field = form.field
    box = _sweep_box(field, bound)
    if field.degree == 1:
        empty = np.zeros(bound + 1, dtype=bool)
        empty[0] = True
        swept = RepresentedSet(field, bound, box, empty)
    else:
        swept = RepresentedSet(field, bound, box, {(0, 0)})
    if form.kind == FORM_DIAG:
        for c in form.data:
            swept = swept.extended(c)
    elif field.degree == 1:
        M = [[e.a for e in row] for row in form.data]
        swept = RepresentedSet(field, bound, box, value_table(M, bound))
    else:
        values = {(0, 0)}
        for y in short_vectors(trace_form(form), sum(box.upper)):
            v = evaluate(form, _vector_from_trace(form, y))
            if (v.a, v.b) in box:
                values.add((v.a, v.b))
        swept = RepresentedSet(field, bound, box, values)
    logger.debug("sweep of %s up to norm %d holds %d values", form, bound, len(swept))
    return swept


@lru_cache(maxsize=64)
def class_list(field, bound):
    """Cached tuple of all classes of norm <= bound."""
    return tuple(enumerate_classes(field, bound))


def non_represented_up_to(form, S, bound, sweep=None):
    """Classes of S with norm <= bound that the form misses, canonically sorted

    Args:
        form: validated QForm
        S: object with a contains(SquareClass) method, or None for all classes
        bound: norm bound
        sweep: an existing RepresentedSet of the form covering bound
    """
    if sweep is None:
        sweep = value_sweep(form, bound)
    elif sweep.bound < bound:
        raise FormException("Sweep does not cover the requested bound", bound)
    return [
        c for c in class_list(form.field, bound)
        if (S is None or S.contains(c)) and c.rep not in sweep
    ]


def is_universal_up_to(form, S, bound, sweep=None):
    """Bounded certificate: every class of S with norm <= bound is represented."""
    return not non_represented_up_to(form, S, bound, sweep)


def _same_field(f, g):
    if f.field != g.field:
        raise FormException("Forms over different fields", "%s vs %s" % (f.field, g.field))


def orthogonal_sum(f, g):
    _same_field(f, g)
    if f.kind == FORM_DIAG and g.kind == FORM_DIAG:
        return validate(QForm(f.field, FORM_DIAG, f.data + g.data))
    zero = f.field.zero
    A, B = gram_matrix(f), gram_matrix(g)
    n, m = f.rank, g.rank
    rows = [tuple(A[i]) + (zero,) * m for i in range(n)]
    rows += [(zero,) * n + tuple(B[i]) for i in range(m)]
    return validate(QForm(f.field, FORM_GRAM, tuple(rows)))


def scale_form(form, multiplier):
    """The form multiplier * Q; multiplier must be totally positive."""
    multiplier = _element(form.field, multiplier)
    if not is_totally_positive(multiplier):
        raise FormException("Scaling by a non totally positive element", str(multiplier))
    if form.kind == FORM_DIAG:
        data = tuple(c * multiplier for c in form.data)
    else:
        data = tuple(tuple(e * multiplier for e in row) for row in form.data)
    return validate(QForm(form.field, form.kind, data))


def conjugate_form(form):
    if form.kind == FORM_DIAG:
        data = tuple(conjugate(c) for c in form.data)
    else:
        data = tuple(tuple(conjugate(e) for e in row) for row in form.data)
    return validate(QForm(form.field, form.kind, data))


def transform(form, action, other=None):
    """Applies "orthogonal_sum" (other: QForm), "scale" (other: multiplier)
    or "conjugate" to a validated form."""
    _require_valid(form)
    if action == "orthogonal_sum":
        return orthogonal_sum(form, other)
    if action == "scale":
        return scale_form(form, other)
    if action == "conjugate":
        return conjugate_form(form)
    raise FormException("Unknown transform", action)


def lift_form(zform, field):
    """T ⊗ O_K: the same coefficients or Gram entries read over field."""
    if not zform.field.is_rational:
        raise FormException("Only forms over Q can be lifted", str(zform.field))
    if zform.kind == FORM_DIAG:
        data = tuple(field.element(c.a) for c in zform.data)
    else:
        data = tuple(tuple(field.element(e.a) for e in row) for row in zform.data)
    return validate(QForm(field, zform.kind, data))


def is_x_form(form, X):
    """diag: diagonal; cl: classical; nc: any integral form."""
    if X == X_DIAG:
        return form.kind == FORM_DIAG
    if X == X_CL:
        return form.classical
    if X == X_NC:
        return True
    raise FormException("Unknown lattice kind", X)
