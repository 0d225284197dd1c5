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


"""Exact arithmetic in the ring of integers of Q or of a real quadratic field

Elements are a + b*w over the integral basis {1, w} with w = sqrt(D) when
D = 2, 3 (mod 4) and w = (1 + sqrt(D))/2 when D = 1 (mod 4). The dominant
embedding (index 0) sends sqrt(D) to the positive root. Every predicate is
decided with integer arithmetic only.

Example usage:

K = make_field(5)
phi = K.fund_unit                 # (1+sqrt5)/2
is_totally_positive(phi * phi)    # True
norm_trace(K.element(3, 1))       # (11, 7)
"""

import logging
from dataclasses import dataclass
from math import isqrt

from sympy import factorint

from .markers import KIND_RATIONAL, KIND_QUADRATIC, OMEGA_SQRT, OMEGA_HALF

__all__ = (
    "CritsetException",
    "FieldException",
    "FieldCtx",
    "AlgInt",
    "make_field",
    "is_totally_positive",
    "totally_leq",
    "norm_trace",
    "divides",
    "conjugate",
    "sign_at",
    "floor_at",
    "ceil_at",
    "compare_at",
    "canonical_key",
    "box_rows",
    "box_elements",
    "adjugate",
    "omega_convergents",
)

logger = logging.getLogger(__name__)


class CritsetException(ValueError):
    """Raised when an input violates a precondition of a critset operation."""

    def __init__(self, message, detail=None):
        if detail is not None:
            super(CritsetException, self).__init__(
                "%s (%s)" % (message, detail), detail
            )
        else:
            super(CritsetException, self).__init__(str(message), None)

    @property
    def detail(self):
        """Offending value (an element, minor, embedding index...) if known."""
        return self.args[1]  # pylint: disable=unsubscriptable-object


class FieldException(CritsetException):
    """Raised for invalid field descriptors and mixed-field arithmetic."""


@dataclass(frozen=True)
class FieldCtx:
    """Q or Q(sqrt(D)) together with its integral basis and unit data.

    The fundamental unit is stored by coordinates so that contexts stay
    hashable and picklable; use the fund_unit property for the element.
    """

    kind: str
    D: int
    omega_mode: str
    discriminant: int
    unit_a: int
    unit_b: int
    fund_unit_norm: int
    degree: int

    @property
    def is_rational(self):
        return self.degree == 1

    @property
    def tr_omega(self):
        return 1 if self.omega_mode == OMEGA_HALF else 0

    @property
    def n_omega(self):
        if self.omega_mode == OMEGA_HALF:
            return (1 - self.D) // 4
        return -self.D if self.degree == 2 else 0

    def element(self, a, b=0):
        return AlgInt(self, int(a), int(b))

    @property
    def zero(self):
        return AlgInt(self, 0, 0)

    @property
    def one(self):
        return AlgInt(self, 1, 0)

    @property
    def omega(self):
        if self.is_rational:
            raise FieldException("Q has no generator omega")
        return AlgInt(self, 0, 1)

    @property
    def fund_unit(self):
        return AlgInt(self, self.unit_a, self.unit_b)

    @property
    def unit_square(self):
        eps = self.fund_unit
        return eps * eps

    @property
    def unit_square_inverse(self):
        # eps^-1 = N(eps) * conj(eps), so eps^-2 = conj(eps)^2
        eps_bar = conjugate(self.fund_unit)
        return eps_bar * eps_bar

    def __str__(self):
        return "Q" if self.is_rational else "Q(sqrt(%d))" % self.D


@dataclass(frozen=True)
class AlgInt:
    """The element a + b*w of the ring of integers of ctx."""

    ctx: FieldCtx
    a: int
    b: int

    def __post_init__(self):
        if self.ctx.degree == 1 and self.b != 0:
            raise FieldException("Rational element with nonzero b", self.b)

    def _coerce(self, other):
        if isinstance(other, AlgInt):
            if other.ctx != self.ctx:
                raise FieldException(
                    "Elements of different fields", "%s vs %s" % (self.ctx, other.ctx)
                )
            return other
        if isinstance(other, int):
            return AlgInt(self.ctx, other, 0)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return AlgInt(self.ctx, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return AlgInt(self.ctx, -self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return AlgInt(self.ctx, self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        ctx = self.ctx
        # w^2 = Tr(w) w - N(w)
        bd = self.b * other.b
        return AlgInt(
            ctx,
            self.a * other.a - bd * ctx.n_omega,
            self.a * other.b + self.b * other.a + bd * ctx.tr_omega,
        )

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            nrm = self.norm
            if abs(nrm) != 1:
                raise CritsetException("Negative power of a non-unit", self)
            return (adjugate(self) * nrm) ** (-exponent)
        result = self.ctx.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __bool__(self):
        return self.a != 0 or self.b != 0

    @property
    def norm(self):
        if self.ctx.degree == 1:
            return self.a
        ctx = self.ctx
        return self.a * self.a + self.a * self.b * ctx.tr_omega + self.b * self.b * ctx.n_omega

    @property
    def trace(self):
        if self.ctx.degree == 1:
            return self.a
        return 2 * self.a + self.b * self.ctx.tr_omega

    @property
    def is_rational(self):
        return self.b == 0

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return "%d%+d*w" % (self.a, self.b)

    def __repr__(self):
        return "AlgInt(%s, %d, %d)" % (self.ctx, self.a, self.b)


def make_field(descriptor):
    """Builds the context for Q or Q(sqrt(D))

    Args:
        descriptor: "Q", or a squarefree integer D >= 2 (int or decimal str)

    Returns:
        FieldCtx with the fundamental unit taken from the continued fraction
        of omega

    Raises:
        FieldException: D <= 1 or D not squarefree (naming the square factor)
    """
    if isinstance(descriptor, str):
        text = descriptor.strip()
        if text.upper() == "Q":
            return FieldCtx(KIND_RATIONAL, 1, OMEGA_SQRT, 1, 1, 0, 1, 1)
        try:
            descriptor = int(text)
        except ValueError:
            raise FieldException("Unknown field descriptor", descriptor)
    if isinstance(descriptor, bool) or not isinstance(descriptor, int):
        raise FieldException("Unknown field descriptor", descriptor)
    D = descriptor
    if D <= 1:
        raise FieldException("D must be at least 2", D)
    for prime, exponent in factorint(D).items():
        if exponent >= 2:
            raise FieldException(
                "D is not squarefree", "divisible by %d^2 = %d" % (prime, prime * prime)
            )
    half = D % 4 == 1
    ctx = FieldCtx(
        KIND_QUADRATIC,
        D,
        OMEGA_HALF if half else OMEGA_SQRT,
        D if half else 4 * D,
        1,
        0,
        1,
        2,
    )
    for _, _, alpha in omega_convergents(ctx):
        nrm = alpha.norm
        if nrm in (1, -1):
            logger.debug("fundamental unit of %s is %s", ctx, alpha)
            return FieldCtx(
                ctx.kind, D, ctx.omega_mode, ctx.discriminant, alpha.a, alpha.b, nrm, 2
            )
    raise FieldException("No unit found", D)  # pragma: no cover


def omega_convergents(ctx):
    """Yields (i, u_i, alpha_i) for i >= 0 where omega = [u_0; u_1, ...] and
    alpha_i = p_i - q_i * conj(omega) for the convergents p_i/q_i of omega.

    The sequence is infinite; the caller decides when to stop.
    """
    if ctx.is_rational:
        raise FieldException("Q has no continued fraction of omega")
    if ctx.omega_mode == OMEGA_HALF:
        P, Q = 1, 2
    else:
        P, Q = 0, 1
    D = ctx.D
    root = isqrt(D)
    p_prev, p_cur = 0, 1
    q_prev, q_cur = 1, 0
    i = 0
    while True:
        if Q > 0:
            u = (P + root) // Q
        else:
            u = (P + root + 1) // Q
        p_prev, p_cur = p_cur, u * p_cur + p_prev
        q_prev, q_cur = q_cur, u * q_cur + q_prev
        yield i, u, AlgInt(ctx, p_cur - q_cur * ctx.tr_omega, q_cur)
        P = u * Q - P
        Q = (D - P * P) // Q
        i += 1


def adjugate(x):
    """N(x)/x: the conjugate in degree 2, one in degree 1."""
    if x.ctx.degree == 1:
        return x.ctx.one
    return conjugate(x)


def __surd_sign(p, q, D):
    """Sign of p + q*sqrt(D) for squarefree D >= 2."""
    if q == 0:
        return (p > 0) - (p < 0)
    if p >= 0 and q > 0:
        return 1
    if p <= 0 and q < 0:
        return -1
    diff = p * p - q * q * D
    if p > 0:
        return 1 if diff > 0 else -1
    return -1 if diff > 0 else 1


def __surd_coords(x, i):
    """(p, s) with sigma_i(x) = (p + s*sqrt(D))/2."""
    if x.ctx.omega_mode == OMEGA_HALF:
        p, q = 2 * x.a + x.b, x.b
    else:
        p, q = 2 * x.a, 2 * x.b
    return p, (q if i == 0 else -q)


def sign_at(x, i):
    """Exact sign (-1, 0, 1) of the i-th real embedding of x."""
    if x.ctx.degree == 1:
        return (x.a > 0) - (x.a < 0)
    p, s = __surd_coords(x, i)
    return __surd_sign(p, s, x.ctx.D)


def floor_at(x, i):
    """Exact floor of the i-th real embedding of x."""
    if x.ctx.degree == 1:
        return x.a
    p, s = __surd_coords(x, i)
    if s == 0:
        return p // 2
    root = isqrt(s * s * x.ctx.D)
    floor_surd = root if s > 0 else -root - 1
    return (p + floor_surd) // 2


def ceil_at(x, i):
    return -floor_at(-x, i)


def compare_at(x, y, i):
    """Sign of sigma_i(x) - sigma_i(y)."""
    return sign_at(x - y, i)


def is_totally_positive(x):
    """True iff every real embedding of x is positive (zero is not)."""
    return all(sign_at(x, i) > 0 for i in range(x.ctx.degree))


def totally_leq(x, y):
    """x ⪯ y: x = y, or x is smaller than y at every embedding."""
    diff = y - x
    return not diff or is_totally_positive(diff)


def norm_trace(x):
    return x.norm, x.trace


def conjugate(x):
    """Image of x under the nontrivial automorphism (identity over Q)."""
    if x.ctx.degree == 1:
        return x
    return AlgInt(x.ctx, x.a + x.b * x.ctx.tr_omega, -x.b)


def divides(x, y):
    """Element divisibility x | y

    Returns:
        (True, y/x) when the quotient is integral, (False, None) otherwise

    Raises:
        CritsetException: x is zero
    """
    if not x:
        raise CritsetException("Division by zero element")
    numerator = y * adjugate(x)
    nrm = x.norm
    if numerator.a % nrm or numerator.b % nrm:
        return False, None
    return True, AlgInt(x.ctx, numerator.a // nrm, numerator.b // nrm)


def canonical_key(x):
    """Total order (norm, trace, a, b) used for every deterministic tie-break."""
    return (x.norm, x.trace, x.a, x.b)


def __floor_div_sqrt(n, d):
    """A lower bound for floor(n / sqrt(d)), exact when n >= 0."""
    if n >= 0:
        return isqrt(n * n // d)
    return -(isqrt(n * n // d) + 1)


def box_rows(ctx, lower, upper):
    """Yields (b, a_lo, a_hi) such that a + b*w satisfies
    lower[i] <= sigma_i <= upper[i] for all i exactly when a_lo <= a <= a_hi.

    Rows with an empty a-range are skipped. The range of a for each b comes
    from exact floors of the embeddings.
    """
    if ctx.degree == 1:
        if lower[0] <= upper[0]:
            yield 0, lower[0], upper[0]
        return
    disc = ctx.discriminant
    # sigma_0 - sigma_1 = b * sqrt(disc)
    b_lo = __floor_div_sqrt(lower[0] - upper[1], disc)
    b_hi = -__floor_div_sqrt(lower[1] - upper[0], disc)
    for b in range(b_lo, b_hi + 1):
        a_lo = max(ceil_at(AlgInt(ctx, lower[i], -b), i) for i in (0, 1))
        a_hi = min(floor_at(AlgInt(ctx, upper[i], -b), i) for i in (0, 1))
        if a_lo <= a_hi:
            yield b, a_lo, a_hi


def box_elements(ctx, lower, upper):
    """Yields every x with lower[i] <= sigma_i(x) <= upper[i] for all i.

    Args:
        ctx: field
        lower: integer lower bounds, one per embedding
        upper: integer upper bounds, one per embedding

    Elements are produced in increasing (b, a) order.
    """
    for b, a_lo, a_hi in box_rows(ctx, lower, upper):
        for a in range(a_lo, a_hi + 1):
            yield AlgInt(ctx, a, b)
