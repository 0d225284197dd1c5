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


"""Truants, orthogonal escalation witnesses and bounded criterion-set candidates

Every certificate produced here is bounded: a CriticalWitness states the norm
up to which its form was verified to represent everything else. Failure to
find a witness is reported as inconclusive, never as non-criticality, except
for the squarefreeness gate and, over Q, an exhausted escalation-tree search.

Example usage:

Q = make_field("Q")
report = truants(diag_form(Q, [1, 2, 5, 5]), None, 100)
report.truant_norm                                   # 15
cand = criterion_candidates(Q, "diag", 15)
[c.rep.a for c in cand.classes]                      # [1, 2, 3, 5, 6, 7, 10, 14, 15]
"""

import logging
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import count
from math import isqrt

from sympy import factorint
from sympy.ntheory import legendre_symbol

from .markers import (
    S_ALL,
    S_LIST,
    S_ALL_MINUS,
    S_SQUAREFREE,
    S_RATIONAL,
    X_DIAG,
    X_CL,
    X_NC,
    X_KINDS,
    STATUS_CERTIFIED,
)
from .ring import (
    CritsetException,
    FieldException,
    box_elements,
    conjugate,
    divides,
    floor_at,
    is_totally_positive,
    totally_leq,
)
from .elements import (
    SquareClass,
    class_of,
    elements_dominated_by,
    is_squarefree,
    indec_sequence,
    elements_of_norm,
)
from .forms import (
    class_list,
    diag_form,
    is_x_form,
    lift_form,
    non_represented_up_to,
    orthogonal_sum,
    represents,
    value_sweep,
    zero_form,
)
from . import ztree

__all__ = (
    "CriterionException",
    "SSpec",
    "TruantReport",
    "CriticalWitness",
    "EscalationFailure",
    "NoWitness",
    "ClosureReport",
    "CriterionCandidate",
    "DiagUniversalReport",
    "CheckResult",
    "HypothesisReport",
    "PRINTED_CRITERION_Q",
    "PRINTED_CRITERION_Q_DIAG",
    "RATIONAL_WITNESSES",
    "truants",
    "escalate_witness",
    "certify_critical",
    "verify_witness",
    "criterion_candidates",
    "closure_parity_check",
    "exception_form",
    "rational_witness_form",
    "fifteen_criticality_start",
    "check_dominated_integrality",
    "check_factor_condition",
    "check_fifteen_hypotheses",
    "check_290_hypotheses",
    "check_descent_condition",
    "diag_universal_from_candidates",
    "diag_rank_bound",
)

logger = logging.getLogger(__name__)

# Critical integers over Z for all forms and for diagonal (= classical) forms
PRINTED_CRITERION_Q = (
    1, 2, 3, 5, 6, 7, 10, 13, 14, 15, 17, 19, 21, 22, 23, 26,
    29, 30, 31, 34, 35, 37, 42, 58, 93, 110, 145, 203, 290,
)
PRINTED_CRITERION_Q_DIAG = (1, 2, 3, 5, 6, 7, 10, 14, 15)

# Diagonal Z-forms with truant n
RATIONAL_WITNESSES = {
    1: (),
    2: (1,),
    3: (1, 1),
    5: (1, 2),
    6: (1, 1, 3),
    7: (1, 1, 1),
    10: (1, 2, 3),
    14: (1, 1, 2),
    15: (1, 2, 5, 5),
}

DEFAULT_MAX_STEPS = 200
DEFAULT_SEARCH_NODES = 200
DESCENT_BOUNDS = {X_NC: 4 * 203 * 290, X_CL: 14 * 15}


class CriterionException(CritsetException):
    """Raised when a precondition of a criterion operation fails."""


@lru_cache(maxsize=None)
def _squarefree(rep):
    return is_squarefree(rep)[0]


@dataclass(frozen=True)
class SSpec:
    """A subset S of the square classes.

    variant ALL, list (classes), ALL-minus (classes removed from ALL), or a
    predicate (squarefree, rational-integers). excluded holds further classes
    removed from any variant, which is how S minus {alpha} is formed.
    """

    variant: str = S_ALL
    classes: tuple = ()
    excluded: tuple = ()

    @classmethod
    def all(cls):
        return cls(S_ALL)

    def contains(self, c):
        if c in self.excluded:
            return False
        if self.variant == S_ALL:
            return True
        if self.variant == S_LIST:
            return c in self.classes
        if self.variant == S_ALL_MINUS:
            return c not in self.classes
        if self.variant == S_SQUAREFREE:
            return _squarefree(c.rep)
        if self.variant == S_RATIONAL:
            return c.rep.b == 0
        raise CriterionException("Unknown S variant", self.variant)

    def without(self, c):
        if self.variant == S_ALL:
            return SSpec(S_ALL_MINUS, (c,))
        if self.variant == S_ALL_MINUS:
            return SSpec(S_ALL_MINUS, self.classes + (c,), self.excluded)
        if self.variant == S_LIST:
            return SSpec(S_LIST, tuple(x for x in self.classes if x != c), self.excluded)
        return SSpec(self.variant, self.classes, self.excluded + (c,))

    @property
    def tag(self):
        return self.variant


def _spec(S):
    return SSpec.all() if S is None else S


def _as_class(field, alpha):
    if isinstance(alpha, SquareClass):
        if alpha.field != field:
            raise FieldException("Class lies in another field", str(alpha))
        return alpha
    if isinstance(alpha, int):
        alpha = field.element(alpha)
    return class_of(alpha)


@dataclass(frozen=True)
class TruantReport:
    form: object
    S: object
    searched_norm_bound: int
    truant_norm: object
    truants: tuple
    canonical_truant: object

    @property
    def found(self):
        return self.truant_norm is not None


@dataclass(frozen=True)
class CriticalWitness:
    alpha: SquareClass
    X: str
    witness_form: object
    escalation_trail: tuple
    verified_bound: int
    status: str = STATUS_CERTIFIED
    start_recipe: str = ""
    notes: tuple = ()


@dataclass(frozen=True)
class EscalationFailure:
    """max_steps ran out; inconclusive, carries the partial trail."""

    alpha: SquareClass
    X: str
    start_form: object
    last_form: object
    escalation_trail: tuple
    verified_bound: int
    steps: int
    reason: str


@dataclass(frozen=True)
class NoWitness:
    """certify_critical found nothing. conclusive is set only when alpha is
    provably not critical: a square factor whose cofactor lies in S, or over Q
    an escalation tree of the enclosing kind searched out without truant alpha."""

    alpha: SquareClass
    X: str
    reason: str
    conclusive: bool = False
    square_witness: object = None
    attempts: tuple = ()
    notes: tuple = ()


@dataclass(frozen=True)
class ClosureReport:
    conjugation_closed: bool
    conjugation_violations: tuple
    unit_closed: object
    unit_violations: tuple
    even: object
    pairs: tuple
    skipped: str = ""

    @property
    def ok(self):
        return (
            self.conjugation_closed
            and self.unit_closed is not False
            and self.even is not False
        )


@dataclass(frozen=True)
class CriterionCandidate:
    field: object
    X: str
    norm_bound: int
    verify_bound: int
    classes: tuple
    witnesses: tuple
    undecided: tuple = ()
    excluded: tuple = ()
    closure: object = None

    @property
    def summary(self):
        return "all critical elements of norm <= %d, certified to %d" % (self.norm_bound, self.verify_bound)


@dataclass(frozen=True)
class DiagUniversalReport:
    form: object
    verified_bound: int
    universal_up_to_bound: bool
    missing: tuple
    rank_bound: int


@dataclass(frozen=True)
class CheckResult:
    holds: bool
    witness: object = None
    tier: str = ""
    failed_m: object = None


@dataclass(frozen=True)
class HypothesisReport:
    n: int
    kind: str
    dominated: CheckResult
    factors: tuple = dc_field(default_factory=tuple)

    @property
    def holds(self):
        return self.dominated.holds and all(r.holds for r in self.factors)

    @property
    def conclusion(self):
        """Rational criticals up to n that the hypotheses transfer to K."""
        if not self.holds:
            return ()
        printed = PRINTED_CRITERION_Q_DIAG if self.kind == "fifteen" else PRINTED_CRITERION_Q
        return tuple(k for k in printed if k <= self.n)


def truants(form, S=None, bound=100, sweep=None):
    """Minimal-norm classes of S that the form does not represent

    Args:
        form: validated QForm
        S: SSpec or None for all classes
        bound: largest norm searched
        sweep: optional RepresentedSet of the form covering bound

    Returns:
        TruantReport; truant_norm is None when every class up to bound is
        represented
    """
    missing = non_represented_up_to(form, S, bound, sweep)
    if not missing:
        return TruantReport(form, S, bound, None, (), None)
    least = missing[0].norm
    found = tuple(c for c in missing if c.norm == least)
    return TruantReport(form, S, bound, least, found, found[0])


def escalate_witness(start, alpha, S=None, verify_bound=None, max_steps=DEFAULT_MAX_STEPS, X=X_DIAG, recipe=""):
    """Orthogonal escalation L_{i+1} = L_i ⊥ <beta_{i+1}> with canonical
    (S minus alpha)-truants until nothing of norm <= verify_bound is missing

    Returns:
        CriticalWitness, or EscalationFailure when max_steps is exhausted

    Raises:
        CriterionException: alpha is not in S or not a truant of start, start
                            is not an X-form, or an escalation step breaks the
                            norm argument (which would be a bug)
    """
    field = start.field
    S = _spec(S)
    alpha = _as_class(field, alpha)
    if verify_bound is None:
        verify_bound = 4 * alpha.norm
    if verify_bound < alpha.norm:
        raise CriterionException("verify_bound is below N(alpha)", verify_bound)
    if not S.contains(alpha):
        raise CriterionException("alpha is not in S", str(alpha))
    if not is_x_form(start, X):
        raise CriterionException("Start form is not an %s-form" % X, str(start))
    sweep = value_sweep(start, verify_bound)
    report = truants(start, S, verify_bound, sweep)
    if alpha not in report.truants:
        raise CriterionException(
            "alpha is not a truant of the start form",
            "truants %s" % ",".join(str(c) for c in report.truants),
        )
    rest = S.without(alpha)
    form, trail = start, []
    for step in count():
        missing = non_represented_up_to(form, rest, verify_bound, sweep)
        if not missing:
            logger.debug("witness for %s after %d steps: %s", alpha, step, form)
            return CriticalWitness(alpha, X, form, tuple(trail), verify_bound, STATUS_CERTIFIED, recipe)
        if step >= max_steps:
            return EscalationFailure(
                alpha, X, start, form, tuple(trail), verify_bound, step,
                "max_steps exhausted with %d classes still missing" % len(missing),
            )
        beta = missing[0]
        if beta.norm < alpha.norm:
            raise CriterionException("Escalation truant below N(alpha)", str(beta))
        form = orthogonal_sum(form, diag_form(field, [beta.rep]))
        sweep = sweep.extended(beta.rep)
        trail.append(beta)
        if alpha.rep in sweep or represents(form, alpha.rep)[0]:
            raise CriterionException("Escalation represented alpha", str(beta))
        logger.debug("escalation step %d for %s: added <%s>", step + 1, alpha, beta)


def _has_truant(form, alpha, S):
    report = truants(form, S, alpha.norm)
    return alpha in report.truants


def rational_witness_form(n):
    """The diagonal Z-form T_n with truant n

    Raises:
        CriterionException: n has no printed diagonal witness
    """
    if n not in RATIONAL_WITNESSES:
        raise CriterionException("No diagonal Z-form with truant n is known", n)
    from .ring import make_field

    return diag_form(make_field("Q"), RATIONAL_WITNESSES[n])


def _rational_start_form(n, X):
    """A Z-form of the requested kind with truant n, or None."""
    if n in RATIONAL_WITNESSES:
        return rational_witness_form(n)
    return ztree.find_truant_form(n, X)


def fifteen_criticality_start(field, n, X=X_DIAG):
    """D ⊥ T ⊗ O_K where T is a Z-form with truant n and D is diagonal on the
    squarefree classes of norm < N(n) not containing a rational integer.

    Returns None when no Z-form of kind X with truant n is available.
    """
    T = _rational_start_form(n, X)
    if T is None:
        return None
    if field.is_rational:
        return T
    limit = field.element(n).norm - 1
    D = [c.rep for c in class_list(field, limit) if c.rep.b != 0 and _squarefree(c.rep)]
    return orthogonal_sum(diag_form(field, D), lift_form(T, field))


def _diag_search_starts(alpha, S, budget):
    """Breadth-first diagonal escalations L ⊥ <c> with N(c) <= N(truant) that
    keep missing alpha; yields forms with truant alpha."""
    field = alpha.field
    queue = deque([zero_form(field)])
    seen = {()}
    expanded = 0
    while queue and expanded < budget:
        L = queue.popleft()
        expanded += 1
        sweep = value_sweep(L, alpha.norm)
        if alpha.rep in sweep:
            continue
        report = truants(L, S, alpha.norm, sweep)
        if alpha in report.truants:
            yield L
            continue
        tau = report.canonical_truant
        for c in class_list(field, tau.norm):
            key = tuple(sorted(L.coeffs + (c.rep,), key=lambda e: (e.a, e.b)))
            if key in seen:
                continue
            grown = sweep.extended(c.rep)
            if tau.rep in grown and alpha.rep not in grown:
                seen.add(key)
                queue.append(orthogonal_sum(L, diag_form(field, [c.rep])))


def _start_forms(alpha, X, S, search_nodes):
    field = alpha.field
    smaller = [c for c in class_list(field, alpha.norm - 1) if S.contains(c)]
    yield "smaller-classes", diag_form(field, [c.rep for c in smaller])
    squarefree = [c for c in smaller if _squarefree(c.rep)]
    yield "squarefree-smaller-classes", diag_form(field, [c.rep for c in squarefree])
    skip = {class_of(field.one), class_of(field.element(2))}
    yield "sum-of-squares-prefix", diag_form(
        field, [1, 1] + [c.rep for c in squarefree if c not in skip]
    )
    if S.variant != S_ALL or S.excluded:
        return
    if alpha.is_rational:
        start = fifteen_criticality_start(field, alpha.rep.a, X)
        if start is not None:
            yield "rational-witness", start
    if field.is_rational:
        # diag before cl before nc keeps the candidate sets nested
        for kind in _KINDS_UP_TO[X]:
            T = ztree.find_truant_form(alpha.rep.a, kind)
            if T is not None:
                yield "ztree-%s" % kind, T
        return
    for L in _diag_search_starts(alpha, S, search_nodes):
        yield "escalation-search", L


_KINDS_UP_TO = {X_DIAG: (X_DIAG,), X_CL: (X_DIAG, X_CL), X_NC: (X_DIAG, X_CL, X_NC)}


def certify_critical(alpha, X, verify_bound, S=None, max_steps=DEFAULT_MAX_STEPS,
                     search_nodes=DEFAULT_SEARCH_NODES, field=None):
    """Bounded criticality certificate for alpha

    Start forms are tried in order: all smaller classes; the squarefree
    smaller classes; <1,1> ⊥ squarefree smaller classes other than 1 and 2;
    D ⊥ T ⊗ O_K for rational alpha; finally a bounded search over escalations.
    The first start with truant alpha that escalates to a witness wins.

    Args:
        alpha: SquareClass (or element of field)
        X: one of nc, cl, diag
        verify_bound: norm up to which the witness is verified
        S: SSpec, default all classes

    Returns:
        CriticalWitness, or NoWitness (inconclusive unless rejected by the
        squarefreeness gate or by an exhausted Z-escalation search)

    Raises:
        CriterionException: alpha not in S, unknown X
    """
    if X not in X_KINDS:
        raise CriterionException("Unknown lattice kind", X)
    if not isinstance(alpha, SquareClass):
        alpha = _as_class(field, alpha)
    field = alpha.field
    S = _spec(S)
    if not S.contains(alpha):
        raise CriterionException("alpha is not in S", str(alpha))
    notes = ()
    if not field.is_rational and field.D == 5 and alpha.rep == field.element(3):
        notes = ("criticality of 3 over Q(sqrt(5)) is not settled by the 1, 2, 3 dichotomy: no guidance",)
    ok, w = is_squarefree(alpha.rep)
    if not ok:
        cofactor = divides(w * w, alpha.rep)[1]
        if S.contains(class_of(cofactor)):
            return NoWitness(
                alpha, X, "not squarefree: %s^2 divides %s" % (w, alpha.rep),
                conclusive=True, square_witness=w, notes=notes,
            )
    attempts = []
    tried = set()
    for recipe, start in _start_forms(alpha, X, S, search_nodes):
        if start.data in tried or not is_x_form(start, X):
            continue
        tried.add(start.data)
        if not _has_truant(start, alpha, S):
            attempts.append("%s: alpha is not a truant" % recipe)
            continue
        outcome = escalate_witness(start, alpha, S, verify_bound, max_steps, X, recipe)
        if isinstance(outcome, CriticalWitness):
            if notes:
                outcome = CriticalWitness(
                    outcome.alpha, X, outcome.witness_form, outcome.escalation_trail,
                    outcome.verified_bound, outcome.status, recipe, notes,
                )
            logger.info("%s is %s-critical (recipe %s, verified to %d)", alpha, X, recipe, verify_bound)
            return outcome
        attempts.append("%s: %s" % (recipe, outcome.reason))
    logger.info("no %s-witness found for %s", X, alpha)
    if field.is_rational and S.variant == S_ALL and not S.excluded:
        kind = X_NC if X == X_NC else X_CL
        M, exhausted = ztree.search_truant(alpha.rep.a, kind)
        if M is None and exhausted:
            return NoWitness(
                alpha, X, "no %s Z-lattice has truant %d: escalation search exhausted" % (kind, alpha.rep.a),
                conclusive=True, attempts=tuple(attempts), notes=notes,
            )
    return NoWitness(alpha, X, "no witness found", attempts=tuple(attempts), notes=notes)


def verify_witness(witness, S=None, bound=None):
    """Re-checks a CriticalWitness exactly

    Returns:
        list of violated properties (empty when the witness holds up to bound)
    """
    S = _spec(S)
    bound = bound or witness.verified_bound
    form, alpha = witness.witness_form, witness.alpha
    problems = []
    if represents(form, alpha.rep)[0]:
        problems.append("witness form represents alpha")
    missing = non_represented_up_to(form, S.without(alpha), bound)
    if missing:
        problems.append("misses %s" % ",".join(str(c) for c in missing[:10]))
    if not is_x_form(form, witness.X):
        problems.append("witness form is not an %s-form" % witness.X)
    if any(beta.norm < alpha.norm for beta in witness.escalation_trail):
        problems.append("trail element of norm below N(alpha)")
    return problems


def _certify_job(args):
    alpha, X, verify_bound, S, max_steps, search_nodes = args
    return certify_critical(alpha, X, verify_bound, S, max_steps, search_nodes)


def criterion_candidates(field, X, norm_bound, verify_bound=None, S=None, max_steps=DEFAULT_MAX_STEPS,
                         search_nodes=DEFAULT_SEARCH_NODES, workers=1):
    """Bounded candidates for the critical elements of norm <= norm_bound

    Every class of S up to norm_bound is put through certify_critical (only
    squarefree ones when S is all classes). Results do not depend on workers.

    Raises:
        CriterionException: verify_bound < norm_bound
    """
    S = _spec(S)
    if verify_bound is None:
        verify_bound = 4 * norm_bound
    if verify_bound < norm_bound:
        raise CriterionException("verify_bound must be at least norm_bound", verify_bound)
    alphas = [c for c in class_list(field, norm_bound) if S.contains(c)]
    if S.variant == S_ALL:
        alphas = [c for c in alphas if _squarefree(c.rep)]
    jobs = [(c, X, verify_bound, S, max_steps, search_nodes) for c in alphas]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_certify_job, jobs))
    else:
        outcomes = [_certify_job(job) for job in jobs]
    witnesses = tuple(o for o in outcomes if isinstance(o, CriticalWitness))
    candidate = CriterionCandidate(
        field, X, norm_bound, verify_bound,
        tuple(w.alpha for w in witnesses),
        witnesses,
        tuple(o for o in outcomes if isinstance(o, NoWitness) and not o.conclusive),
        tuple(o for o in outcomes if isinstance(o, NoWitness) and o.conclusive),
    )
    for c in candidate.classes:
        if not _squarefree(c.rep):
            raise CriterionException("Candidate class is not squarefree", str(c))
    return CriterionCandidate(
        candidate.field, X, norm_bound, verify_bound, candidate.classes, witnesses,
        candidate.undecided, candidate.excluded, closure_parity_check(candidate),
    )


def closure_parity_check(candidate):
    """Stability under conjugation and totally positive units, and even size
    when the fundamental unit is totally positive."""
    field = candidate.field
    present = set(candidate.classes)
    conj_bad = tuple(c for c in candidate.classes if class_of(conjugate(c.rep)) not in present)
    if field.is_rational or field.fund_unit_norm == -1:
        report = ClosureReport(
            not conj_bad, conj_bad, None, (), None, (),
            "totally positive units are squares; unit closure and parity are vacuous",
        )
    else:
        eps = field.fund_unit
        images = {c: class_of(c.rep * eps) for c in candidate.classes}
        unit_bad = tuple(c for c, img in images.items() if img not in present)
        pairs = tuple(sorted({tuple(sorted((c, img))) for c, img in images.items() if img in present}))
        report = ClosureReport(
            not conj_bad, conj_bad, not unit_bad, unit_bad, len(candidate.classes) % 2 == 0, pairs
        )
    if not report.ok:
        logger.warning(
            "closure violated for %s %s candidates up to %d: conjugation %s, units %s, even %s",
            field, candidate.X, candidate.norm_bound,
            [str(c) for c in report.conjugation_violations],
            [str(c) for c in report.unit_violations], report.even,
        )
    return report


def exception_form(beta, field=None):
    """The diagonal form representing every totally positive element except
    the class of beta (a squarefree indecomposable)

    For t >= 2 the form is the beta_i-scaled sums of four squares for i != k,
    beta_k * <2,2,3,4>, <beta_{k-1} + beta_k> and <beta_k + beta_{k+1}>.
    Over Q(sqrt(5)), where t = 1, it is J ⊥ J ⊥ <1+phi^2> ⊥ <2+phi^2> ⊥ <1+2phi^2>.

    Raises:
        FieldException: field is Q
        CriterionException: beta decomposable or not squarefree
    """
    if not isinstance(beta, SquareClass):
        beta = _as_class(field, beta)
    field = beta.field
    if field.is_rational:
        raise FieldException("Exception forms are built over real quadratic fields")
    J = (2, 2, 3, 4)
    t = indec_sequence(field).t
    seq = indec_sequence(field, (-1, t))
    k = next((i for i in range(t) if class_of(seq.beta(i)) == beta), None)
    if k is None:
        raise CriterionException("beta is decomposable", str(beta))
    ok, w = is_squarefree(beta.rep)
    if not ok:
        raise CriterionException("beta is not squarefree", str(w))
    if t == 1:
        phi2 = field.unit_square
        coeffs = list(J) + list(J) + [phi2 + 1, phi2 + 2, phi2 * 2 + 1]
        return diag_form(field, coeffs)
    coeffs = []
    for i in range(t):
        if i != k:
            coeffs += [seq.beta(i)] * 4
    bk = seq.beta(k)
    coeffs += [bk * j for j in J]
    coeffs += [seq.beta(k - 1) + bk, bk + seq.beta(k + 1)]
    return diag_form(field, coeffs)


def check_dominated_integrality(field, n, mode="elements"):
    """Whether every alpha ⪯ n (mode elements) or every beta with beta^2 ⪯ n
    (mode squares) is a rational integer

    Returns:
        CheckResult with an irrational witness when the condition fails
    """
    if isinstance(n, int):
        n = field.element(n)
    if not is_totally_positive(n):
        raise CriterionException("n is not totally positive", str(n))
    if mode == "elements":
        for alpha in elements_dominated_by(n):
            if alpha.b != 0:
                return CheckResult(False, alpha, mode)
        return CheckResult(True, None, mode)
    if mode != "squares":
        raise CriterionException("Unknown mode", mode)
    radii = tuple(isqrt(floor_at(n, i)) + 1 for i in range(field.degree))
    for beta in box_elements(field, tuple(-r for r in radii), radii):
        if beta.b > 0 and totally_leq(beta * beta, n):
            return CheckResult(False, beta, mode)
    return CheckResult(True, None, mode)


def _kronecker(disc, p):
    if p == 2:
        if disc % 2 == 0:
            return 0
        return 1 if disc % 8 in (1, 7) else -1
    if disc % p == 0:
        return 0
    return legendre_symbol(disc % p, p)


def _is_inert(field, p):
    return _kronecker(field.discriminant, p) == -1


def _has_rational_associate(w):
    """w = unit * integer."""
    s = abs(w.norm)
    r = isqrt(s)
    if r * r != s:
        return False
    ok, q = divides(w.ctx.element(r), w)
    return ok and abs(q.norm) == 1


def _factor_condition_single(field, m):
    if field.is_rational:
        return CheckResult(True, None, "rational")
    primes = factorint(m)
    if all(_is_inert(field, p) for p in primes):
        return CheckResult(True, None, "inert")
    target = field.element(m)
    for s in range(2, m + 1):
        if m % s:
            continue
        for w in elements_of_norm(field, s):
            if divides(w * w, target)[0] and not _has_rational_associate(w):
                return CheckResult(False, w, "exact", m)
    return CheckResult(True, None, "exact")


def check_factor_condition(field, m, bound_mode="single"):
    """If m = alpha * w^2 then some unit multiple of w is rational

    Args:
        field: FieldCtx
        m: positive integer
        bound_mode: "single" checks m; "range" checks every m' in 1..m

    Returns:
        CheckResult; tier "inert" when every prime factor is inert, "exact"
        when decided by enumerating the w with w^2 | m
    """
    if m < 1:
        raise CriterionException("m must be positive", m)
    if bound_mode == "single":
        return _factor_condition_single(field, m)
    if bound_mode != "range":
        raise CriterionException("Unknown bound mode", bound_mode)
    tiers = set()
    for k in range(1, m + 1):
        result = _factor_condition_single(field, k)
        if not result.holds:
            return result
        tiers.add(result.tier)
    return CheckResult(True, None, "exact" if "exact" in tiers else "inert")


def _hypotheses(field, n, limit, kind):
    dominated = check_dominated_integrality(field, limit, "elements")
    factors = tuple(_factor_condition_single(field, m) for m in range(1, limit + 1))
    return HypothesisReport(n, kind, dominated, factors)


def check_fifteen_hypotheses(field, n):
    """Dominated integrality at n and the factor condition for m <= n, which
    transfer diagonal criticality of the rational criticals to K."""
    return _hypotheses(field, n, n, "fifteen")


def check_290_hypotheses(field, n):
    """Dominated integrality at 2n and the factor condition for m <= 2n."""
    return _hypotheses(field, n, 2 * n, "290")


def check_descent_condition(field, kind=X_NC):
    """beta^2 ⪯ 4*203*290 (nc) or 14*15 (cl) forces beta rational; then the
    rational critical elements of K are critical over Z."""
    if kind not in DESCENT_BOUNDS:
        raise CriterionException("Descent condition is stated for nc and cl", kind)
    return check_dominated_integrality(field, field.element(DESCENT_BOUNDS[kind]), "squares")


def diag_rank_bound(candidate):
    """Upper bound for the minimal rank of a universal diagonal form."""
    return len(candidate.classes)


def diag_universal_from_candidates(candidate, verify_bound):
    """<alpha_1, ..., alpha_n> over the candidate classes and its bounded
    universality

    Raises:
        CriterionException: empty candidate
    """
    if not candidate.classes:
        raise CriterionException("Empty candidate set")
    form = diag_form(candidate.field, [c.rep for c in candidate.classes])
    missing = tuple(non_represented_up_to(form, None, verify_bound))
    if missing:
        logger.warning("diagonal form on %s candidates misses %d classes", candidate.X, len(missing))
    return DiagUniversalReport(form, verify_bound, not missing, missing, diag_rank_bound(candidate))
