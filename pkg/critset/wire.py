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


"""JSON documents and command-line shorthand for fields, elements, forms and results

Integers outside the signed 64-bit range are written as decimal strings and
accepted in either form on input.
"""

import re

from .markers import (
    FIELD_Q,
    FIELD_QSQRT,
    FORM_DIAG,
    FORM_GRAM,
    S_ALL,
    S_LIST,
    S_ALL_MINUS,
    S_SQUAREFREE,
    S_RATIONAL,
    X_KINDS,
)
from .ring import CritsetException, make_field
from .elements import class_of
from .forms import diag_form, gram_form

__all__ = (
    "WireException",
    "int_to_json",
    "int_from_json",
    "element_to_json",
    "element_from_json",
    "field_to_json",
    "field_from_json",
    "form_to_json",
    "form_from_json",
    "class_to_json",
    "parse_field",
    "parse_element",
    "parse_form",
    "parse_sspec",
    "sspec_to_json",
    "truant_report_to_json",
    "witness_to_json",
    "witness_from_json",
    "outcome_to_json",
    "candidate_to_json",
    "class_from_json",
    "sspec_from_json",
    "check_to_json",
    "hypothesis_to_json",
    "tree_to_json",
)

__INT64_MIN = -(1 << 63)
__INT64_MAX = (1 << 63) - 1


class WireException(CritsetException):
    """Raised when a document or shorthand string cannot be decoded."""


def int_to_json(n):
    return n if __INT64_MIN <= n <= __INT64_MAX else str(n)


def int_from_json(value):
    if isinstance(value, bool):
        raise WireException("Expected an integer", repr(value))
    if isinstance(value, int):
        return value
    if isinstance(value, str) and re.fullmatch(r"[+-]?\d+", value.strip()):
        return int(value)
    raise WireException("Expected an integer", repr(value))


def element_to_json(x):
    return {"a": int_to_json(x.a), "b": int_to_json(x.b)}


def element_from_json(field, obj):
    if isinstance(obj, (int, str)):
        return field.element(int_from_json(obj))
    try:
        a, b = obj["a"], obj.get("b", 0)
    except (TypeError, KeyError, AttributeError) as ex:
        raise WireException("Malformed element", repr(obj)) from ex
    return field.element(int_from_json(a), int_from_json(b))


def field_to_json(field):
    if field.is_rational:
        return {"type": FIELD_Q}
    return {"type": FIELD_QSQRT, "D": field.D}


def field_from_json(obj):
    try:
        kind = obj["type"]
    except (TypeError, KeyError) as ex:
        raise WireException("Malformed field", repr(obj)) from ex
    if kind == FIELD_Q:
        return make_field("Q")
    if kind == FIELD_QSQRT:
        return make_field(int_from_json(obj.get("D")))
    raise WireException("Unknown field type", kind)


def form_to_json(form):
    if form.kind == FORM_DIAG:
        return {"kind": FORM_DIAG, "coeffs": [element_to_json(c) for c in form.data]}
    return {"kind": FORM_GRAM, "M": [[element_to_json(e) for e in row] for row in form.data]}


def form_from_json(field, obj):
    try:
        kind = obj["kind"]
        if kind == FORM_DIAG:
            return diag_form(field, [element_from_json(field, c) for c in obj["coeffs"]])
        if kind == FORM_GRAM:
            return gram_form(field, [[element_from_json(field, e) for e in row] for row in obj["M"]])
    except (TypeError, KeyError) as ex:
        raise WireException("Malformed form", repr(obj)) from ex
    raise WireException("Unknown form kind", kind)


def class_to_json(c):
    return {"rep": element_to_json(c.rep), "norm": int_to_json(c.norm), "text": str(c.rep)}


def class_from_json(field, obj):
    rep = element_from_json(field, obj["rep"] if isinstance(obj, dict) and "rep" in obj else obj)
    return class_of(rep)


def parse_field(text):
    """Q, Qsqrt:D or a bare D."""
    text = text.strip()
    if text.startswith(FIELD_QSQRT + ":"):
        text = text[len(FIELD_QSQRT) + 1:]
    try:
        return make_field(text)
    except CritsetException:
        raise
    except ValueError as ex:
        raise WireException("Cannot read field", text) from ex


def parse_element(field, text):
    """a, a+b*w, b*w, w, a-w, ... in the integral basis {1, w}."""
    s = "".join(text.split())
    try:
        if "w" not in s:
            return field.element(int(s))
        if field.is_rational:
            raise WireException("Q has no generator w", text)
        if not s.endswith("w") or s.count("w") > 1:
            raise WireException("Cannot read element", text)
        head = s[:-1]
        if head.endswith("*"):
            head = head[:-1]
        cut = max(head.rfind("+"), head.rfind("-"))
        a_text, b_text = (head[:cut], head[cut:]) if cut > 0 else ("", head)
        b = {"": 1, "+": 1, "-": -1}.get(b_text)
        if b is None:
            b = int(b_text)
        return field.element(int(a_text) if a_text else 0, b)
    except ValueError as ex:
        if isinstance(ex, WireException):
            raise
        raise WireException("Cannot read element", text) from ex


def parse_form(field, text):
    """diag:c1,c2,... or gram:row;row with comma separated entries."""
    kind, _, body = text.partition(":")
    if kind == FORM_DIAG:
        coeffs = [parse_element(field, c) for c in body.split(",") if c.strip()] if body.strip() else []
        return diag_form(field, coeffs)
    if kind == FORM_GRAM:
        rows = [[parse_element(field, e) for e in row.split(",")] for row in body.split(";")]
        return gram_form(field, rows)
    raise WireException("Cannot read form (expected diag:... or gram:...)", text)


def parse_sspec(field, text):
    """ALL, squarefree, rational-integers, list:e1,e2 or ALL-minus:e1,e2."""
    from .criterion import SSpec

    if not text:
        return SSpec.all()
    kind, _, body = text.partition(":")
    if kind in (S_ALL, S_SQUAREFREE, S_RATIONAL) and not body:
        return SSpec(kind)
    if kind in (S_LIST, S_ALL_MINUS):
        classes = tuple(class_of(parse_element(field, e)) for e in body.split(",") if e.strip())
        return SSpec(kind, classes)
    raise WireException("Unknown set S", text)


def sspec_to_json(S):
    if S is None:
        return {"variant": S_ALL}
    out = {"variant": S.variant}
    if S.classes:
        out["classes"] = [class_to_json(c) for c in S.classes]
    if S.excluded:
        out["excluded"] = [class_to_json(c) for c in S.excluded]
    return out


def sspec_from_json(field, obj):
    from .criterion import SSpec

    if obj is None:
        return SSpec.all()
    return SSpec(
        obj.get("variant", S_ALL),
        tuple(class_from_json(field, c) for c in obj.get("classes", ())),
        tuple(class_from_json(field, c) for c in obj.get("excluded", ())),
    )


def truant_report_to_json(report):
    return {
        "field": field_to_json(report.form.field),
        "form": form_to_json(report.form),
        "S": sspec_to_json(report.S),
        "searched_norm_bound": report.searched_norm_bound,
        "truant_norm": report.truant_norm,
        "truants": [class_to_json(c) for c in report.truants],
        "canonical_truant": class_to_json(report.canonical_truant) if report.canonical_truant else None,
    }


def witness_to_json(w):
    out = {
        "result": "witness",
        "field": field_to_json(w.alpha.field),
        "alpha": class_to_json(w.alpha),
        "X": w.X,
        "witness_form": form_to_json(w.witness_form),
        "escalation_trail": [class_to_json(c) for c in w.escalation_trail],
        "verified_bound": w.verified_bound,
        "status": w.status,
    }
    if w.start_recipe:
        out["start_recipe"] = w.start_recipe
    if w.notes:
        out["notes"] = list(w.notes)
    return out


def witness_from_json(obj):
    """CriticalWitness from its document; the form is re-validated."""
    from .criterion import CriticalWitness

    try:
        field = field_from_json(obj["field"])
        X = obj["X"]
        if X not in X_KINDS:
            raise WireException("Unknown lattice kind", X)
        return CriticalWitness(
            class_from_json(field, obj["alpha"]),
            X,
            form_from_json(field, obj["witness_form"]),
            tuple(class_from_json(field, c) for c in obj.get("escalation_trail", ())),
            int_from_json(obj["verified_bound"]),
            obj.get("status", ""),
            obj.get("start_recipe", ""),
            tuple(obj.get("notes", ())),
        )
    except (TypeError, KeyError) as ex:
        raise WireException("Malformed witness document", repr(ex)) from ex


def outcome_to_json(outcome):
    """Witness, escalation failure or no-witness result."""
    from .criterion import CriticalWitness, EscalationFailure

    if isinstance(outcome, CriticalWitness):
        return witness_to_json(outcome)
    if isinstance(outcome, EscalationFailure):
        return {
            "result": "escalation-failure",
            "field": field_to_json(outcome.alpha.field),
            "alpha": class_to_json(outcome.alpha),
            "X": outcome.X,
            "start_form": form_to_json(outcome.start_form),
            "last_form": form_to_json(outcome.last_form),
            "escalation_trail": [class_to_json(c) for c in outcome.escalation_trail],
            "verified_bound": outcome.verified_bound,
            "steps": outcome.steps,
            "reason": outcome.reason,
        }
    out = {
        "result": "no-witness",
        "field": field_to_json(outcome.alpha.field),
        "alpha": class_to_json(outcome.alpha),
        "X": outcome.X,
        "reason": outcome.reason,
        "conclusive": outcome.conclusive,
        "attempts": list(outcome.attempts),
    }
    if outcome.square_witness is not None:
        out["square_witness"] = element_to_json(outcome.square_witness)
    if outcome.notes:
        out["notes"] = list(outcome.notes)
    return out


def _closure_to_json(report):
    if report is None:
        return None
    return {
        "conjugation_closed": report.conjugation_closed,
        "conjugation_violations": [class_to_json(c) for c in report.conjugation_violations],
        "unit_closed": report.unit_closed,
        "unit_violations": [class_to_json(c) for c in report.unit_violations],
        "even": report.even,
        "pairs": [[class_to_json(a), class_to_json(b)] for a, b in report.pairs],
        "skipped": report.skipped,
    }


def candidate_to_json(candidate, with_witnesses=True):
    out = {
        "field": field_to_json(candidate.field),
        "X": candidate.X,
        "norm_bound": candidate.norm_bound,
        "verify_bound": candidate.verify_bound,
        "summary": candidate.summary,
        "classes": [class_to_json(c) for c in candidate.classes],
        "undecided": [outcome_to_json(o) for o in candidate.undecided],
        "excluded": [outcome_to_json(o) for o in candidate.excluded],
        "closure": _closure_to_json(candidate.closure),
    }
    if with_witnesses:
        out["witnesses"] = [witness_to_json(w) for w in candidate.witnesses]
    return out


def check_to_json(result):
    out = {"holds": result.holds, "tier": result.tier}
    if result.witness is not None:
        out["witness"] = element_to_json(result.witness)
    if result.failed_m is not None:
        out["m"] = result.failed_m
    return out


def hypothesis_to_json(field, report):
    failures = [check_to_json(r) for r in report.factors if not r.holds]
    return {
        "field": field_to_json(field),
        "n": report.n,
        "kind": report.kind,
        "holds": report.holds,
        "dominated_integrality": check_to_json(report.dominated),
        "factor_condition": {"holds": not failures, "failures": failures},
        "conclusion": list(report.conclusion),
    }


def tree_to_json(root, stats):
    from .ztree import format_matrix, iter_nodes

    nodes = []
    for node in sorted(iter_nodes(root), key=lambda nd: nd.node_id):
        nodes.append({
            "id": node.node_id,
            "rank": node.rank,
            "M": [list(row) for row in node.matrix],
            "form": format_matrix(node.matrix),
            "truant": node.truant,
            "children": [child.node_id for child in node.children],
        })
    return {
        "kind": stats.kind,
        "max_rank": stats.max_rank,
        "probe_bound": stats.probe_bound,
        "nodes_per_rank": list(stats.nodes_per_rank),
        "truants": list(stats.truants),
        "universal_leaves": stats.universal_leaves,
        "nodes": nodes,
    }
