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


"""Command-line access to criterion sets, truants, witnesses and escalation trees"""

import argparse
import csv
import io
import json
import logging
from dataclasses import dataclass, field as dc_field, asdict
from sys import stderr, stdin, stdout, exit  # pylint: disable=redefined-builtin

from . import __version__
from .markers import X_KINDS, X_DIAG, X_NC, EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_INCONCLUSIVE
from .ring import CritsetException
from .elements import (
    class_of,
    enumerate_classes,
    indecomposable_classes,
    indecomposable_classes_fast,
    indecomposable_norm_bound,
    indec_sequence,
    is_indecomposable,
    is_squarefree,
)
from .forms import non_represented_up_to, represents, value_sweep
from .criterion import (
    CriticalWitness,
    NoWitness,
    certify_critical,
    check_290_hypotheses,
    check_descent_condition,
    check_dominated_integrality,
    check_factor_condition,
    check_fifteen_hypotheses,
    criterion_candidates,
    diag_universal_from_candidates,
    escalate_witness,
    exception_form,
    truants,
    verify_witness,
)
from .ztree import build_tree, tree_rows, tree_stats, DEFAULT_PROBE_BOUND
from .cache import ResultCache, default_cache_dir
from .wire import (
    candidate_to_json,
    check_to_json,
    class_to_json,
    element_to_json,
    field_to_json,
    form_to_json,
    hypothesis_to_json,
    outcome_to_json,
    parse_element,
    parse_field,
    parse_form,
    parse_sspec,
    truant_report_to_json,
    tree_to_json,
    witness_from_json,
    element_from_json,
    form_from_json,
    WireException,
)

logger = logging.getLogger(__name__)

COMMANDS = (
    "field-info",
    "classes",
    "indec",
    "squarefree",
    "truant",
    "represents",
    "escalate",
    "critical",
    "criterion",
    "exception-form",
    "check-hyp",
    "ztree",
    "verify-witness",
)
__CSV_COMMANDS = frozenset(("classes", "indec", "criterion", "ztree"))
__UNCACHED = frozenset(("verify-witness",))


def __error(*args, **kwargs):
    print(*args, file=stderr, **kwargs)


@dataclass
class RunConfig:
    """Everything one invocation needs; options holds the command's own arguments."""

    command: str
    field: str = "Q"
    X: str = X_DIAG
    norm_bound: object = None
    verify_bound: object = None
    probe_bound: int = DEFAULT_PROBE_BOUND
    max_steps: int = 200
    max_rank: int = 4
    cache_dir: object = None
    use_cache: bool = True
    output_format: str = "json"
    workers: int = 1
    options: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise CritsetException("Unknown command", self.command)
        if self.X not in X_KINDS:
            raise CritsetException("Unknown lattice kind", self.X)
        for name in ("norm_bound", "verify_bound", "probe_bound", "max_steps", "max_rank"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise CritsetException("%s must be positive" % name.replace("_", "-"), value)
        if self.workers < 1:
            raise CritsetException("workers must be at least 1", self.workers)
        if self.norm_bound is not None and self.verify_bound is not None and self.verify_bound < self.norm_bound:
            raise CritsetException("verify-bound must be at least norm-bound", self.verify_bound)
        if self.output_format not in ("json", "csv"):
            raise CritsetException("Unknown output format", self.output_format)
        if self.cache_dir is None:
            self.cache_dir = default_cache_dir()

    def request(self):
        """Canonical description of the computation (cache key material)."""
        out = asdict(self)
        for name in ("cache_dir", "use_cache", "output_format", "workers"):
            del out[name]
        return out


def _field(config):
    return parse_field(config.field)


def _element(field, text):
    text = text.strip()
    if text.startswith("{"):
        return element_from_json(field, _json(text))
    return parse_element(field, text)


def _form(field, text):
    text = text.strip()
    if text.startswith("{"):
        return form_from_json(field, _json(text))
    return parse_form(field, text)


def _json(text):
    try:
        return json.loads(text)
    except ValueError as ex:
        raise WireException("Malformed JSON", str(ex)) from ex


def _opt(config, name):
    value = config.options.get(name)
    if value is None:
        raise CritsetException("--%s is required for %s" % (name.replace("_", "-"), config.command))
    return value


def _field_info(config):
    field = _field(config)
    doc = {"field": field_to_json(field), "name": str(field), "degree": field.degree}
    if not field.is_rational:
        doc.update({
            "discriminant": field.discriminant,
            "omega": field.omega_mode,
            "fundamental_unit": element_to_json(field.fund_unit),
            "fundamental_unit_text": str(field.fund_unit),
            "fundamental_unit_norm": field.fund_unit_norm,
            "indecomposable_norm_bound": indecomposable_norm_bound(field),
        })
    return EXIT_OK, doc


def _classes(config):
    field = _field(config)
    bound = config.norm_bound or 20
    predicate = None
    if config.options.get("squarefree"):
        predicate = lambda c: is_squarefree(c.rep)[0]  # noqa: E731
    classes = enumerate_classes(field, bound, predicate)
    return EXIT_OK, {"field": field_to_json(field), "norm_bound": bound, "classes": [class_to_json(c) for c in classes]}


def _indec(config):
    field = _field(config)
    bound = config.norm_bound or indecomposable_norm_bound(field)
    scan = indecomposable_classes_fast if config.options.get("fast") else indecomposable_classes
    classes = scan(field, bound)
    doc = {
        "field": field_to_json(field),
        "norm_bound": bound,
        "classes": [dict(class_to_json(c), squarefree=is_squarefree(c.rep)[0]) for c in classes],
    }
    if not field.is_rational:
        seq = indec_sequence(field)
        doc["period"] = [element_to_json(b) for b in seq.betas]
        doc["t"] = seq.t
        doc["unit_totally_positive"] = seq.unit_totally_positive
    return EXIT_OK, doc


def _squarefree(config):
    field = _field(config)
    x = _element(field, _opt(config, "element"))
    ok, w = is_squarefree(x)
    indec, parts = is_indecomposable(x)
    doc = {
        "element": element_to_json(x),
        "squarefree": ok,
        "square_witness": element_to_json(w) if w is not None else None,
        "indecomposable": indec,
        "decomposition": [element_to_json(p) for p in parts] if parts else None,
        "class": class_to_json(class_of(x)),
    }
    return EXIT_OK, doc


def _truant(config):
    field = _field(config)
    form = _form(field, _opt(config, "form"))
    S = parse_sspec(field, config.options.get("S"))
    report = truants(form, S, config.norm_bound or 100)
    return EXIT_OK, truant_report_to_json(report)


def _represents(config):
    field = _field(config)
    form = _form(field, _opt(config, "form"))
    target = _element(field, _opt(config, "target"))
    ok, vector = represents(form, target)
    return EXIT_OK, {
        "form": form_to_json(form),
        "target": element_to_json(target),
        "represented": ok,
        "vector": [element_to_json(v) for v in vector] if vector else None,
    }


def _escalate(config):
    field = _field(config)
    start = _form(field, _opt(config, "form"))
    alpha = class_of(_element(field, _opt(config, "alpha")))
    S = parse_sspec(field, config.options.get("S"))
    outcome = escalate_witness(start, alpha, S, config.verify_bound, config.max_steps, config.X)
    status = EXIT_OK if isinstance(outcome, CriticalWitness) else EXIT_INCONCLUSIVE
    return status, outcome_to_json(outcome)


def _critical(config):
    field = _field(config)
    alpha = class_of(_element(field, _opt(config, "alpha")))
    S = parse_sspec(field, config.options.get("S"))
    verify_bound = config.verify_bound or 4 * alpha.norm
    outcome = certify_critical(alpha, config.X, verify_bound, S, config.max_steps)
    if isinstance(outcome, NoWitness) and not outcome.conclusive:
        return EXIT_INCONCLUSIVE, outcome_to_json(outcome)
    return EXIT_OK, outcome_to_json(outcome)


def _criterion(config):
    field = _field(config)
    norm_bound = config.norm_bound or 15
    S = parse_sspec(field, config.options.get("S"))
    candidate = criterion_candidates(
        field, config.X, norm_bound, config.verify_bound, S, config.max_steps, workers=config.workers
    )
    doc = candidate_to_json(candidate)
    if config.options.get("diag_form") and candidate.classes:
        report = diag_universal_from_candidates(candidate, candidate.verify_bound)
        doc["diag_universal"] = {
            "form": form_to_json(report.form),
            "verified_bound": report.verified_bound,
            "universal_up_to_bound": report.universal_up_to_bound,
            "missing": [class_to_json(c) for c in report.missing],
            "rank_bound": report.rank_bound,
        }
    return (EXIT_INCONCLUSIVE if candidate.undecided else EXIT_OK), doc


def _exception_form(config):
    field = _field(config)
    beta = class_of(_element(field, _opt(config, "beta")))
    form = exception_form(beta)
    bound = config.verify_bound or 100
    missing = non_represented_up_to(form, None, bound, value_sweep(form, bound))
    return EXIT_OK, {
        "beta": class_to_json(beta),
        "form": form_to_json(form),
        "verified_bound": bound,
        "missing": [class_to_json(c) for c in missing],
        "misses_exactly_beta": [c.rep for c in missing] == [beta.rep],
    }


def _check_hyp(config):
    field = _field(config)
    kind = config.options.get("kind") or "fifteen"
    n = config.options.get("n") or 15
    if kind == "fifteen":
        return EXIT_OK, hypothesis_to_json(field, check_fifteen_hypotheses(field, n))
    if kind == "290":
        return EXIT_OK, hypothesis_to_json(field, check_290_hypotheses(field, n))
    if kind == "descent":
        X = config.X if config.X != X_DIAG else X_NC
        return EXIT_OK, dict(check_to_json(check_descent_condition(field, X)), X=X)
    if kind == "dominated":
        mode = config.options.get("mode") or "elements"
        return EXIT_OK, dict(check_to_json(check_dominated_integrality(field, n, mode)), n=n, mode=mode)
    if kind == "factor":
        mode = "range" if config.options.get("range") else "single"
        return EXIT_OK, dict(check_to_json(check_factor_condition(field, n, mode)), n=n, bound_mode=mode)
    raise CritsetException("Unknown hypothesis kind", kind)


def _ztree(config):
    root = build_tree(config.X, config.max_rank, config.probe_bound, config.workers)
    stats = tree_stats(root, config.X, config.max_rank, config.probe_bound)
    doc = tree_to_json(root, stats)
    doc["rows"] = [[rank, form, truant] for rank, form, truant in tree_rows(root)]
    return EXIT_OK, doc


def _verify_witness(config):
    source = _opt(config, "witness")
    if source == "-":
        text = stdin.read()
    else:
        try:
            with open(source, "r") as fp:
                text = fp.read()
        except OSError as ex:
            raise CritsetException("Cannot read witness file", str(ex)) from ex
    witness = witness_from_json(_json(text))
    problems = verify_witness(witness, None, config.verify_bound)
    doc = {
        "alpha": class_to_json(witness.alpha),
        "verified_bound": config.verify_bound or witness.verified_bound,
        "valid": not problems,
        "problems": problems,
    }
    return (EXIT_OK if not problems else EXIT_INVALID), doc


__HANDLERS = {
    "field-info": _field_info,
    "classes": _classes,
    "indec": _indec,
    "squarefree": _squarefree,
    "truant": _truant,
    "represents": _represents,
    "escalate": _escalate,
    "critical": _critical,
    "criterion": _criterion,
    "exception-form": _exception_form,
    "check-hyp": _check_hyp,
    "ztree": _ztree,
    "verify-witness": _verify_witness,
}


def _csv_rows(command, doc):
    if command in ("classes", "indec"):
        yield ["rep", "norm"]
        for c in doc["classes"]:
            yield [c["text"], c["norm"]]
    elif command == "criterion":
        yield ["class", "norm", "recipe", "trail_length", "verified_bound", "witness_rank"]
        for w in doc["witnesses"]:
            form = w["witness_form"]
            rank = len(form["coeffs"] if form["kind"] == "diag" else form["M"])
            yield [w["alpha"]["text"], w["alpha"]["norm"], w.get("start_recipe", ""),
                   len(w["escalation_trail"]), w["verified_bound"], rank]
    else:
        yield ["rank", "form", "truant"]
        for rank, form, truant in doc["rows"]:
            yield [rank, form, "" if truant is None else truant]


def render(command, doc, output_format):
    """JSON (sorted keys) or CSV text for a result document."""
    if output_format == "json":
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    for row in _csv_rows(command, doc):
        writer.writerow(row)
    return out.getvalue()


def dispatch(config, out_stream=None):
    """Runs one command and writes its output

    Returns:
        process exit status: 0 ok, 2 invalid input, 3 inconclusive
    """
    if config.output_format == "csv" and config.command not in __CSV_COMMANDS:
        raise CritsetException("csv output is available for classes, indec, criterion and ztree")
    handler = __HANDLERS[config.command]
    if config.command in __UNCACHED:
        status, doc = handler(config)
    else:
        def compute():
            code, document = handler(config)
            return {"status": code, "document": document}

        cache = ResultCache(config.cache_dir, __version__)
        stored, _ = cache.fetch(config.request(), compute, recompute=not config.use_cache)
        status, doc = stored["status"], stored["document"]
    (out_stream or stdout).write(render(config.command, doc, config.output_format))
    return status


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="Q", help="Q, Qsqrt:D or D")
    common.add_argument("--X", default=X_DIAG, choices=X_KINDS, help="lattice kind")
    common.add_argument("--norm-bound", type=int)
    common.add_argument("--verify-bound", type=int)
    common.add_argument("--probe-bound", type=int, default=DEFAULT_PROBE_BOUND)
    common.add_argument("--max-steps", type=int, default=200)
    common.add_argument("--max-rank", type=int, default=4)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--cache-dir", help="default $CRITSET_CACHE or ~/.cache/critset")
    common.add_argument("--no-cache", action="store_true", help="recompute and cross-check stored results")
    common.add_argument("--format", dest="output_format", default="json", choices=("json", "csv"))
    common.add_argument("-o", "--output", help="write to file instead of stdout")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(
        prog="critset", description="Criterion sets and critical elements of quadratic forms"
    )
    parser.add_argument("--version", action="version", version="critset " + __version__)
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name in ("truant", "represents", "escalate"):
            p.add_argument("--form", help="JSON form or diag:c1,c2,... / gram:row;row")
        if name in ("truant", "escalate", "critical", "criterion"):
            p.add_argument("--S", help="ALL, squarefree, rational-integers, list:... or ALL-minus:...")
        if name == "represents":
            p.add_argument("--target", help="JSON element or a+b*w")
        if name in ("escalate", "critical"):
            p.add_argument("--alpha", help="JSON element or a+b*w")
        if name == "squarefree":
            p.add_argument("--element")
        if name == "classes":
            p.add_argument("--squarefree", action="store_true")
        if name == "indec":
            p.add_argument("--fast", action="store_true", help="continued fraction semiconvergents")
        if name == "criterion":
            p.add_argument("--diag-form", action="store_true", help="also verify the diagonal form on the candidates")
        if name == "exception-form":
            p.add_argument("--beta", help="JSON element or a+b*w")
        if name == "check-hyp":
            p.add_argument("--kind", default="fifteen", choices=("fifteen", "290", "descent", "dominated", "factor"))
            p.add_argument("--n", type=int, default=15)
            p.add_argument("--mode", default="elements", choices=("elements", "squares"))
            p.add_argument("--range", action="store_true", help="factor condition for every m <= n")
        if name == "verify-witness":
            p.add_argument("--witness", help="witness JSON file or - for stdin")
    return parser


__GLOBAL = frozenset((
    "command", "field", "X", "norm_bound", "verify_bound", "probe_bound", "max_steps",
    "max_rank", "workers", "cache_dir", "no_cache", "output_format", "output", "verbose",
))


def main(argv=None):
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return EXIT_OK if ex.code == 0 else EXIT_USAGE
    logging.basicConfig(
        stream=stderr,
        level=(logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)],
        format="%(levelname)s %(name)s: %(message)s",
    )
    options = {k: v for k, v in vars(args).items() if k not in __GLOBAL}
    out_file = None
    try:
        config = RunConfig(
            args.command,
            args.field,
            args.X,
            args.norm_bound,
            args.verify_bound,
            args.probe_bound,
            args.max_steps,
            args.max_rank,
            args.cache_dir,
            not args.no_cache,
            args.output_format,
            args.workers,
            options,
        )
        if args.output:
            try:
                out_file = open(args.output, "w", newline="")
            except OSError as ex:
                __error("Failed to open output file for writing: %s" % ex)
                return EXIT_INVALID
        return dispatch(config, out_file)
    except CritsetException as ex:
        __error("critset %s: %s" % (args.command, ex))
        return EXIT_INVALID
    finally:
        if out_file:
            out_file.close()


if __name__ == "__main__":
    exit(main())
