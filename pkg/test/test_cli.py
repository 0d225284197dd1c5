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

from sys import path
import os

# Add project_root to sys.path
path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

import json
from glob import glob
from io import StringIO
from tempfile import TemporaryDirectory
from unittest import TestCase, skipUnless
from unittest.mock import patch

from critset.__main__ import main
from critset.markers import EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_INCONCLUSIVE
from critset.ring import make_field
from critset.forms import diag_form
from critset.elements import class_of
from critset.cache import ResultCache, CacheException, request_key
from critset.criterion import escalate_witness, certify_critical
from critset.wire import (
    WireException,
    parse_element,
    parse_form,
    parse_field,
    parse_sspec,
    outcome_to_json,
    witness_from_json,
    form_to_json,
    form_from_json,
    int_from_json,
    int_to_json,
)

try:
    import jsonschema
except ImportError:  # pragma: no cover
    jsonschema = None

SCHEMAS = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", "schemas"))


class CliTestBase(TestCase):
    def setUp(self):
        self.__tmp = TemporaryDirectory()
        self.tmp = self.__tmp.name
        self.cache_dir = os.path.join(self.tmp, "cache")

    def tearDown(self):
        self.__tmp.cleanup()

    def run_cli(self, *args, output="out.txt"):
        """(exit status, output text) for critset with a private cache."""
        target = os.path.join(self.tmp, output)
        with patch("sys.stderr", new_callable=StringIO):
            status = main(list(args) + ["--cache-dir", self.cache_dir, "-o", target])
        text = ""
        if os.path.exists(target):
            with open(target, "r") as fp:
                text = fp.read()
        return status, text

    def run_json(self, *args):
        status, text = self.run_cli(*args)
        return status, json.loads(text)


class TestCommands(CliTestBase):
    def test_truant(self):
        status, doc = self.run_json("truant", "--form", "diag:1,2,5,5", "--norm-bound", "30")
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(doc["truant_norm"], 15)
        self.assertEqual(doc["canonical_truant"]["text"], "15")

    def test_represents(self):
        status, doc = self.run_json("represents", "--field", "5", "--form", "diag:1,1,3,3", "--target", "3+w")
        self.assertEqual(status, EXIT_OK)
        self.assertFalse(doc["represented"])
        self.assertIsNone(doc["vector"])
        status, doc = self.run_json("represents", "--field", "5", "--form", "diag:1,1,3,3", "--target", "7")
        self.assertTrue(doc["represented"])
        self.assertEqual(len(doc["vector"]), 4)

    def test_field_info(self):
        status, doc = self.run_json("field-info", "--field", "Qsqrt:2")
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(doc["discriminant"], 8)
        self.assertEqual(doc["fundamental_unit"], {"a": 1, "b": 1})
        self.assertEqual(doc["fundamental_unit_norm"], -1)

    def test_classes_csv(self):
        status, text = self.run_cli("classes", "--field", "5", "--norm-bound", "5", "--format", "csv")
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(text.splitlines(), ["rep,norm", "1,1", "2,4", "2+1*w,5"])

    def test_indec(self):
        status, doc = self.run_json("indec", "--field", "2", "--fast")
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(doc["t"], 2)
        self.assertEqual([c["text"] for c in doc["classes"]], ["1", "2+1*w"])

    def test_squarefree(self):
        status, doc = self.run_json("squarefree", "--field", "2", "--element", "2")
        self.assertFalse(doc["squarefree"])
        self.assertIsNotNone(doc["square_witness"])

    def test_critical_exit_codes(self):
        status, doc = self.run_json("critical", "--alpha", "4")
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(doc["result"], "no-witness")
        self.assertTrue(doc["conclusive"])
        status, doc = self.run_json("critical", "--alpha", "15", "--verify-bound", "60")
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(doc["result"], "witness")
        self.assertEqual(doc["start_recipe"], "rational-witness")

    def test_escalation_failure_is_inconclusive(self):
        status, doc = self.run_json("escalate", "--form", "diag:1", "--alpha", "2", "--max-steps", "1")
        self.assertEqual(status, EXIT_INCONCLUSIVE)
        self.assertEqual(doc["result"], "escalation-failure")
        self.assertEqual(doc["steps"], 1)

    def test_criterion(self):
        status, doc = self.run_json("criterion", "--norm-bound", "10", "--verify-bound", "40", "--diag-form")
        self.assertEqual(status, EXIT_OK)
        self.assertEqual([c["text"] for c in doc["classes"]], ["1", "2", "3", "5", "6", "7", "10"])
        self.assertTrue(doc["diag_universal"]["universal_up_to_bound"])
        status, text = self.run_cli("criterion", "--norm-bound", "5", "--format", "csv")
        rows = text.splitlines()
        self.assertEqual(rows[0], "class,norm,recipe,trail_length,verified_bound,witness_rank")
        self.assertEqual([r.split(",")[0] for r in rows[1:]], ["1", "2", "3", "5"])

    def test_exception_form(self):
        status, doc = self.run_json("exception-form", "--field", "2", "--beta", "2+w", "--verify-bound", "16")
        self.assertEqual(status, EXIT_OK)
        self.assertTrue(doc["misses_exactly_beta"])

    def test_check_hyp(self):
        status, doc = self.run_json("check-hyp", "--field", "5", "--kind", "factor", "--n", "2")
        self.assertTrue(doc["holds"])
        self.assertEqual(doc["tier"], "inert")
        status, doc = self.run_json("check-hyp", "--field", "5", "--kind", "descent", "--X", "cl")
        self.assertFalse(doc["holds"])
        self.assertEqual(doc["X"], "cl")

    def test_ztree(self):
        status, doc = self.run_json("ztree", "--X", "nc", "--max-rank", "2", "--probe-bound", "64")
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(doc["truants"], [1, 2, 3, 5])
        status, text = self.run_cli("ztree", "--X", "nc", "--max-rank", "2", "--probe-bound", "64", "--format", "csv")
        self.assertEqual(text.splitlines()[:3], ["rank,form,truant", "0,<>,1", "1,<1>,2"])


class TestErrors(CliTestBase):
    def test_usage(self):
        self.assertEqual(self.run_cli()[0], EXIT_USAGE)
        self.assertEqual(self.run_cli("nosuchcommand")[0], EXIT_USAGE)
        self.assertEqual(self.run_cli("truant", "--X", "even")[0], EXIT_USAGE)

    def test_invalid_input(self):
        self.assertEqual(self.run_cli("field-info", "--field", "4")[0], EXIT_INVALID)
        self.assertEqual(self.run_cli("truant")[0], EXIT_INVALID)
        self.assertEqual(self.run_cli("truant", "--form", "diag:1,-1")[0], EXIT_INVALID)
        self.assertEqual(self.run_cli("criterion", "--norm-bound", "10", "--verify-bound", "5")[0], EXIT_INVALID)
        self.assertEqual(self.run_cli("truant", "--form", "diag:1", "--format", "csv")[0], EXIT_INVALID)
        self.assertEqual(self.run_cli("escalate", "--form", "diag:1", "--alpha", "3")[0], EXIT_INVALID)

    def test_missing_witness_file(self):
        status, _ = self.run_cli("verify-witness", "--witness", os.path.join(self.tmp, "missing.json"))
        self.assertEqual(status, EXIT_INVALID)


class TestCaching(CliTestBase):
    def test_hit_is_identical(self):
        args = ("criterion", "--norm-bound", "7", "--verify-bound", "28")
        first = self.run_cli(*args, output="first.txt")
        self.assertTrue(glob(os.path.join(self.cache_dir, "*", "*")))
        second = self.run_cli(*args, output="second.txt")
        self.assertEqual(first, second)
        third = self.run_cli(*(args + ("--no-cache",)), output="third.txt")
        self.assertEqual(first, third)

    def test_corrupt_entry_is_removed(self):
        cache = ResultCache(self.cache_dir, "test")
        request = {"command": "classes", "norm_bound": 3}
        cache.put(request_key(request, "test"), {"status": 0})
        entry, = glob(os.path.join(self.cache_dir, "*", "*"))
        with open(entry, "wb") as fp:
            fp.write(b"\xff\xfe")
        with self.assertLogs("critset.cache", "WARNING"):
            result, hit = cache.fetch(request, lambda: {"status": 1})
        self.assertFalse(hit)
        self.assertEqual(result, {"status": 1})
        self.assertEqual(cache.fetch(request, lambda: {"status": 2}), ({"status": 1}, True))

    def test_disabled_and_unencodable(self):
        cache = ResultCache(self.cache_dir, "test", enabled=False)
        self.assertEqual(cache.fetch({"n": 1}, lambda: [1]), ([1], False))
        self.assertFalse(os.path.exists(self.cache_dir))
        with self.assertRaises(CacheException):
            ResultCache(self.cache_dir, "test").put("ab" * 32, {"value": object()})

    def test_key_depends_on_version(self):
        self.assertNotEqual(request_key({"n": 1}, "1"), request_key({"n": 1}, "2"))
        self.assertEqual(request_key({"a": 1, "b": 2}, "1"), request_key({"b": 2, "a": 1}, "1"))


class TestWitnessDocuments(CliTestBase):
    def test_verify_round_trip(self):
        Q = make_field("Q")
        outcome = escalate_witness(diag_form(Q, [1]), 2, None, 30)
        path_ = os.path.join(self.tmp, "witness.json")
        with open(path_, "w") as fp:
            json.dump(outcome_to_json(outcome), fp)
        status, doc = self.run_json("verify-witness", "--witness", path_)
        self.assertEqual(status, EXIT_OK)
        self.assertTrue(doc["valid"])
        self.assertEqual(doc["problems"], [])

    def test_tampered_witness(self):
        K = make_field(5)
        outcome = certify_critical(class_of(K.element(2)), "diag", 16)
        doc = outcome_to_json(outcome)
        doc["witness_form"]["coeffs"] = doc["witness_form"]["coeffs"][:-1]
        parsed = witness_from_json(doc)
        path_ = os.path.join(self.tmp, "witness.json")
        with open(path_, "w") as fp:
            json.dump(doc, fp)
        status, result = self.run_json("verify-witness", "--witness", path_)
        self.assertEqual(status, EXIT_INVALID)
        self.assertTrue(result["problems"])
        self.assertEqual(parsed.alpha, outcome.alpha)

    def test_malformed(self):
        with self.assertRaises(WireException):
            witness_from_json({"field": {"type": "Q"}})
        path_ = os.path.join(self.tmp, "broken.json")
        with open(path_, "w") as fp:
            fp.write("{not json")
        self.assertEqual(self.run_cli("verify-witness", "--witness", path_)[0], EXIT_INVALID)


class TestShorthand(TestCase):
    def test_elements(self):
        K = make_field(5)
        self.assertEqual(parse_element(K, "3+w"), K.element(3, 1))
        self.assertEqual(parse_element(K, "3 - 2*w"), K.element(3, -2))
        self.assertEqual(parse_element(K, "w"), K.omega)
        self.assertEqual(parse_element(K, "-w"), -K.omega)
        self.assertEqual(parse_element(K, "-4"), K.element(-4))
        for bad in ("3+x", "w+1", "", "3+ww"):
            with self.assertRaises(WireException):
                parse_element(K, bad)
        with self.assertRaises(WireException):
            parse_element(make_field("Q"), "1+w")

    def test_forms_and_sets(self):
        K = make_field(5)
        form = parse_form(K, "gram:2,1;1,2")
        self.assertEqual(form_from_json(K, form_to_json(form)), form)
        self.assertEqual(parse_form(K, "diag:1,2+w"), diag_form(K, [1, K.element(2, 1)]))
        with self.assertRaises(WireException):
            parse_form(K, "lower:1")
        S = parse_sspec(K, "list:1,2")
        self.assertTrue(S.contains(class_of(K.element(2))))
        self.assertFalse(S.contains(class_of(K.element(2, 1))))
        self.assertFalse(parse_sspec(K, "ALL-minus:2").contains(class_of(K.element(2))))
        with self.assertRaises(WireException):
            parse_sspec(K, "primes")
        self.assertEqual(parse_field("Qsqrt:5"), K)

    def test_big_integers(self):
        self.assertEqual(int_to_json(2 ** 70), str(2 ** 70))
        self.assertEqual(int_from_json(str(2 ** 70)), 2 ** 70)
        self.assertEqual(int_to_json(-5), -5)
        for bad in (True, 1.5, "1e3"):
            with self.assertRaises(WireException):
                int_from_json(bad)


@skipUnless(jsonschema, "jsonschema not installed")
class TestSchemas(CliTestBase):
    def __check(self, schema_name, doc):
        with open(os.path.join(SCHEMAS, schema_name), "r") as fp:
            schema = json.load(fp)
        jsonschema.validate(doc, schema)

    def test_documents_match_schemas(self):
        self.__check("truant.schema.json", self.run_json("truant", "--form", "diag:1,1,1", "--norm-bound", "10")[1])
        self.__check("witness.schema.json", self.run_json("critical", "--alpha", "7", "--verify-bound", "30")[1])
        self.__check("witness.schema.json", self.run_json("critical", "--alpha", "4")[1])
        self.__check(
            "witness.schema.json",
            self.run_json("escalate", "--form", "diag:1", "--alpha", "2", "--max-steps", "1")[1],
        )
        self.__check(
            "candidate.schema.json",
            self.run_json("criterion", "--field", "5", "--norm-bound", "5", "--verify-bound", "20", "--diag-form")[1],
        )
        self.__check("tree.schema.json", self.run_json("ztree", "--X", "cl", "--max-rank", "2", "--probe-bound", "64")[1])
