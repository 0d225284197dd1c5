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

from unittest import TestCase

import numpy as np

from critset.markers import X_DIAG, X_CL, X_NC
from critset.ring import CritsetException, make_field, is_totally_positive
from critset.elements import class_of
from critset.forms import (
    FormException,
    QForm,
    diag_form,
    gram_form,
    zero_form,
    validate,
    gram_matrix,
    evaluate,
    trace_form,
    represents,
    value_sweep,
    class_list,
    non_represented_up_to,
    is_universal_up_to,
    orthogonal_sum,
    scale_form,
    conjugate_form,
    transform,
    lift_form,
    is_x_form,
)
from critset.shortvec import short_vectors, value_table, ldl_rational, det_int, gram_value

Q = make_field("Q")


def ints(classes):
    return [c.rep.a for c in classes]


class TestValidation(TestCase):
    def test_diag(self):
        form = diag_form(Q, [1, 2, 3])
        self.assertTrue(form.validated)
        self.assertTrue(form.classical)
        self.assertEqual(form.rank, 3)
        self.assertEqual(str(form), "<1,2,3>")
        with self.assertRaises(FormException):
            diag_form(Q, [1, 0])
        with self.assertRaises(FormException):
            diag_form(Q, [1, -2])
        with self.assertRaises(FormException):
            diag_form(Q, [1, 2.0])

    def test_diag_over_quadratic_field(self):
        K = make_field(2)
        with self.assertRaises(FormException) as ctx:
            diag_form(K, [K.one, K.element(1, -1)])
        self.assertIn("embedding 0", ctx.exception.detail)
        with self.assertRaises(FormException):
            diag_form(K, [make_field(3).one])

    def test_gram(self):
        form = gram_form(Q, [[1, 1], [1, 1]])
        self.assertFalse(form.classical)
        self.assertTrue(gram_form(Q, [[1, 2], [2, 3]]).classical)
        with self.assertRaises(FormException):
            gram_form(Q, [[1, 1], [0, 1]])
        with self.assertRaises(FormException):
            gram_form(Q, [[1, 1], [1]])
        with self.assertRaises(FormException) as ctx:
            gram_form(Q, [[1, 3], [3, 1]])
        self.assertIn("leading minor 2", ctx.exception.detail)
        with self.assertRaises(FormException):
            validate(QForm(Q, "triangular", ()))

    def test_gram_over_golden_field(self):
        K = make_field(5)
        form = gram_form(K, [[2, K.omega], [K.omega, 2]])
        self.assertFalse(form.classical)
        self.assertEqual(evaluate(form, (1, 1)), K.element(4, 1))
        # doubled determinant 4 - 4w^2 = -4w
        with self.assertRaises(FormException):
            gram_form(K, [[1, K.element(0, 2)], [K.element(0, 2), 1]])

    def test_unvalidated_rejected(self):
        raw = QForm(Q, "diag", (Q.one,))
        with self.assertRaises(FormException):
            represents(raw, 1)
        with self.assertRaises(FormException):
            value_sweep(raw, 5)

    def test_gram_matrix(self):
        self.assertEqual(gram_matrix(diag_form(Q, [1, 2])), ((Q.one, Q.zero), (Q.zero, Q.element(2))))
        with self.assertRaises(FormException):
            gram_form(Q, [[1, 1], [1, 1]]).coeffs


class TestRepresentation(TestCase):
    def test_three_squares(self):
        form = diag_form(Q, [1, 1, 1])
        self.assertEqual(represents(form, 7), (False, None))
        ok, x = represents(form, 6)
        self.assertTrue(ok)
        self.assertEqual(evaluate(form, x), Q.element(6))
        self.assertEqual(ints(non_represented_up_to(form, None, 30)), [7, 15, 23, 28])

    def test_zero_and_negative_targets(self):
        form = diag_form(Q, [1])
        self.assertEqual(represents(form, 0), (True, (Q.zero,)))
        self.assertEqual(represents(form, -1), (False, None))
        self.assertEqual(represents(zero_form(Q), 1), (False, None))

    def test_non_classical_binary(self):
        form = gram_form(Q, [[1, 1], [1, 1]])
        self.assertEqual(ints(non_represented_up_to(form, None, 6)), [2, 5, 6])
        ok, x = represents(form, 7)
        self.assertTrue(ok)
        self.assertEqual(evaluate(form, x), Q.element(7))

    def test_golden_field_quaternary(self):
        K = make_field(5)
        form = lift_form(diag_form(Q, [1, 1, 3, 3]), K)
        # (7 + sqrt(5))/2
        self.assertEqual(represents(form, K.element(3, 1)), (False, None))
        for n in range(1, 51):
            ok, x = represents(form, n)
            self.assertTrue(ok, n)
            self.assertEqual(evaluate(form, x), K.element(n))

    def test_sum_of_four_squares_golden(self):
        K = make_field(5)
        form = lift_form(diag_form(Q, [1, 1, 1, 1]), K)
        self.assertEqual(non_represented_up_to(form, None, 100), [])
        self.assertTrue(is_universal_up_to(form, None, 100))

    def test_sum_of_squares_over_sqrt2(self):
        K = make_field(2)
        form = lift_form(diag_form(Q, [1, 1, 1]), K)
        # 7 = (1 + sqrt(2))^2 + (1 - sqrt(2))^2 + 1
        ok, x = represents(form, 7)
        self.assertTrue(ok)
        self.assertEqual(evaluate(form, x), K.element(7))
        # no nonzero square lies below 2 + sqrt(2)
        self.assertEqual(represents(form, K.element(2, 1)), (False, None))


class TestSweep(TestCase):
    def __check_agreement(self, form, bound):
        sweep = value_sweep(form, bound)
        for c in class_list(form.field, bound):
            self.assertEqual(c.rep in sweep, represents(form, c.rep)[0], "%s at %s" % (form, c))

    def test_fixed_forms(self):
        K5, K2, K3 = make_field(5), make_field(2), make_field(3)
        forms = [
            diag_form(K5, [1, 2]),
            diag_form(K5, [1, 1, K5.element(2, 1)]),
            gram_form(K5, [[2, K5.omega], [K5.omega, 2]]),
            gram_form(K5, [[1, 1], [1, 2]]),
            diag_form(K2, [1, K2.element(2, 1)]),
            gram_form(K2, [[2, 1], [1, 3]]),
            diag_form(K3, [1, K3.fund_unit]),
            gram_form(Q, [[2, 1, 0], [1, 2, 1], [0, 1, 3]]),
        ]
        for form in forms:
            with self.subTest(form=str(form)):
                self.__check_agreement(form, 20)

    @staticmethod
    def __random_form(rng, K, pool):
        """Random diagonal or Gram form of rank <= 3, redrawn until definite."""
        while True:
            rank = int(rng.integers(1, 4))
            coeffs = [pool[int(i)].rep for i in rng.integers(0, len(pool), size=rank)]
            if rng.random() < 0.5:
                return diag_form(K, coeffs)
            M = [[coeffs[i] if i == j else None for j in range(rank)] for i in range(rank)]
            for i in range(rank):
                for j in range(i + 1, rank):
                    M[i][j] = M[j][i] = K.element(int(rng.integers(-1, 2)), int(rng.integers(-1, 2)))
            try:
                return gram_form(K, M)
            except FormException:
                continue

    def test_random_forms(self):
        rng = np.random.default_rng(29)
        for D in (2, 3, 5):
            K = make_field(D)
            pool = class_list(K, 8)
            for _ in range(20):
                form = self.__random_form(rng, K, pool)
                with self.subTest(form=str(form)):
                    self.__check_agreement(form, 50)

    def test_extended_matches_direct(self):
        K = make_field(5)
        base = diag_form(K, [1, 1])
        grown = value_sweep(base, 30).extended(K.element(2, 1))
        direct = value_sweep(diag_form(K, [1, 1, K.element(2, 1)]), 30)
        for c in class_list(K, 30):
            self.assertEqual(c.rep in grown, c.rep in direct)
        table = value_sweep(diag_form(Q, [1, 1]), 40).extended(3)
        self.assertEqual(
            [n for n in range(1, 41) if Q.element(n) not in table],
            ints(non_represented_up_to(diag_form(Q, [1, 1, 3]), None, 40)),
        )

    def test_short_sweep_rejected(self):
        form = diag_form(Q, [1, 1])
        with self.assertRaises(FormException):
            non_represented_up_to(form, None, 20, value_sweep(form, 10))

    def test_trace_form_positive(self):
        K = make_field(5)
        T = trace_form(gram_form(K, [[2, K.omega], [K.omega, 2]]))
        self.assertEqual(len(T), 4)
        ldl_rational(T)


class TestTransforms(TestCase):
    def test_orthogonal_sum(self):
        f = orthogonal_sum(diag_form(Q, [1]), diag_form(Q, [2]))
        self.assertEqual(f.kind, "diag")
        g = orthogonal_sum(diag_form(Q, [1]), gram_form(Q, [[1, 1], [1, 1]]))
        self.assertEqual(g.kind, "gram")
        self.assertEqual(g.rank, 3)
        self.assertFalse(g.classical)
        with self.assertRaises(FormException):
            orthogonal_sum(diag_form(Q, [1]), diag_form(make_field(2), [1]))

    def test_scale_and_conjugate(self):
        K = make_field(5)
        f = diag_form(K, [1, K.element(2, 1)])
        self.assertEqual(scale_form(f, 2).coeffs, (K.element(2), K.element(4, 2)))
        with self.assertRaises(FormException):
            scale_form(f, K.omega)
        c = conjugate_form(diag_form(K, [K.element(3, 1)]))
        self.assertEqual(c.coeffs, (K.element(4, -1),))
        self.assertEqual(transform(f, "conjugate"), conjugate_form(f))
        self.assertEqual(transform(f, "scale", 3), scale_form(f, 3))
        self.assertEqual(transform(f, "orthogonal_sum", f).rank, 4)
        with self.assertRaises(FormException):
            transform(f, "rotate")

    def test_conjugation_is_equivariant(self):
        K = make_field(5)
        f = diag_form(K, [1, 1, K.element(3, 1)])
        g = conjugate_form(f)
        for c in class_list(K, 25):
            image = class_of(K.element(c.rep.a + c.rep.b, -c.rep.b))
            self.assertEqual(represents(f, c.rep)[0], represents(g, image.rep)[0])

    def test_lift(self):
        K = make_field(2)
        lifted = lift_form(gram_form(Q, [[1, 1], [1, 1]]), K)
        self.assertEqual(lifted.field, K)
        self.assertFalse(lifted.classical)
        with self.assertRaises(FormException):
            lift_form(lifted, make_field(3))

    def test_x_forms(self):
        d = diag_form(Q, [1, 2])
        cl = gram_form(Q, [[1, 2], [2, 3]])
        nc = gram_form(Q, [[1, 1], [1, 1]])
        self.assertEqual([is_x_form(d, X) for X in (X_DIAG, X_CL, X_NC)], [True, True, True])
        self.assertEqual([is_x_form(cl, X) for X in (X_DIAG, X_CL, X_NC)], [False, True, True])
        self.assertEqual([is_x_form(nc, X) for X in (X_DIAG, X_CL, X_NC)], [False, False, True])
        with self.assertRaises(FormException):
            is_x_form(d, "even")


class TestShortVectors(TestCase):
    def test_half_enumeration(self):
        vectors = sorted(short_vectors([[1, 0], [0, 1]], 2))
        self.assertEqual(vectors, [(-1, 1), (0, 1), (1, 0), (1, 1)])
        full = list(short_vectors([[1, 0], [0, 1]], 2, half=False))
        self.assertEqual(len(full), 8)
        exact = list(short_vectors([[1, 0], [0, 1]], 5, value=5))
        self.assertEqual(sorted(exact), [(-2, 1), (-1, 2), (1, 2), (2, 1)])

    def test_values_match_gram(self):
        M = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
        for v in short_vectors(M, 12):
            self.assertLessEqual(gram_value(M, v), 12)
            self.assertNotEqual(v, (0, 0, 0))

    def test_value_table(self):
        table = value_table([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 30)
        self.assertEqual([v for v in range(31) if not table[v]], [7, 15, 23, 28])
        self.assertTrue(table[0])

    def test_indefinite(self):
        with self.assertRaises(CritsetException):
            ldl_rational([[1, 3], [3, 1]])

    def test_det(self):
        self.assertEqual(det_int([[2, 1], [1, 1]]), 1)
        self.assertEqual(det_int([[0, 1], [1, 0]]), -1)
        self.assertEqual(det_int([]), 1)

    def test_totally_positive_values(self):
        K = make_field(2)
        form = diag_form(K, [1, K.element(2, 1)])
        sweep = value_sweep(form, 10)
        self.assertGreater(len(sweep), 1)
        for c in class_list(K, 10):
            if c.rep in sweep:
                self.assertTrue(is_totally_positive(c.rep))
