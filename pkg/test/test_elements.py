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

from critset.ring import CritsetException, FieldException, make_field, divides, conjugate, is_totally_positive, totally_leq
from critset.elements import (
    class_of,
    enumerate_classes,
    elements_dominated_by,
    elements_of_norm,
    is_squarefree,
    decompositions,
    is_indecomposable,
    indecomposable_norm_bound,
    indecomposable_classes,
    indecomposable_classes_fast,
    indec_sequence,
    squarefree_indecomposable_classes,
)


def reps(classes):
    return [(c.rep.a, c.rep.b) for c in classes]


class TestSquareClasses(TestCase):
    def test_rational_classes(self):
        Q = make_field("Q")
        self.assertEqual(class_of(Q.element(6)).rep, Q.element(6))
        self.assertEqual(class_of(Q.element(6)).norm, 6)
        # 4 is not a unit square over Z
        self.assertNotEqual(class_of(Q.element(4)), class_of(Q.one))
        self.assertEqual(reps(enumerate_classes(Q, 5)), [(n, 0) for n in range(1, 6)])
        self.assertEqual(enumerate_classes(Q, 0), [])

    def test_not_totally_positive(self):
        K2 = make_field(2)
        with self.assertRaises(CritsetException):
            class_of(K2.element(1, -1))
        with self.assertRaises(CritsetException):
            class_of(K2.zero)

    def test_unit_squares_collapse(self):
        for D in (2, 3, 5, 6, 7):
            K = make_field(D)
            one = class_of(K.one)
            self.assertEqual(class_of(K.unit_square), one)
            self.assertEqual(class_of(K.unit_square_inverse), one)
            x = K.element(7, 1) if D != 7 else K.element(9, 1)
            if is_totally_positive(x):
                self.assertEqual(class_of(x * K.unit_square ** 3), class_of(x))

    def test_golden_field_classes(self):
        K = make_field(5)
        self.assertEqual(reps(enumerate_classes(K, 5)), [(1, 0), (2, 0), (2, 1)])
        # (5 - sqrt(5))/2 and (5 + sqrt(5))/2 differ by phi^2
        self.assertEqual(class_of(K.element(3, -1)), class_of(K.element(2, 1)))
        # (7 + sqrt(5))/2 and (7 - sqrt(5))/2 are different classes
        plus, minus = class_of(K.element(3, 1)), class_of(K.element(4, -1))
        self.assertNotEqual(plus, minus)
        self.assertEqual(minus.rep, K.element(3, 2))
        self.assertEqual(plus.norm, minus.norm)

    def test_classical_criticals_of_golden_field(self):
        K = make_field(5)
        elements = [
            K.one,
            K.element(2),
            K.element(2, 1),  # (5 + sqrt(5))/2
            K.element(3, 1),  # (7 + sqrt(5))/2
            K.element(4, -1),  # (7 - sqrt(5))/2
            K.element(4, 2),  # 5 + sqrt(5)
            K.element(6, 3),  # 3(5 + sqrt(5))/2
        ]
        classes = {class_of(x) for x in elements}
        self.assertEqual(len(classes), 7)
        self.assertIn(class_of(K.element(3, -1)), classes)
        self.assertEqual({class_of(conjugate(c.rep)) for c in classes}, classes)

    def test_sqrt2_classes(self):
        K = make_field(2)
        self.assertEqual(reps(enumerate_classes(K, 2)), [(1, 0), (2, 1)])
        self.assertEqual(class_of(K.element(2, -1)), class_of(K.element(2, 1)))
        self.assertNotEqual(class_of(K.element(3, 1)), class_of(K.element(3, -1)))

    def test_totally_positive_unit(self):
        K = make_field(3)
        classes = enumerate_classes(K, 1)
        self.assertEqual(reps(classes), [(1, 0), (2, 1)])

    def test_enumeration_is_sorted_and_reduced(self):
        for D in (2, 3, 5, 7, 10):
            K = make_field(D)
            classes = enumerate_classes(K, 40)
            self.assertEqual(classes, sorted(classes))
            self.assertEqual(len({c.rep for c in classes}), len(classes))
            for c in classes:
                self.assertEqual(class_of(c.rep), c)
                self.assertLessEqual(c.norm, 40)

    def test_predicate(self):
        K = make_field(5)
        rational = enumerate_classes(K, 20, lambda c: c.is_rational)
        self.assertTrue(all(c.rep.b == 0 for c in rational))
        self.assertIn(class_of(K.element(4)), rational)


class TestDomination(TestCase):
    def test_dominated_by_three(self):
        K = make_field(5)
        below = elements_dominated_by(K.element(3))
        self.assertIn(K.element(1, 1), below)
        self.assertIn(K.element(2, -1), below)
        self.assertIn(K.element(3), below)
        self.assertEqual(below[0], K.one)
        for x in below:
            self.assertTrue(is_totally_positive(x))
            self.assertTrue(totally_leq(x, K.element(3)))

    def test_decompositions(self):
        Q = make_field("Q")
        self.assertEqual(decompositions(Q.element(3)), [(Q.one, Q.element(2))])
        K = make_field(5)
        self.assertIn((K.one, K.element(1, 1)), decompositions(K.element(2, 1)))

    def test_embedding_just_below_an_integer(self):
        # 2 * eps0 over Q(sqrt(6)): its second embedding is about 0.202
        K = make_field(6)
        eps0 = K.element(5, 2)
        x = K.element(10, 4)
        self.assertEqual(elements_dominated_by(x), [eps0, x])
        self.assertEqual(is_indecomposable(x), (False, (eps0, eps0)))
        self.assertNotIn(class_of(x), indecomposable_classes(K, indecomposable_norm_bound(K)))


class TestSquarefree(TestCase):
    def test_rational(self):
        Q = make_field("Q")
        self.assertEqual(is_squarefree(Q.element(6)), (True, None))
        self.assertEqual(is_squarefree(Q.element(12)), (False, Q.element(2)))
        self.assertEqual(is_squarefree(Q.element(45)), (False, Q.element(3)))

    def test_elements_of_norm(self):
        K = make_field(2)
        found = elements_of_norm(K, 2)
        self.assertTrue(found)
        self.assertTrue(all(abs(w.norm) == 2 for w in found))
        self.assertTrue(any(divides(w * w, K.element(2))[0] for w in found))
        self.assertEqual([w.a for w in elements_of_norm(make_field("Q"), 7)], [7])
        # 2 is inert in Q(sqrt(5))
        self.assertEqual(elements_of_norm(make_field(5), 2), [])

    def test_ramified_two(self):
        K = make_field(2)
        ok, w = is_squarefree(K.element(2))
        self.assertFalse(ok)
        self.assertEqual(abs(w.norm), 2)
        self.assertTrue(divides(w * w, K.element(2))[0])

    def test_inert_two(self):
        K = make_field(5)
        self.assertEqual(is_squarefree(K.element(2)), (True, None))
        self.assertEqual(is_squarefree(K.element(2, 1)), (True, None))
        ok, w = is_squarefree(K.element(4))
        self.assertFalse(ok)
        self.assertEqual(abs(w.norm), 4)

    def test_units_are_squarefree(self):
        K = make_field(3)
        self.assertTrue(is_squarefree(K.fund_unit)[0])


class TestIndecomposables(TestCase):
    def test_small_cases(self):
        K = make_field(5)
        self.assertEqual(is_indecomposable(K.one), (True, None))
        ok, (beta, rest) = is_indecomposable(K.element(2))
        self.assertFalse(ok)
        self.assertEqual(beta + rest, K.element(2))
        self.assertEqual(reps(indecomposable_classes(K, 100)), [(1, 0)])
        self.assertEqual(indecomposable_norm_bound(K), 1)

    def test_sqrt2_and_sqrt3(self):
        K2 = make_field(2)
        self.assertEqual(indecomposable_norm_bound(K2), 2)
        self.assertEqual(reps(indecomposable_classes(K2, 10)), [(1, 0), (2, 1)])
        K3 = make_field(3)
        self.assertEqual(reps(indecomposable_classes(K3, 10)), [(1, 0), (2, 1)])

    def test_fast_path_matches_scan(self):
        for D in (2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 23):
            K = make_field(D)
            bound = indecomposable_norm_bound(K)
            with self.subTest(D=D):
                self.assertEqual(indecomposable_classes_fast(K, bound), indecomposable_classes(K, bound))

    def test_fast_path_rational(self):
        Q = make_field("Q")
        self.assertEqual(reps(indecomposable_classes_fast(Q, 5)), [(1, 0)])

    def test_squarefree_indecomposables(self):
        K = make_field(2)
        self.assertEqual(reps(squarefree_indecomposable_classes(K, 2)), [(1, 0), (2, 1)])
        for D in (6, 7, 10):
            K = make_field(D)
            for c in squarefree_indecomposable_classes(K, indecomposable_norm_bound(K)):
                self.assertTrue(is_squarefree(c.rep)[0])
                self.assertTrue(is_indecomposable(c.rep)[0])


class TestIndecSequence(TestCase):
    def test_periods(self):
        s5 = indec_sequence(make_field(5))
        self.assertEqual(s5.t, 1)
        self.assertEqual(s5.betas, (make_field(5).one,))
        K2 = make_field(2)
        s2 = indec_sequence(K2)
        self.assertEqual(s2.t, 2)
        self.assertEqual(s2.betas, (K2.one, K2.element(2, 1)))
        self.assertFalse(s2.unit_totally_positive)
        K3 = make_field(3)
        s3 = indec_sequence(K3)
        self.assertEqual(s3.t, 2)
        self.assertEqual(s3.betas, (K3.one, K3.element(2, 1)))
        self.assertTrue(s3.unit_totally_positive)

    def test_window_translates_by_unit_square(self):
        K = make_field(7)
        seq = indec_sequence(K, (-3, 8))
        t = seq.t
        for i in range(-3, 8 - t + 1):
            self.assertEqual(seq.beta(i + t), seq.beta(i) * K.unit_square)
        for i in range(-3, 8):
            self.assertTrue(is_indecomposable(seq.beta(i))[0])
        with self.assertRaises(CritsetException):
            seq.beta(9)

    def test_rational_has_no_sequence(self):
        with self.assertRaises(FieldException):
            indec_sequence(make_field("Q"))
        with self.assertRaises(CritsetException):
            indec_sequence(make_field(2), (3, 1))
