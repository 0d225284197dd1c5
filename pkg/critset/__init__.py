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


"""Criterion sets and critical elements for quadratic forms over Q and real quadratic fields

Example usage:

K = critset.make_field(5)
form = critset.diag_form(K, [1, 1, 3, 3])
critset.represents(form, K.element(3, 1))      # (False, None)

Q = critset.make_field("Q")
critset.truants(critset.diag_form(Q, [1, 2, 5, 5]), None, 100).truant_norm    # 15

All certificates are bounded: a witness records the norm up to which it was
verified, and "no witness found" proves nothing unless the result is marked
conclusive (a square factor, or an exhausted Z-escalation search).
"""

__version__ = "0.1.0"

from .ring import (
    CritsetException,
    FieldException,
    FieldCtx,
    AlgInt,
    make_field,
    is_totally_positive,
    totally_leq,
    norm_trace,
    divides,
    conjugate,
)
from .elements import (
    SquareClass,
    class_of,
    enumerate_classes,
    elements_dominated_by,
    is_squarefree,
    is_indecomposable,
    indecomposable_classes,
    indec_sequence,
    squarefree_indecomposable_classes,
)
from .forms import (
    FormException,
    QForm,
    diag_form,
    gram_form,
    zero_form,
    validate,
    represents,
    value_sweep,
    non_represented_up_to,
    is_universal_up_to,
    transform,
    lift_form,
)
from .criterion import (
    CriterionException,
    SSpec,
    truants,
    escalate_witness,
    certify_critical,
    criterion_candidates,
    closure_parity_check,
    exception_form,
    check_dominated_integrality,
    check_factor_condition,
    diag_universal_from_candidates,
)
from .ztree import TreeException, build_tree, reduce_form, escalations_of
from .cache import CacheException
from .wire import WireException

__all__ = (
    "__version__",
    "CritsetException",
    "FieldException",
    "FormException",
    "CriterionException",
    "TreeException",
    "CacheException",
    "WireException",
    "FieldCtx",
    "AlgInt",
    "make_field",
    "is_totally_positive",
    "totally_leq",
    "norm_trace",
    "divides",
    "conjugate",
    "SquareClass",
    "class_of",
    "enumerate_classes",
    "elements_dominated_by",
    "is_squarefree",
    "is_indecomposable",
    "indecomposable_classes",
    "indec_sequence",
    "squarefree_indecomposable_classes",
    "QForm",
    "diag_form",
    "gram_form",
    "zero_form",
    "validate",
    "represents",
    "value_sweep",
    "non_represented_up_to",
    "is_universal_up_to",
    "transform",
    "lift_form",
    "SSpec",
    "truants",
    "escalate_witness",
    "certify_critical",
    "criterion_candidates",
    "closure_parity_check",
    "exception_form",
    "check_dominated_integrality",
    "check_factor_condition",
    "diag_universal_from_candidates",
    "build_tree",
    "reduce_form",
    "escalations_of",
)
