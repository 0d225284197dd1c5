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


"""Wire tags, lattice kinds and exit statuses"""

# Field kinds
KIND_RATIONAL = "rational"
KIND_QUADRATIC = "real-quadratic"

# Choice of omega
OMEGA_SQRT = "sqrtD"
OMEGA_HALF = "half(1+sqrtD)"

# Field wire tags
FIELD_Q = "Q"
FIELD_QSQRT = "Qsqrt"

# Form kinds
FORM_DIAG = "diag"
FORM_GRAM = "gram"

# Lattice taxonomy: not necessarily classical, classical, diagonal
X_NC = "nc"
X_CL = "cl"
X_DIAG = "diag"
X_KINDS = (X_NC, X_CL, X_DIAG)

# Subsets S of the square classes
S_ALL = "ALL"
S_LIST = "list"
S_ALL_MINUS = "ALL-minus"
S_SQUAREFREE = "squarefree"
S_RATIONAL = "rational-integers"

# Witness status
STATUS_CERTIFIED = "certified-up-to-bound"

# Process exit statuses
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_INCONCLUSIVE = 3
