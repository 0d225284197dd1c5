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


"""Escalation trees of positive definite Z-forms (diagonal, classical or any)

A node holds a form in canonical reduced M-encoding and its truant. Children
of a node with truant t are the forms spanned by the node and one new vector
of value t, up to isometry. Truants strictly increase along every path.

Example usage:

root = build_tree("cl", 3, probe_bound=128)
collect_truants(root, 3)          # {1, 2, 3, 5, 6, 7, 10, 14, 15}
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations, product
from math import gcd, isqrt

from .markers import X_DIAG, X_CL, X_KINDS
from .ring import CritsetException, make_field
from .forms import diag_form, gram_form
from .shortvec import bareiss_minors, det_int, gram_value, short_vectors, value_table

__all__ = (
    "TreeException",
    "EscalationNode",
    "TreeStats",
    "reduce_form",
    "truant_of",
    "escalations_of",
    "build_tree",
    "collect_truants",
    "tree_rows",
    "tree_stats",
    "iter_nodes",
    "format_matrix",
    "find_truant_form",
    "search_truant",
    "as_qform",
)

logger = logging.getLogger(__name__)

MAX_REDUCED_RANK = 5
DEFAULT_PROBE_BOUND = 2000
__FIRST_PROBE = 16


class TreeException(CritsetException):
    """Raised for forms the tree cannot handle (rank above 5, indefinite input)."""


@dataclass
class EscalationNode:
    matrix: tuple
    truant: object
    children: list = dc_field(default_factory=list)
    node_id: int = 0

    @property
    def rank(self):
        return len(self.matrix)

    def form_string(self):
        return format_matrix(self.matrix)


@dataclass(frozen=True)
class TreeStats:
    kind: str
    max_rank: int
    probe_bound: int
    nodes_per_rank: tuple
    truants: tuple
    truants_per_rank: tuple
    universal_leaves: int


def format_matrix(M):
    """Diagonal forms print as <a,b,..>, others as gram[row;row]."""
    n = len(M)
    if all(M[i][j] == 0 for i in range(n) for j in range(n) if i != j):
        return "<%s>" % ",".join(str(M[i][i]) for i in range(n))
    return "gram[%s]" % ";".join(",".join(str(e) for e in row) for row in M)


def _is_positive_definite(M):
    n = len(M)
    doubled = [[2 * M[i][j] if i == j else M[i][j] for j in range(n)] for i in range(n)]
    minors = bareiss_minors(doubled, lambda a, b: a // b)
    return len(minors) == n and all(m > 0 for m in minors)


def _gram_of(M, basis):
    """M-encoding of the form restricted to the given basis vectors."""
    n = len(basis)
    G = [[0] * n for _ in range(n)]
    for i in range(n):
        G[i][i] = gram_value(M, basis[i])
        for j in range(i + 1, n):
            # Q(u+v) - Q(u) - Q(v) = 2B(u, v)
            both = tuple(a + b for a, b in zip(basis[i], basis[j]))
            G[i][j] = G[j][i] = gram_value(M, both) - G[i][i] - gram_value(M, basis[j])
    return G


def _greedy(M):
    """Pairwise size reduction; returns an equivalent matrix with small diagonal."""
    n = len(M)
    basis = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    changed = True
    while changed:
        changed = False
        G = _gram_of(M, basis)
        for i, j in product(range(n), repeat=2):
            if i == j or abs(G[i][j]) <= G[i][i]:
                continue
            # e_j -> e_j - r e_i with r the nearest integer to B(e_i, e_j) / Q(e_i)
            r = (2 * G[i][j] + 2 * G[i][i]) // (4 * G[i][i])
            if r:
                basis[j] = tuple(b - r * a for a, b in zip(basis[i], basis[j]))
                changed = True
                break
    return _gram_of(M, basis)


def _extendible(vectors, n):
    """The vectors extend to a basis of Z^n: gcd of maximal minors is 1."""
    k = len(vectors)
    g = 0
    for cols in combinations(range(n), k):
        g = gcd(g, det_int([[v[c] for c in cols] for v in vectors]))
        if g == 1:
            return True
    return False


def _off_diagonal(G):
    n = len(G)
    return tuple(G[i][j] for i in range(n) for j in range(i + 1, n))


def reduce_form(M):
    """Canonical representative of the isometry class of a Z-form of rank <= 5

    Among all bases, takes the lexicographically least diagonal, then the
    least off-diagonal part (row by row) over those bases and sign changes.
    Only vectors with value up to the largest diagonal entry of a greedily
    reduced basis (5/4 of it in rank 5) need to be considered.

    Raises:
        TreeException: rank above 5 or not positive definite
    """
    n = len(M)
    if n > MAX_REDUCED_RANK:
        raise TreeException("Canonical reduction is limited to rank 5", n)
    if n == 0:
        return ()
    M = [list(row) for row in M]
    if not _is_positive_definite(M):
        raise TreeException("Form is not positive definite", format_matrix(M))
    G = _greedy(M)
    top = max(G[i][i] for i in range(n))
    if n == 5:
        top = 5 * top // 4
    vectors = sorted(short_vectors(G, top), key=lambda v: (gram_value(G, v), v))
    values = [gram_value(G, v) for v in vectors]
    best_diag = []
    bases = []

    def search(chosen, diag, start_value):
        k = len(chosen)
        if k == n:
            if not best_diag:
                best_diag.extend(diag)
            bases.append(list(chosen))
            return
        for v, val in zip(vectors, values):
            if val < start_value:
                continue
            if best_diag and val != best_diag[k]:
                if val > best_diag[k]:
                    return
                continue
            if v in chosen or not _extendible(chosen + [v], n):
                continue
            search(chosen + [v], diag + [val], val)
            if best_diag and diag + [val] != best_diag[: k + 1]:
                return

    search([], [], 0)
    best = None
    for basis in bases:
        for signs in product((1, -1), repeat=n - 1):
            signed = [basis[0]] + [tuple(s * x for x in v) for s, v in zip(signs, basis[1:])]
            H = _gram_of(G, signed)
            key = _off_diagonal(H)
            if best is None or key < best[0]:
                best = (key, H)
    return tuple(tuple(row) for row in best[1])


def truant_of(M, probe_bound=DEFAULT_PROBE_BOUND):
    """Least positive integer not represented, searched by doubling up to
    probe_bound; None when everything up to probe_bound is represented."""
    if not M:
        return 1
    bound = min(__FIRST_PROBE, probe_bound)
    while True:
        table = value_table([list(row) for row in M], bound)
        for v in range(1, bound + 1):
            if not table[v]:
                return v
        if bound >= probe_bound:
            return None
        bound = min(2 * bound, probe_bound)


def _cross_terms(M, t, kind):
    """Candidate (m_0, ..., m_{n-1}) with m_j = 2B(e_j, e_new), m_j^2 <= 4 M_jj t."""
    ranges = []
    for j in range(len(M)):
        if kind == X_DIAG:
            ranges.append((0,))
            continue
        r = isqrt(4 * M[j][j] * t)
        step = 2 if kind == X_CL else 1
        ranges.append(tuple(m for m in range(-r, r + 1) if m % step == 0))
    for ms in product(*ranges):
        first = next((m for m in ms if m), 0)
        if first >= 0:
            yield ms


def _child_matrices(M, truant, kind):
    """Reduced, pairwise inequivalent escalations of M by truant, in canonical order."""
    if kind not in X_KINDS:
        raise TreeException("Unknown lattice kind", kind)
    n = len(M)
    seen = set()
    for ms in _cross_terms(M, truant, kind):
        child = [list(row) + [ms[i]] for i, row in enumerate(M)]
        child.append(list(ms) + [truant])
        if not _is_positive_definite(child):
            continue
        seen.add(reduce_form(child))
    return sorted(seen, key=lambda G: (tuple(G[i][i] for i in range(n + 1)), _off_diagonal(G)))


def escalations_of(node, kind, probe_bound=DEFAULT_PROBE_BOUND):
    """Children of a node: every positive definite escalation by its truant,
    up to isometry, each with its own truant probed to probe_bound

    The children are fresh nodes (node_id 0, no children); build_tree numbers
    and shares them.

    Raises:
        TreeException: unknown kind, or the node has no truant to escalate by
    """
    if node.truant is None:
        raise TreeException("Node has no truant below the probe bound", node.form_string())
    return [
        EscalationNode(G, truant_of(G, probe_bound))
        for G in _child_matrices(node.matrix, node.truant, kind)
    ]


def _expand_job(args):
    M, truant, kind, probe_bound = args
    return [(child.matrix, child.truant) for child in escalations_of(EscalationNode(M, truant), kind, probe_bound)]


def build_tree(kind, max_rank, probe_bound=DEFAULT_PROBE_BOUND, workers=1):
    """Breadth-first escalation tree from the zero form

    Nodes reached along different paths are shared, so each rank lists every
    escalator up to isometry once. Nodes of rank max_rank are not expanded.
    """
    if kind not in X_KINDS:
        raise TreeException("Unknown lattice kind", kind)
    if max_rank > MAX_REDUCED_RANK:
        raise TreeException("Canonical reduction is limited to rank 5", max_rank)
    root = EscalationNode((), 1, node_id=0)
    layer = [root]
    next_id = 1
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for rank in range(max_rank):
            parents = [node for node in layer if node.truant is not None]
            jobs = [(node.matrix, node.truant, kind, probe_bound) for node in parents]
            results = pool.map(_expand_job, jobs) if pool else map(_expand_job, jobs)
            found = {}
            for parent, children in zip(parents, results):
                for G, truant in children:
                    node = found.get(G)
                    if node is None:
                        node = found[G] = EscalationNode(G, truant, node_id=next_id)
                        next_id += 1
                    parent.children.append(node)
            layer = sorted(found.values(), key=lambda nd: nd.node_id)
            logger.info("rank %d: %d %s escalators", rank + 1, len(layer), kind)
    finally:
        if pool:
            pool.shutdown()
    return root


def iter_nodes(root):
    seen = set()
    stack = [root]
    while stack:
        node = stack.pop()
        if node.node_id in seen:
            continue
        seen.add(node.node_id)
        yield node
        stack.extend(reversed(node.children))


def collect_truants(root, max_rank=None):
    """Truants of all nodes with rank <= max_rank (default every node)."""
    return {
        node.truant
        for node in iter_nodes(root)
        if node.truant is not None and (max_rank is None or node.rank <= max_rank)
    }


def tree_rows(root):
    """(rank, form string, truant) for every node, by rank then canonical form."""
    rows = [(node.rank, node.matrix, node.truant) for node in iter_nodes(root)]
    rows.sort(key=lambda r: (r[0], tuple(r[1][i][i] for i in range(r[0])), _off_diagonal(r[1])))
    return [(rank, format_matrix(M), truant) for rank, M, truant in rows]


def tree_stats(root, kind, max_rank, probe_bound):
    nodes = list(iter_nodes(root))
    per_rank = [0] * (max_rank + 1)
    truants = [set() for _ in range(max_rank + 1)]
    for node in nodes:
        per_rank[node.rank] += 1
        if node.truant is not None:
            truants[node.rank].add(node.truant)
    universal = sum(1 for node in nodes if node.truant is None)
    return TreeStats(
        kind,
        max_rank,
        probe_bound,
        tuple(per_rank),
        tuple(sorted(set().union(*truants))),
        tuple(tuple(sorted(t)) for t in truants),
        universal,
    )


def as_qform(M):
    """The Z-form as a validated QForm over Q (diagonal when M is)."""
    Q = make_field("Q")
    n = len(M)
    if all(M[i][j] == 0 for i in range(n) for j in range(n) if i != j):
        return diag_form(Q, [M[i][i] for i in range(n)])
    return gram_form(Q, M)


@lru_cache(maxsize=None)
def search_truant(n, kind, max_rank=MAX_REDUCED_RANK):
    """Escalation-tree search for a Z-form of the given kind with truant exactly n

    Only nodes with truant below n are expanded, so the search is finite. The
    search is exhausted when no node of rank max_rank still has a truant below
    n; for the classical and non-classical kinds every lattice with truant n
    contains such an escalator, so an exhausted search without a hit shows
    that no lattice of that kind has truant n.

    Returns:
        (matrix or None, exhausted)
    """
    if kind not in X_KINDS:
        raise TreeException("Unknown lattice kind", kind)
    layer = [((), 1)]
    for rank in range(max_rank + 1):
        for M, truant in layer:
            if truant == n:
                logger.debug("rank %d %s escalator with truant %d: %s", rank, kind, n, format_matrix(M))
                return M, False
        open_nodes = [(M, truant) for M, truant in layer if truant is not None and truant < n]
        if not open_nodes:
            return None, True
        if rank == max_rank:
            return None, False
        found = {}
        for M, truant in open_nodes:
            for G in _child_matrices(M, truant, kind):
                if G not in found:
                    found[G] = truant_of(G, n)
        layer = sorted(found.items(), key=lambda item: (tuple(item[0][i][i] for i in range(rank + 1)), _off_diagonal(item[0])))
    return None, False


def find_truant_form(n, kind, max_rank=MAX_REDUCED_RANK):
    """QForm over Q of the given kind with truant exactly n, or None."""
    M, _ = search_truant(n, kind, max_rank)
    return None if M is None else as_qform(M)
