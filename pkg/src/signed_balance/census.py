"""Triangle census by sign type, with node and pair projections.

Triangle types are keyed by the number of negative edges: type 1 has none,
type 2 one, type 3 two, type 4 three.  Types 1 and 3 are the balanced ones
(sign product +1).

Counting is done with matrix products of the indicator matrices P and N
(M = P + N):

    total = tr(M^3)/6      c1 = tr(P^3)/6       c2 = tr(PPN)/2
    c3 = tr(NNP)/2         c4 = tr(N^3)/6

plus the per-node diagonals and per-pair Hadamard forms of the same
products.  Two execution paths give identical integers:

* dense: float64 BLAS products.  Products of 0/1 matrices stay integral and
  below 2^53 for any feasible n, so float64 arithmetic is exact and every
  result is checked to be integral before casting back to int64.
* sparse (n above the storage threshold): scipy CSR products in int64.

A brute-force O(n^3) enumeration is provided as the oracle.
"""

from dataclasses import dataclass
from itertools import combinations

import numpy as np
import scipy.sparse as sp

from .errors import ConfigError

BRUTE_FORCE_CAP = 64


@dataclass(frozen=True)
class TriangleCensus:
    n: int
    total: int
    c1: int
    c2: int
    c3: int
    c4: int

    @property
    def balanced(self):
        return self.c1 + self.c3

    @property
    def by_type(self):
        return (self.c1, self.c2, self.c3, self.c4)

    def to_dict(self):
        return {
            "n": self.n,
            "total": self.total,
            "c1": self.c1,
            "c2": self.c2,
            "c3": self.c3,
            "c4": self.c4,
            "balanced": self.balanced,
        }


@dataclass(frozen=True)
class NodeProjection:
    """Per-node triangle counts: t_i, b_i, and the four per-type arrays."""

    triangles: np.ndarray
    balanced: np.ndarray
    by_type: tuple

    def for_target(self, target):
        if target == "balanced":
            return self.balanced
        return self.by_type[_type_index(target)]


@dataclass(frozen=True)
class PairProjection:
    """Per-pair counts over third nodes; entry (i,j) is 0 unless A_ij != 0."""

    triangles: object
    balanced: object
    by_type: tuple

    def for_target(self, target):
        if target == "balanced":
            return self.balanced
        return self.by_type[_type_index(target)]


@dataclass(frozen=True)
class CensusBundle:
    census: TriangleCensus
    node: NodeProjection
    pair: PairProjection | None


TARGETS = ("balanced", "type1", "type2", "type3", "type4")


def _type_index(target):
    if target not in ("type1", "type2", "type3", "type4"):
        raise ConfigError(f"unknown target {target!r}, expected one of {TARGETS}")
    return int(target[-1]) - 1


def _as_count(x):
    """Exactness guard for the float64 path."""
    f = float(x)
    if not f.is_integer():
        raise ArithmeticError(f"census value {f} is not integral")
    return int(f)


def _dense_bundle(a, with_pairs):
    n = a.shape[0]
    p = (a == 1).astype(np.float64)
    nn = (a == -1).astype(np.float64)
    p2 = p @ p
    n2 = nn @ nn
    pn = p @ nn
    pnnp = pn + pn.T
    m = p + nn
    m2 = p2 + n2 + pnnp

    census = TriangleCensus(
        n=n,
        total=_as_count(np.einsum("ij,ij->", m2, m) / 6),
        c1=_as_count(np.einsum("ij,ij->", p2, p) / 6),
        c2=_as_count(np.einsum("ij,ij->", p2, nn) / 2),
        c3=_as_count(np.einsum("ij,ij->", n2, p) / 2),
        c4=_as_count(np.einsum("ij,ij->", n2, nn) / 6),
    )

    def diag(x, y):
        return np.einsum("ij,ij->i", x, y)

    t_i = diag(m2, m) / 2
    n1 = diag(p2, p) / 2
    n2_ = (diag(pnnp, p) + diag(p2, nn)) / 2
    n3 = (diag(pnnp, nn) + diag(n2, p)) / 2
    n4 = diag(n2, nn) / 2
    node = NodeProjection(
        triangles=_int_array(t_i),
        balanced=_int_array(n1 + n3),
        by_type=tuple(_int_array(x) for x in (n1, n2_, n3, n4)),
    )

    pair = None
    if with_pairs:
        q1 = p * p2
        q2 = p * pnnp + nn * p2
        q3 = p * n2 + nn * pnnp
        q4 = nn * n2
        pair = PairProjection(
            triangles=_int_array(m * m2),
            balanced=_int_array(q1 + q3),
            by_type=tuple(_int_array(x) for x in (q1, q2, q3, q4)),
        )
    return CensusBundle(census=census, node=node, pair=pair)


def _int_array(x):
    out = np.rint(x).astype(np.int64)
    if not np.array_equal(out, x):
        raise ArithmeticError("census array is not integral")
    return out


def _sparse_bundle(adj, with_pairs):
    n = adj.n
    sm = adj.sign_matrices()
    p = sm.pos.astype(np.int64)
    nn = sm.neg.astype(np.int64)
    m = (p + nn).tocsr()
    p2 = (p @ p).tocsr()
    n2 = (nn @ nn).tocsr()
    pn = (p @ nn).tocsr()
    pnnp = (pn + pn.T).tocsr()
    m2 = (p2 + n2 + pnnp).tocsr()

    def tr(x, y):
        return int(x.multiply(y).sum())

    census = TriangleCensus(
        n=n,
        total=tr(m2, m) // 6,
        c1=tr(p2, p) // 6,
        c2=tr(p2, nn) // 2,
        c3=tr(n2, p) // 2,
        c4=tr(n2, nn) // 6,
    )

    def diag(x, y):
        return np.asarray(x.multiply(y).sum(axis=1)).ravel().astype(np.int64)

    t_i = diag(m2, m) // 2
    n1 = diag(p2, p) // 2
    n2_ = (diag(pnnp, p) + diag(p2, nn)) // 2
    n3 = (diag(pnnp, nn) + diag(n2, p)) // 2
    n4 = diag(n2, nn) // 2
    node = NodeProjection(
        triangles=t_i,
        balanced=n1 + n3,
        by_type=(n1, n2_, n3, n4),
    )

    pair = None
    if with_pairs:
        q1 = p.multiply(p2).tocsr()
        q2 = (p.multiply(pnnp) + nn.multiply(p2)).tocsr()
        q3 = (p.multiply(n2) + nn.multiply(pnnp)).tocsr()
        q4 = nn.multiply(n2).tocsr()
        pair = PairProjection(
            triangles=m.multiply(m2).tocsr(),
            balanced=(q1 + q3).tocsr(),
            by_type=(q1, q2, q3, q4),
        )
    return CensusBundle(census=census, node=node, pair=pair)


def full_census(adj, with_pairs=True):
    """One pass over the matrix products; returns census + projections."""
    if adj.is_dense:
        return _dense_bundle(adj.entries, with_pairs)
    return _sparse_bundle(adj, with_pairs)


def census(adj):
    return full_census(adj, with_pairs=False).census


def node_projection(adj):
    return full_census(adj, with_pairs=False).node


def pair_projection(adj):
    return full_census(adj, with_pairs=True).pair


def brute_force_census(adj, cap=BRUTE_FORCE_CAP):
    """Exhaustive O(n^3) oracle over all node triples."""
    n = adj.n
    if n > cap:
        raise ConfigError(f"brute force capped at n={cap}, got n={n}")
    a = adj.to_dense()
    counts = [0, 0, 0, 0]
    total = 0
    node_t = np.zeros(n, dtype=np.int64)
    node_by = np.zeros((4, n), dtype=np.int64)
    pair_t = np.zeros((n, n), dtype=np.int64)
    pair_by = np.zeros((4, n, n), dtype=np.int64)
    for i, j, k in combinations(range(n), 3):
        e1, e2, e3 = int(a[i, j]), int(a[j, k]), int(a[i, k])
        if e1 == 0 or e2 == 0 or e3 == 0:
            continue
        negs = int(e1 < 0) + int(e2 < 0) + int(e3 < 0)
        # cross-check: balanced iff the sign product is +1
        assert (negs % 2 == 0) == (e1 * e2 * e3 > 0)
        total += 1
        counts[negs] += 1
        for v in (i, j, k):
            node_t[v] += 1
            node_by[negs, v] += 1
        for u, v in ((i, j), (j, k), (i, k)):
            pair_t[u, v] += 1
            pair_t[v, u] += 1
            pair_by[negs, u, v] += 1
            pair_by[negs, v, u] += 1
    census_ = TriangleCensus(
        n=n, total=total, c1=counts[0], c2=counts[1], c3=counts[2], c4=counts[3]
    )
    node = NodeProjection(
        triangles=node_t,
        balanced=node_by[0] + node_by[2],
        by_type=tuple(node_by),
    )
    pair = PairProjection(
        triangles=pair_t,
        balanced=pair_by[0] + pair_by[2],
        by_type=tuple(pair_by),
    )
    return CensusBundle(census=census_, node=node, pair=pair)
