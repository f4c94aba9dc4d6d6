"""Matrix-free descriptor operators and the diagonally dominant shift.

Both descriptors decompose into sparse adjacency, rank-1, and diagonal
pieces, so applying them to an n x d block costs O((n + m) d) and the dense
n x n matrix is never formed:

  modularity       M = (A - d d^T / 2m) / 2m
  norm. Laplacian  M = D^{-1/2} A D^{-1/2} - sqrt(pi) sqrt(pi)^T,
                   pi_i = d_i / sum_j d_j

The shifted operator replaces the diagonal of M with
v_i = 1 + eps + sum_{k != i} |M_ik|, making K strictly diagonally dominant
with dominance margin >= 1 + eps, hence positive definite; applying K to
unit-row blocks expands every row norm above 1.
"""

import numpy as np


class ModularityOperator:
    """Matrix-free modularity descriptor (A - d d^T / 2m) / 2m."""

    kind = "modularity"

    def __init__(self, graph):
        self.graph = graph
        self._adj = graph.adjacency
        self._deg = graph.degrees.astype(float)
        self._two_m = float(graph.degrees.sum())
        if self._two_m <= 0:
            raise ValueError("graph has no edges")
        self._d_over_2m = self._deg / self._two_m

    @property
    def n(self):
        return self.graph.n

    def apply(self, X):
        X = np.asarray(X, dtype=float)
        if X.shape[0] != self.n:
            raise ValueError(f"block has {X.shape[0]} rows, expected {self.n}")
        return (self._adj @ X - np.outer(self._d_over_2m, self._deg @ X)) / self._two_m

    def diagonal(self):
        return -(self._deg / self._two_m) ** 2

    def offdiagonal_abs_sums(self):
        """sum_{k != i} |M_ik| per row, in O(deg(i)) per row.

        Neighbor entries are |1 - d_i d_k / 2m| / 2m; the non-neighbor
        entries are all negative, so their absolute values sum to
        d_i (2m - d_i - sum_{k in N(i)} d_k) / (2m)^2.
        """
        deg, two_m = self._deg, self._two_m
        indptr, indices = self._adj.indptr, self._adj.indices
        neigh_deg = deg[indices]
        row = np.repeat(np.arange(self.n), np.diff(indptr))
        adj_part = np.bincount(row, weights=np.abs(1.0 - deg[row] * neigh_deg / two_m),
                               minlength=self.n)
        neigh_deg_sum = np.bincount(row, weights=neigh_deg, minlength=self.n)
        nonadj_part = deg * (two_m - deg - neigh_deg_sum) / two_m
        return (adj_part + nonadj_part) / two_m


class LaplacianDescriptorOperator:
    """Matrix-free D^{-1/2} A D^{-1/2} - sqrt(pi) sqrt(pi)^T descriptor."""

    kind = "normlap"

    def __init__(self, graph):
        self.graph = graph
        self._adj = graph.adjacency
        deg = graph.degrees.astype(float)
        if (deg <= 0).any():
            raise ValueError("descriptor requires all degrees positive")
        self._inv_sqrt_d = 1.0 / np.sqrt(deg)
        self._sqrt_d = np.sqrt(deg)
        self._two_m = float(deg.sum())
        self._sqrt_pi = np.sqrt(deg / self._two_m)

    @property
    def n(self):
        return self.graph.n

    def apply(self, X):
        X = np.asarray(X, dtype=float)
        if X.shape[0] != self.n:
            raise ValueError(f"block has {X.shape[0]} rows, expected {self.n}")
        Y = self._adj @ (self._inv_sqrt_d[:, None] * X)
        return self._inv_sqrt_d[:, None] * Y - np.outer(self._sqrt_pi, self._sqrt_pi @ X)

    def diagonal(self):
        return -self._sqrt_pi ** 2

    def offdiagonal_abs_sums(self):
        """sum_{k != i} |M_ik| per row via neighbor sums of sqrt degrees."""
        indptr, indices = self._adj.indptr, self._adj.indices
        row = np.repeat(np.arange(self.n), np.diff(indptr))
        sd, isd, two_m = self._sqrt_d, self._inv_sqrt_d, self._two_m
        entries = np.abs(isd[row] * isd[indices] - sd[row] * sd[indices] / two_m)
        adj_part = np.bincount(row, weights=entries, minlength=self.n)
        neigh_sqrt_sum = np.bincount(row, weights=sd[indices], minlength=self.n)
        nonadj_part = sd * (sd.sum() - sd - neigh_sqrt_sum) / two_m
        return adj_part + nonadj_part


def make_descriptor(graph, kind):
    """Build a descriptor operator by name ("modularity" or "normlap")."""
    if kind == "modularity":
        return ModularityOperator(graph)
    if kind == "normlap":
        return LaplacianDescriptorOperator(graph)
    raise ValueError(f"unknown descriptor kind {kind!r}")


def diagonal_shift_vector(op, epsilon=0.0):
    """Shift vector v_i = 1 + epsilon + sum_{k != i} |M_ik|."""
    return 1.0 + epsilon + op.offdiagonal_abs_sums()


class ShiftedOperator:
    """The iteration matrix K: off-diagonal of M with diagonal replaced by v.

    K_ij = M_ij for i != j and K_ii = v_i = 1 + eps + sum_{k != i} |M_ik|,
    so K_ii - sum_{k != i} |K_ik| = 1 + eps > 0 for every row.
    """

    def __init__(self, base, epsilon=0.0):
        if epsilon < 0:
            raise ValueError("shift epsilon must be non-negative")
        self.base = base
        self.epsilon = float(epsilon)
        self.shift = diagonal_shift_vector(base, epsilon)
        # applying M then correcting the diagonal in place implements the
        # replacement K = M - diag(M) + diag(v)
        self._diag_delta = self.shift - base.diagonal()

    @property
    def n(self):
        return self.base.n

    def apply(self, X):
        X = np.asarray(X, dtype=float)
        return self.base.apply(X) + self._diag_delta[:, None] * X

    def sample_columns(self, count, rng):
        """Materialize `count` uniformly sampled columns of K, without replacement."""
        n = self.n
        if not 1 <= count <= n:
            raise ValueError(f"need 1 <= count <= {n}, got {count}")
        idx = rng.choice(n, size=count, replace=False)
        E = np.zeros((n, count))
        E[idx, np.arange(count)] = 1.0
        C = self.base.apply(E)
        C[idx, np.arange(count)] = self.shift[idx]
        return C
