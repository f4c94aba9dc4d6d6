"""SVD post-processing of the optimizer output into node embeddings.

For a unit-row solution H the thin SVD H = U S V^T yields two coordinate
systems: spherical rows (U S), which keep unit norm and live on S^{r-1},
and ellipsoidal rows U, which lie on the ellipsoid u S^2 u^T = 1. Only the
Gram matrix rho = H H^T is rotation-invariant, so V is discarded and column
signs are canonicalized for reproducible output.

The effective dimension is the smallest leading-eigenvalue count of rho
capturing a (1 - epsilon) fraction of its trace; truncating there drops at
most epsilon * n of nuclear mass.
"""

from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

RANK_RTOL = 1e-10  # relative singular value threshold for the numerical rank


@dataclass(frozen=True)
class EmbeddingResult:
    """Left singular factor U (n x r), singular values s, and diagnostics.

    total_mass is the full squared Frobenius norm of the solution (equal to
    n for unit-row input), recorded before any rank truncation so that
    effective-dimension bookkeeping stays exact after truncation.
    """

    U: np.ndarray
    s: np.ndarray
    epsilon: float
    d_eff: int
    total_mass: float
    provenance: dict = None

    @property
    def n(self):
        return self.U.shape[0]

    @property
    def rank(self):
        return self.U.shape[1]

    def spherical(self):
        """Unit-norm spherical coordinates: rows of U * s."""
        return self.U * self.s

    def ellipsoidal(self):
        """Ellipsoidal coordinates: rows of U."""
        return self.U

    def rho_spectrum(self):
        """Eigenvalues of (1/n) H H^T, i.e. s^2 / n, non-increasing."""
        return self.s ** 2 / self.n

    def truncation_loss(self):
        """Nuclear mass dropped when keeping only the first d_eff directions."""
        return float(self.total_mass - np.sum(self.s[:self.d_eff] ** 2))


def _canonical_signs(U):
    # flip each column so its largest-magnitude entry is positive; argmax
    # takes the first maximum, which breaks ties toward the lowest index
    r = U.shape[1]
    piv = np.argmax(np.abs(U), axis=0)
    signs = np.where(U[piv, np.arange(r)] < 0, -1.0, 1.0)
    return U * signs


def effective_dimension(s, epsilon, total_mass=None):
    """Smallest r whose leading r values of s^2 sum above (1 - epsilon) * total_mass.

    Accepts either an EmbeddingResult (using its recorded pre-truncation
    mass) or a vector of singular values, whose squares are the eigenvalues
    of the Gram matrix rho; total_mass defaults to their full sum.
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    if isinstance(s, EmbeddingResult):
        s, total_mass = s.s, s.total_mass
    cum = np.cumsum(np.asarray(s, dtype=float) ** 2)
    if total_mass is None:
        total_mass = cum[-1]
    above = cum > (1.0 - epsilon) * total_mass
    if not above.any():
        return len(cum)
    return int(np.argmax(above)) + 1


def svd_embedding(H, epsilon=0.01, provenance=None):
    """Thin SVD of the solution block with deterministic orientation.

    Keeps the numerical rank r = #{s_l > 1e-10 * s_1} columns. The SVD runs
    on the n x d0 block directly, never on the n x n Gram matrix.
    """
    H = np.asarray(H, dtype=float)
    if not np.isfinite(H).all():
        raise ValueError("embedding input contains non-finite values")
    U, s, _ = np.linalg.svd(H, full_matrices=False)
    total_mass = float(np.sum(s ** 2))
    r = int(np.sum(s > RANK_RTOL * s[0]))
    U, s = _canonical_signs(U[:, :r]), s[:r]
    d_eff = effective_dimension(s, epsilon, total_mass)
    return EmbeddingResult(U=U, s=s, epsilon=epsilon, d_eff=d_eff,
                           total_mass=total_mass, provenance=provenance)


def truncate_embedding(result):
    """Keep only the first d_eff columns; drops at most epsilon * total_mass of nuclear norm."""
    d = result.d_eff
    return replace(result, U=result.U[:, :d], s=result.s[:d], d_eff=d)


def write_embedding_csv(result, graph, dest, kind="spherical"):
    """Write "node,coord_1..coord_r" rows in original-label order."""
    if kind == "spherical":
        coords = result.spherical()
    elif kind == "ellipsoidal":
        coords = result.ellipsoidal()
    else:
        raise ValueError(f"unknown embedding kind {kind!r}")
    r = coords.shape[1]
    header = "node," + ",".join(f"coord_{j + 1}" for j in range(r))
    lines = [header]
    for i in range(result.n):
        values = ",".join(repr(float(v)) for v in coords[i])
        lines.append(f"{graph.node_labels[i]},{values}")
    text = "\n".join(lines) + "\n"
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        Path(dest).write_text(text, encoding="utf-8")


def read_embedding_csv(source):
    """Read an embedding CSV back into (node label strings, coordinate matrix)."""
    if hasattr(source, "read"):
        lines = source.read().splitlines()
    else:
        lines = Path(source).read_text(encoding="utf-8").splitlines()
    if not lines or not lines[0].startswith("node,"):
        raise ValueError("not an embedding CSV: missing 'node,coord_...' header")
    labels = []
    rows = []
    for line in lines[1:]:
        if not line.strip():
            continue
        parts = line.split(",")
        labels.append(parts[0])
        rows.append([float(v) for v in parts[1:]])
    return labels, np.array(rows)


def write_spectrum_csv(result, dest):
    """Write "index,eigenvalue_of_rho_over_n" with 1-based index."""
    lines = ["index,eigenvalue_of_rho_over_n"]
    for i, lam in enumerate(result.rho_spectrum(), start=1):
        lines.append(f"{i},{repr(float(lam))}")
    text = "\n".join(lines) + "\n"
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        Path(dest).write_text(text, encoding="utf-8")
