"""Banded Hermitian storage, banded Cholesky factorization and solves.

Storage keeps the main diagonal and the half_bw superdiagonals densely:
bands[d, i] holds entry(i, i + d) in local indices; Hermitian symmetry
supplies the subdiagonals. index_origin maps local row 0 to a global index.
"""

from __future__ import annotations

import numpy as np

from .errors import NotPositiveDefiniteError

__all__ = ["BandedHermitian", "BandedFactor", "banded_cholesky",
           "estimate_cond", "extreme_eigenvalues"]

_PIVOT_REL_TOL = 1e-14


class BandedHermitian:
    """Hermitian matrix with entries vanishing for |k - l| > half_bw."""

    def __init__(self, bands, index_origin=0):
        bands = np.asarray(bands, dtype=complex)
        if bands.ndim != 2:
            raise ValueError("bands must be (half_bw + 1) x dim")
        if np.max(np.abs(bands[0].imag)) > 1e-12 * (1.0 + np.max(np.abs(bands[0]))):
            raise ValueError("diagonal of a Hermitian matrix must be real")
        self.bands = bands
        self.bands[0] = bands[0].real
        self.bands.setflags(write=False)
        self.index_origin = int(index_origin)

    @property
    def dim(self):
        return self.bands.shape[1]

    @property
    def half_bw(self):
        return self.bands.shape[0] - 1

    def entry(self, k, l):
        """Entry at global indices (k, l)."""
        i, j = k - self.index_origin, l - self.index_origin
        if not (0 <= i < self.dim and 0 <= j < self.dim):
            raise IndexError("indices outside the stored section")
        d = j - i
        if abs(d) > self.half_bw:
            return 0.0j
        if d >= 0:
            return complex(self.bands[d, i])
        return complex(np.conj(self.bands[-d, j]))

    def to_dense(self):
        n = self.dim
        out = np.zeros((n, n), dtype=complex)
        out[np.arange(n), np.arange(n)] = self.bands[0]
        for d in range(1, self.half_bw + 1):
            vals = self.bands[d, :n - d]
            out[np.arange(n - d), np.arange(d, n)] = vals
            out[np.arange(d, n), np.arange(n - d)] = np.conj(vals)
        return out

    def matvec(self, x):
        x = np.asarray(x, dtype=complex)
        y = self.bands[0] * x
        n = self.dim
        for d in range(1, self.half_bw + 1):
            if d >= n:
                break
            vals = self.bands[d, :n - d]
            y[:n - d] += vals * x[d:]
            y[d:] += np.conj(vals) * x[:n - d]
        return y


class BandedFactor:
    """Lower-banded Cholesky factor L with L @ L^H equal to the source."""

    def __init__(self, bands, index_origin=0):
        # bands[d, i] = L[i + d, i]; bands[0] is the (real positive) diagonal
        self.bands = bands
        self.index_origin = int(index_origin)

    @property
    def dim(self):
        return self.bands.shape[1]

    @property
    def half_bw(self):
        return self.bands.shape[0] - 1

    def to_dense(self):
        n = self.dim
        out = np.zeros((n, n), dtype=complex)
        for d in range(self.half_bw + 1):
            vals = self.bands[d, :n - d]
            out[np.arange(d, n), np.arange(n - d)] = vals
        return out

    def solve(self, b):
        """Solve (L L^H) x = b by forward and back substitution."""
        n, bw = self.dim, self.half_bw
        y = np.asarray(b, dtype=complex).copy()
        # forward: L y' = b
        for i in range(n):
            lo = max(0, i - bw)
            if lo < i:
                y[i] -= np.dot(self.bands[i - np.arange(lo, i), np.arange(lo, i)],
                               y[lo:i])
            y[i] /= self.bands[0, i]
        # backward: L^H x = y'
        for i in range(n - 1, -1, -1):
            hi = min(n - 1, i + bw)
            if hi > i:
                cols = np.arange(i + 1, hi + 1)
                y[i] -= np.dot(np.conj(self.bands[cols - i, i]), y[cols])
            y[i] /= self.bands[0, i]
        return y


def banded_cholesky(A):
    """Cholesky factor of a banded Hermitian positive definite matrix.

    A pivot at or below _PIVOT_REL_TOL times the largest diagonal entry
    raises NotPositiveDefiniteError.
    """
    n, bw = A.dim, A.half_bw
    L = np.zeros((bw + 1, n), dtype=complex)
    diag_scale = float(np.max(np.abs(A.bands[0]))) if n else 0.0
    if diag_scale == 0.0:
        raise NotPositiveDefiniteError("zero diagonal")
    for j in range(n):
        lo = max(0, j - bw)
        t = np.arange(lo, j)
        piv = A.bands[0, j].real
        if len(t):
            piv -= float(np.sum(np.abs(L[j - t, t]) ** 2))
        if piv <= _PIVOT_REL_TOL * diag_scale:
            raise NotPositiveDefiniteError(
                "pivot {} at row {} is not positive".format(piv, j))
        L[0, j] = np.sqrt(piv)
        for i in range(j + 1, min(j + bw, n - 1) + 1):
            aij = np.conj(A.bands[i - j, j])  # A[i, j] from the stored upper band
            t0 = max(0, i - bw)
            t = np.arange(t0, j)
            if len(t):
                aij -= np.dot(L[i - t, t], np.conj(L[j - t, t]))
            L[i - j, j] = aij / L[0, j]
    return BandedFactor(L, index_origin=A.index_origin)


def extreme_eigenvalues(A):
    """(smallest, largest) eigenvalue of a banded Hermitian matrix.

    Uses the LAPACK banded Hermitian eigensolver directly on the stored
    diagonals; deterministic and accurate to machine precision, which the
    interlacing checks need (power iteration stalls on clustered spectra).
    """
    from scipy.linalg import eigvals_banded

    n, u = A.dim, A.half_bw
    ab = np.zeros((u + 1, n), dtype=complex)
    for d in range(u + 1):
        ab[u - d, d:] = A.bands[d, :n - d]
    w = eigvals_banded(ab, lower=False)
    return float(w[0]), float(w[-1])


def estimate_cond(A):
    """Condition number of a banded HPD matrix from its extreme eigenvalues."""
    lo, hi = extreme_eigenvalues(A)
    if lo <= 0.0:
        raise NotPositiveDefiniteError(
            "smallest eigenvalue {:.3e} is not positive".format(lo))
    return hi / lo
