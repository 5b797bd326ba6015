"""Independent brute-force oracles and seeded random test systems.

Everything here deliberately avoids the fast paths it is used to validate:
dense entrywise assembly with the raw double sum, hand-rolled Gaussian
elimination with partial pivoting, and the classic 4 x 4 Toeplitz matrix
whose circulant completion is singular.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import NotAFrameError, PreconditionError
from .finite_section import DualSolution
from .frame_operator import frame_bounds, symbol
from .sequences import FiniteSeq
from .systems import make_gabor_system, make_system

__all__ = ["counterexample_matrices", "tridiagonal_det", "dense_oracle_dual",
           "gauss_solve", "random_fir_frame", "random_gabor_frame",
           "default_seed"]

_DEFAULT_SEED = 0x9E3779B97F4A7C15


def default_seed():
    """Test seed, overridable through the FRAMEBANK_SEED environment variable."""
    return int(os.environ.get("FRAMEBANK_SEED", _DEFAULT_SEED))


def counterexample_matrices():
    """T = tridiag(-1, 2, -1) of order 4 and its circulant completion.

    T is positive definite, but wrapping the band makes every row of the
    completion sum to zero, so the completion is singular.
    """
    T = np.diag([2.0] * 4) + np.diag([-1.0] * 3, 1) + np.diag([-1.0] * 3, -1)
    PT = T.copy()
    PT[0, 3] = PT[3, 0] = -1.0
    return T, PT


def tridiagonal_det(diag, off, n):
    """Determinant of tridiag(off, diag, off) of order n by the three-term
    recurrence D_j = diag D_{j-1} - off^2 D_{j-2}."""
    prev2, prev1 = 1.0, float(diag)
    for _ in range(n - 1):
        prev2, prev1 = prev1, diag * prev1 - off * off * prev2
    return prev1 if n >= 1 else 1.0


def gauss_solve(A, B):
    """Dense Gaussian elimination with partial pivoting; B may hold several
    right-hand sides as columns."""
    A = np.array(A, dtype=complex)
    B = np.array(B, dtype=complex)
    single = B.ndim == 1
    if single:
        B = B[:, None]
    n = A.shape[0]
    for j in range(n):
        p = j + int(np.argmax(np.abs(A[j:, j])))
        if np.abs(A[p, j]) == 0.0:
            raise NotAFrameError("singular matrix in the dense oracle")
        if p != j:
            A[[j, p]] = A[[p, j]]
            B[[j, p]] = B[[p, j]]
        for i in range(j + 1, n):
            f = A[i, j] / A[j, j]
            if f != 0.0:
                A[i, j:] -= f * A[j, j:]
                B[i] -= f * B[j]
    X = np.zeros_like(B)
    for i in range(n - 1, -1, -1):
        X[i] = (B[i] - A[i, i + 1:] @ X[i + 1:]) / A[i, i]
    return X[:, 0] if single else X


def _raw_section(sys, N):
    """S_N assembled entrywise by the raw double sum, no banded shortcuts."""
    dim = 2 * N + 1
    S = np.zeros((dim, dim), dtype=complex)
    n_span = (N + sys.s) // sys.a + 1
    for g in sys.generators:
        for n in range(-n_span, n_span + 1):
            # samples of g(k - n a) for k in [-N, N]
            shifted = np.array([g.at(k - n * sys.a) for k in range(-N, N + 1)])
            S += np.outer(shifted, np.conj(shifted))
    return S


def dense_oracle_dual(sys, N):
    """Duals from the raw dense section, solved by partial-pivot elimination."""
    N = int(N)
    if 2 * N + 1 > 512:
        raise PreconditionError("dense oracle limited to order 512")
    S = _raw_section(sys, N)
    duals, residuals = [], []
    for g in sys.generators:
        rhs = g.window(-N, N)
        x = gauss_solve(S, rhs)
        residuals.append(float(np.linalg.norm(S @ x - rhs)))
        duals.append(FiniteSeq(-N, x))
    return DualSolution(N=N, duals=tuple(duals), residuals=tuple(residuals))


def _random_generators(rng, M, s):
    gens = []
    for _ in range(M):
        v = rng.standard_normal(2 * s + 1) + 1j * rng.standard_normal(2 * s + 1)
        v /= np.linalg.norm(v)
        gens.append(FiniteSeq(-s, v))
    return gens


def random_fir_frame(rng, a_max=4, s_max=4, odd_a=False, min_ratio=0.05):
    """A seeded random unit-norm FIR frame, by rejection on the frame bounds."""
    while True:
        a_choices = [a for a in range(1, a_max + 1) if (a % 2 == 1 or not odd_a)]
        a = int(rng.choice(a_choices))
        M = a + int(rng.integers(0, 4))
        s = int(rng.integers(max(1, (a + 1) // 2), s_max + 1))
        sys = make_system(_random_generators(rng, M, s), a)
        try:
            fb = frame_bounds(symbol(sys), 256)
        except NotAFrameError:
            continue
        if fb.A > min_ratio * fb.B:
            return sys


def random_gabor_frame(rng, a_max=2, M_max=4, s_max=3, min_ratio=0.05):
    """A seeded random Gabor FIR frame with a unit-norm window."""
    while True:
        a = int(rng.integers(1, a_max + 1))
        M = int(rng.integers(a, M_max + 1))
        s = int(rng.integers(max(1, a // 2 + 1), s_max + 1))
        v = rng.standard_normal(2 * s + 1) + 1j * rng.standard_normal(2 * s + 1)
        v /= np.linalg.norm(v)
        sys = make_gabor_system(FiniteSeq(-s, v), a, M)
        try:
            fb = frame_bounds(symbol(sys), 256)
        except NotAFrameError:
            continue
        if fb.A > min_ratio * fb.B:
            return sys
