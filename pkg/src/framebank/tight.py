"""Tight generators via the inverse square root of the frame operator.

phi_m = S^{-1/2} g_m turns any shift-invariant frame into a tight one with
bounds A = B = 1. The finite-section path uses a dense Hermitian
eigendecomposition of S_N; the periodic path applies per-block inverse
square roots in the DFT domain, which is exact on Z_L.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotPositiveDefiniteError, PreconditionError
from .finite_section import DecayFit, _r_squared
from .frame_operator import truncate_section
from .periodic import assemble_circulant, block_diagonalize, periodic_frame_matrix
from .sequences import FiniteSeq, PeriodicSeq, delta, periodize
from .systems import apply_frame_operator, make_system

__all__ = ["TightSolution", "tight_fs", "tight_periodic", "tight_convergence"]

_EIG_FLOOR = 1e-12


@dataclass(frozen=True)
class TightSolution:
    size: int  # N for the finite-section path, L for the periodic path
    generators: tuple  # M FiniteSeq or PeriodicSeq
    tightness_defect: float


def _inv_sqrt_hermitian(X):
    """Spectral inverse square root; any eigenvalue at the floor is an error."""
    w, V = np.linalg.eigh(0.5 * (X + X.conj().T))
    if w[0] <= _EIG_FLOOR:
        raise NotPositiveDefiniteError(
            "eigenvalue {:.3e} too small for an inverse square root".format(w[0]))
    return (V * (w ** -0.5)) @ V.conj().T


def _fs_defect(sys, phis):
    """Deviation of the phi-system frame operator from the identity, probed
    on one point mass per shift class (shift covariance covers the rest)."""
    phi_sys = make_system(phis, sys.a)
    worst = 0.0
    for j in range(sys.a):
        probe = delta(j)
        diff = apply_frame_operator(phi_sys, probe) - probe
        if not diff.is_zero:
            worst = max(worst, float(np.max(np.abs(diff.values))))
    return worst


def tight_fs(sys, N, compute_defect=True):
    """phi_m^(N) = S_N^{-1/2} P_N g_m by dense eigendecomposition of S_N."""
    N = int(N)
    if N < sys.s:
        raise PreconditionError("need N >= s so the window covers the generators")
    Sn = truncate_section(sys, N).to_dense()
    R = _inv_sqrt_hermitian(Sn)
    phis = tuple(FiniteSeq(-N, R @ g.window(-N, N)) for g in sys.generators)
    defect = _fs_defect(sys, phis) if compute_defect else float("nan")
    return TightSolution(size=N, generators=phis, tightness_defect=defect)


def tight_periodic(sys, L):
    """Per-block inverse square roots in the DFT domain; exact on Z_L."""
    C = assemble_circulant(sys, L)
    B = block_diagonalize(C)
    roots = np.stack([_inv_sqrt_hermitian(B[j]) for j in range(C.K)])
    phis = []
    for g in sys.generators:
        v = periodize(g, L).values.reshape(C.K, C.a)
        vhat = np.fft.fft(v, axis=0)
        phat = np.einsum("jpq,jq->jp", roots, vhat)
        phis.append(PeriodicSeq(L, np.fft.ifft(phat, axis=0).reshape(C.L)))
    S_phi = periodic_frame_matrix(sys.a, phis, C.L)
    defect = float(np.max(np.abs(S_phi - np.eye(C.L))))
    return TightSolution(size=int(L), generators=tuple(phis),
                         tightness_defect=defect)


def tight_convergence(sys, N_list, N_ref):
    """err(N) = max_m ||phi_m^(N_ref) - phi_m^(N)||, with an exponential fit.

    Returns (rows, fit) where rows are (N, err) pairs and fit carries the
    fitted decay rate per unit N and the R^2 of log err against N.
    """
    N_list = sorted(int(N) for N in N_list)
    for N in N_list:
        if not (2 * sys.s < N < N_ref / 2):
            raise PreconditionError(
                "every N must satisfy 2s < N < N_ref / 2 (N={})".format(N))
    ref = tight_fs(sys, N_ref, compute_defect=False)
    rows = []
    for N in N_list:
        sol = tight_fs(sys, N, compute_defect=False)
        err = max((ref.generators[m] - sol.generators[m]).norm()
                  for m in range(sys.M))
        rows.append((N, err))
    errs = np.array([e for _, e in rows])
    Ns = np.array([float(N) for N, _ in rows])
    positive = errs > 0.0
    if np.count_nonzero(positive) >= 3:
        coef, r2 = _r_squared(Ns[positive], np.log(errs[positive]))
        fit = DecayFit(model="exp", rate=float(np.exp(coef[0])), quality=r2)
    else:
        # errors at the noise floor: treat as converged with rate 0
        fit = DecayFit(model="exp", rate=0.0, quality=1.0)
    return rows, fit
