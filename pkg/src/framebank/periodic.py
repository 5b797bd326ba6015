"""Periodic (block-circulant) model on Z_L and its FFT-diagonalized solves.

Periodizing the generators over Z_L makes the frame operator a Hermitian
block circulant of block size a, which the DFT along the block index turns
into K = L / a independent a x a Hermitian systems. For L > 4s those blocks
are exactly samples of the matrix symbol, which yields the spectrum
inclusion used by the periodic error bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .decay import demko_certificate, periodic_error_bound
from .errors import NotAFrameError, PreconditionError
from .finite_section import reference_dual
from .frame_operator import frame_bounds, symbol
from .sequences import PeriodicSeq, periodize

__all__ = ["BlockCirculant", "PeriodicDual", "assemble_circulant",
           "block_diagonalize", "solve_dual_periodic",
           "spectrum_inclusion_check", "compare_periodic_vs_fs",
           "janssen_periodization_check", "periodic_frame_matrix"]

_SINGULAR_TOL = 1e-12


@dataclass(frozen=True)
class BlockCirculant:
    """Hermitian block circulant stored by its first block column."""

    L: int
    a: int
    blocks: np.ndarray  # shape (K, a, a); blocks[t] = rows t*a..t*a+a-1, cols 0..a-1

    @property
    def K(self):
        return self.L // self.a

    def to_dense(self):
        out = np.zeros((self.L, self.L), dtype=complex)
        for r in range(self.K):
            for t in range(self.K):
                out[r * self.a:(r + 1) * self.a, t * self.a:(t + 1) * self.a] = \
                    self.blocks[(r - t) % self.K]
        return out


@dataclass(frozen=True)
class PeriodicDual:
    L: int
    duals: tuple  # M PeriodicSeq
    spectrum_lo: float
    spectrum_hi: float


def _check_period(sys, L):
    L = int(L)
    if L % sys.a != 0:
        raise PreconditionError(
            "block size a={} must divide the period L={}".format(sys.a, L))
    if L <= 4 * sys.s:
        raise PreconditionError(
            "need L > 4s so the corner wrap bands stay clear of the main band "
            "(L={}, s={})".format(L, sys.s))
    return L


def periodic_frame_matrix(sys_a, periodic_generators, L):
    """Dense frame operator on Z_L of generators given as PeriodicSeq."""
    K = L // sys_a
    S = np.zeros((L, L), dtype=complex)
    k = np.arange(L)
    for pg in periodic_generators:
        G = np.empty((L, K), dtype=complex)
        for n in range(K):
            G[:, n] = pg.values[(k - n * sys_a) % L]
        S += G @ G.conj().T
    return S


def assemble_circulant(sys, L):
    """Frame operator of the periodized system, stored by first block column."""
    L = _check_period(sys, L)
    pgs = [periodize(g, L) for g in sys.generators]
    S = periodic_frame_matrix(sys.a, pgs, L)
    K = L // sys.a
    blocks = np.stack([S[t * sys.a:(t + 1) * sys.a, 0:sys.a] for t in range(K)])
    return BlockCirculant(L=L, a=sys.a, blocks=blocks)


def block_diagonalize(C):
    """DFT of the first block column: B_j = sum_t C_t exp(-2 pi i j t / K)."""
    B = np.fft.fft(C.blocks, axis=0)
    herm_defect = np.max(np.abs(B - np.conj(np.transpose(B, (0, 2, 1)))))
    if herm_defect > 1e-12 * (1.0 + np.max(np.abs(B))):
        raise PreconditionError(
            "DFT blocks deviate from Hermitian by {:.3e}".format(herm_defect))
    return 0.5 * (B + np.conj(np.transpose(B, (0, 2, 1))))


def _block_solve(C, rhs_values, B=None):
    """Solve the block-circulant system for one right-hand side on Z_L."""
    if B is None:
        B = block_diagonalize(C)
    v = rhs_values.reshape(C.K, C.a)
    vhat = np.fft.fft(v, axis=0)
    yhat = np.stack([np.linalg.solve(B[j], vhat[j]) for j in range(C.K)])
    return np.fft.ifft(yhat, axis=0).reshape(C.L)


def solve_dual_periodic(sys, L):
    """Exact duals of the periodized system via K independent a x a solves."""
    C = assemble_circulant(sys, L)
    B = block_diagonalize(C)
    eigs = np.concatenate([np.linalg.eigvalsh(B[j]) for j in range(C.K)])
    lo, hi = float(np.min(eigs)), float(np.max(eigs))
    if lo <= _SINGULAR_TOL:
        raise NotAFrameError(
            "periodized system is not a frame at L={} "
            "(smallest block eigenvalue {:.3e})".format(L, lo))
    duals = []
    for g in sys.generators:
        rhs = periodize(g, L).values
        duals.append(PeriodicSeq(L, _block_solve(C, rhs, B=B)))
    return PeriodicDual(L=int(L), duals=tuple(duals), spectrum_lo=lo, spectrum_hi=hi)


@dataclass(frozen=True)
class SpectrumReport:
    L: int
    A: float
    B: float
    eps: float
    lo: float
    hi: float
    violations: tuple  # ((j, eigenvalue), ...)

    @property
    def ok(self):
        return len(self.violations) == 0


def spectrum_inclusion_check(sys, L, grid=None, eps=1e-8):
    """Every eigenvalue of every DFT block must lie in [A - eps, B + eps]."""
    fb = frame_bounds(symbol(sys), grid)
    C = assemble_circulant(sys, L)
    B = block_diagonalize(C)
    violations = []
    lo, hi = math.inf, -math.inf
    for j in range(C.K):
        for mu in np.linalg.eigvalsh(B[j]):
            mu = float(mu)
            lo, hi = min(lo, mu), max(hi, mu)
            if not (fb.A - eps <= mu <= fb.B + eps):
                violations.append((j, mu))
    return SpectrumReport(L=C.L, A=fb.A, B=fb.B, eps=eps, lo=lo, hi=hi,
                          violations=tuple(violations))


def compare_periodic_vs_fs(sys, N, N_ref=None, grid=None, ref=None, cert=None):
    """Per-channel ||P_N gamma - periodic dual|| next to the a-priori bound.

    Uses a large-section reference as proxy for the biinfinite dual; the
    proxy's own bound belongs in the caller's tolerance budget. The window
    [-N, N] has length L = 2N + 1, so a must divide 2N + 1. Returns
    ConvergenceRow records; cond_N is the spectral ratio of the circulant.
    """
    from .finite_section import ConvergenceRow

    N = int(N)
    if N <= 3 * sys.s:
        raise PreconditionError("N must exceed 3s (N={}, s={})".format(N, sys.s))
    L = 2 * N + 1
    if L % sys.a != 0:
        raise PreconditionError(
            "a={} does not divide 2N+1={}; pick N with a | 2N+1".format(sys.a, L))
    if N_ref is None:
        N_ref = max(4 * N, 150)
    if cert is None:
        fb = frame_bounds(symbol(sys), grid)
        cert = demko_certificate(fb.A, fb.B, sys.s, grid=fb.grid)
    bound = periodic_error_bound(cert, N)
    if ref is None:
        ref = reference_dual(sys, N_ref)
    per = solve_dual_periodic(sys, L)
    rows = []
    for m in range(sys.M):
        diff = ref.duals[m].window(-N, N) - per.duals[m].window(-N, N)
        rows.append(ConvergenceRow(
            N=N, channel=m, measured_err=float(np.linalg.norm(diff)),
            bound=bound, cond_N=per.spectrum_hi / per.spectrum_lo,
            lam=cert.lam))
    return rows


def janssen_periodization_check(sys, L, N_ref=400):
    """Max over channels of ||periodize(gamma_ref, L) - periodic dual||.

    For Gabor systems with L a multiple of lcm(a, M) the duals of the
    periodized frame are exactly the periodized duals, so the result is
    bounded by the reference proxy error alone.
    """
    if sys.gabor is None:
        raise PreconditionError("Janssen periodization check needs a Gabor system")
    lcm = math.lcm(sys.a, sys.gabor.M)
    if int(L) % lcm != 0:
        raise PreconditionError(
            "L={} must be a multiple of lcm(a, M)={}".format(L, lcm))
    L = _check_period(sys, L)
    ref = reference_dual(sys, N_ref)
    per = solve_dual_periodic(sys, L)
    worst = 0.0
    for m in range(sys.M):
        folded = periodize(ref.duals[m], L)
        worst = max(worst, float(np.linalg.norm(folded.values - per.duals[m].values)))
    return worst
