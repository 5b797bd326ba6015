"""Finite-section duals: solve S_N gamma = P_N g_m on growing windows.

The section S_N is banded Hermitian positive definite, so each solve is a
banded Cholesky factorization plus M triangular solves. Convergence against
a far-larger reference section is measured per channel in the l2 norm, with
the reference tail outside the common window included.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .banded import banded_cholesky, estimate_cond
from .decay import demko_certificate, fs_error_bound
from .errors import InsufficientDataError, PreconditionError
from .frame_operator import frame_bounds, symbol, truncate_section
from .sequences import FiniteSeq

__all__ = ["DualSolution", "ConvergenceRow", "DecayFit", "solve_dual_fs",
           "reference_dual", "convergence_sweep", "fit_decay", "dual_distance"]

_TAIL_WARN = 1e-16


@dataclass(frozen=True)
class DualSolution:
    N: int
    duals: tuple  # M FiniteSeq supported in [-N, N]
    residuals: tuple  # per-channel ||S_N gamma - P_N g||
    is_reference: bool = False
    tail_mass: float | None = None  # sum_{|k| > N/2} |gamma(k)|^2, reference only


@dataclass(frozen=True)
class ConvergenceRow:
    N: int
    channel: int
    measured_err: float
    bound: float
    cond_N: float
    lam: float


@dataclass(frozen=True)
class DecayFit:
    model: str  # "exp" or "poly"
    rate: float  # lambda estimate (exp) or alpha estimate (poly)
    quality: float  # R^2 of the winning model


def solve_dual_fs(sys, N):
    """gamma_m^(N) = S_N^{-1} P_N g_m for every channel."""
    N = int(N)
    if N < 0:
        raise PreconditionError("the section half-width N must be nonnegative")
    Sn = truncate_section(sys, N)
    factor = banded_cholesky(Sn)
    duals, residuals = [], []
    for g in sys.generators:
        rhs = g.window(-N, N)
        x = factor.solve(rhs)
        residuals.append(float(np.linalg.norm(Sn.matvec(x) - rhs)))
        duals.append(FiniteSeq(-N, x))
    return DualSolution(N=N, duals=tuple(duals), residuals=tuple(residuals))


def reference_dual(sys, N_ref):
    """A far-larger section used as a stand-in for the biinfinite dual.

    Reports the mass beyond half the window as a trust indicator; a warning
    is emitted when it exceeds 1e-16.
    """
    sol = solve_dual_fs(sys, N_ref)
    half = N_ref // 2
    tail = 0.0
    for d in sol.duals:
        w = np.abs(d.window(-N_ref, N_ref)) ** 2
        k = np.arange(-N_ref, N_ref + 1)
        tail += float(np.sum(w[np.abs(k) > half]))
    if tail > _TAIL_WARN:
        warnings.warn("reference dual tail mass {:.3e} exceeds {:.0e}; "
                      "increase N_ref".format(tail, _TAIL_WARN))
    return DualSolution(N=sol.N, duals=sol.duals, residuals=sol.residuals,
                        is_reference=True, tail_mass=tail)


def dual_distance(ref_dual, approx_dual):
    """||gamma_ref - gamma^(N)|| with gamma^(N) treated as zero outside its
    window, i.e. the full l2 distance of the two finitely stored sequences."""
    return (ref_dual - approx_dual).norm()


def convergence_sweep(sys, N_list, N_ref, grid=None):
    """Measured finite-section error next to the a-priori bound, per (N, m)."""
    if not sys.normalized:
        raise PreconditionError("the convergence bound assumes unit-norm generators")
    N_list = sorted(int(N) for N in N_list)
    for N in N_list:
        if not (2 * sys.s < N < N_ref / 2):
            raise PreconditionError(
                "every N must satisfy 2s < N < N_ref / 2 (N={})".format(N))
    fb = frame_bounds(symbol(sys), grid)
    cert = demko_certificate(fb.A, fb.B, sys.s, grid=fb.grid)
    ref = reference_dual(sys, N_ref)
    rows = []
    for N in N_list:
        sol = solve_dual_fs(sys, N)
        Sn = truncate_section(sys, N)
        cond_N = estimate_cond(Sn)
        bound = fs_error_bound(cert, N)
        for m in range(sys.M):
            rows.append(ConvergenceRow(
                N=N, channel=m,
                measured_err=dual_distance(ref.duals[m], sol.duals[m]),
                bound=bound, cond_N=cond_N, lam=cert.lam))
    return rows


def _r_squared(x, y):
    coef = np.polyfit(x, y, 1)
    resid = y - np.polyval(coef, x)
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    if ss_tot == 0.0:
        return coef, 1.0
    return coef, 1.0 - float(np.sum(resid ** 2)) / ss_tot


def fit_decay(x, rel_floor=1e-13):
    """Fit the tail of |x(k)| to an exponential or a polynomial decay model.

    Least squares of log|x(k)| against |k| (exponential) and against
    log(1 + |k|) (polynomial), over the samples above rel_floor times the
    peak. Ties in R^2 within 0.01 go to the exponential model, the guaranteed
    shape for FIR duals.
    """
    if x.is_zero:
        raise InsufficientDataError("cannot fit the zero sequence")
    ks = np.arange(x.offset, x.offset + len(x.values))
    mags = np.abs(x.values)
    keep = mags > rel_floor * float(np.max(mags))
    ks, mags = np.abs(ks[keep]), mags[keep]
    if len(ks) < 4:
        raise InsufficientDataError("insufficient data: fewer than 4 tail samples")
    logm = np.log(mags)
    coef_e, r2_e = _r_squared(ks.astype(float), logm)
    coef_p, r2_p = _r_squared(np.log1p(ks.astype(float)), logm)
    if r2_e >= r2_p - 0.01:
        return DecayFit(model="exp", rate=float(math.exp(coef_e[0])), quality=r2_e)
    return DecayFit(model="poly", rate=float(-coef_p[0]), quality=r2_p)
