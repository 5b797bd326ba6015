"""Explicit decay and convergence-rate constants for banded frame operators.

Given spectral bounds 0 < A <= B of a 2s-banded Hermitian positive definite
operator, the Demko-Moss-Smith theorem yields an entrywise bound
|T^{-1}[k, l]| <= D lambda^{|k - l|}; from it follow the decay bound for the
dual generators and the a-priori error bounds of the finite-section and
periodic approximations. Two distinct constants appear in the literature
route we follow: D (entry decay, also the dual-decay constant) and the larger
C (finite-section error); both are computed here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import PreconditionError

__all__ = ["DecayCertificate", "demko_certificate", "vector_decay_bound",
           "dual_decay_bound", "fs_error_bound", "periodic_error_bound",
           "invert_bound_for_N", "verify_entry_decay", "DecayReport"]


@dataclass(frozen=True)
class DecayCertificate:
    """All explicit constants derived from (A, B, s).

    kappa = B/A, q = (sqrt(kappa)-1)/(sqrt(kappa)+1), lambda = q^(1/(2s)),
    D = (1/A) max{1, (1+sqrt(kappa))^2 / (2 kappa)},
    C = (1/A) max{2 kappa, (1+sqrt(kappa))^2}.
    """

    A: float
    B: float
    s: int
    grid: int | None = None
    kappa: float = field(init=False)
    q: float = field(init=False)
    lam: float = field(init=False)
    D: float = field(init=False)
    C: float = field(init=False)

    def __post_init__(self):
        if not (0.0 < self.A <= self.B):
            raise PreconditionError("need 0 < A <= B")
        if self.s < 1:
            raise PreconditionError("need half support s >= 1")
        kappa = self.B / self.A
        rk = math.sqrt(kappa)
        q = (rk - 1.0) / (rk + 1.0)
        lam = q ** (1.0 / (2 * self.s)) if q > 0.0 else 0.0
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "D",
                           max(1.0, (1.0 + rk) ** 2 / (2.0 * kappa)) / self.A)
        object.__setattr__(self, "C",
                           max(2.0 * kappa, (1.0 + rk) ** 2) / self.A)

    @property
    def tight(self):
        return self.q == 0.0

    def entry_bound(self, d):
        """Bound on |T^{-1}[k, l]| at off-diagonal distance d = |k - l|."""
        d = abs(int(d))
        if self.tight:
            return self.D if d == 0 else 0.0
        return self.D * self.lam ** d


def demko_certificate(A, B, s, grid=None):
    return DecayCertificate(A=float(A), B=float(B), s=int(s), grid=grid)


def vector_decay_bound(cert, c, k):
    """Decay of T^{-1} y for unit y supported in [-s, s]:
    |(T^{-1} y)(k)| <= c lambda^{-s} / (1 - lambda) * lambda^{|k|}."""
    k = abs(int(k))
    if cert.tight:
        # inverse is diagonal: the image keeps the support of y
        return float(c) if k <= cert.s else 0.0
    if cert.lam >= 1.0:
        raise PreconditionError("need lambda < 1")
    return float(c) * cert.lam ** (k - cert.s) / (1.0 - cert.lam)


def dual_decay_bound(cert, k):
    """Decay bound for the dual generators, with the entry-decay constant D."""
    return vector_decay_bound(cert, cert.D, k)


def fs_error_bound(cert, N):
    """A-priori bound sqrt(2) C lambda^N (lambda^s - lambda^(s+1))^(-3) on the
    finite-section error for N > 2s."""
    N = int(N)
    if N <= 2 * cert.s:
        raise PreconditionError(
            "N must exceed 2s (N={}, s={})".format(N, cert.s))
    if cert.tight:
        return 0.0
    gap = cert.lam ** cert.s - cert.lam ** (cert.s + 1)
    return math.sqrt(2.0) * cert.C * cert.lam ** N * gap ** -3


def periodic_error_bound(cert, N):
    """Three times the finite-section bound, valid for N > 3s."""
    N = int(N)
    if N <= 3 * cert.s:
        raise PreconditionError(
            "N must exceed 3s (N={}, s={})".format(N, cert.s))
    return 3.0 * fs_error_bound(cert, N)


def invert_bound_for_N(cert, delta):
    """Smallest N > 2s with fs_error_bound(cert, N) <= delta."""
    delta = float(delta)
    if delta <= 0.0:
        raise PreconditionError("need delta > 0")
    floor_N = 2 * cert.s + 1
    if cert.tight:
        return floor_N
    gap = cert.lam ** cert.s - cert.lam ** (cert.s + 1)
    pref = math.sqrt(2.0) * cert.C * gap ** -3
    N = max(floor_N, math.ceil(math.log(delta / pref) / math.log(cert.lam)))
    while fs_error_bound(cert, N) > delta:
        N += 1
    while N - 1 >= floor_N and fs_error_bound(cert, N - 1) <= delta:
        N -= 1
    return N


@dataclass(frozen=True)
class DecayReport:
    max_ratio: float
    violations: tuple  # ((k, l, entry, bound), ...)

    @property
    def ok(self):
        return len(self.violations) == 0


def verify_entry_decay(Minv, cert, cyclic=False, slack=1e-9):
    """Check every entry of an inverse against the certified decay bound.

    cyclic=False: |M[k, l]| <= D lambda^{|k - l|} (finite-section inverse).
    cyclic=True: distance measured cyclically with period L = order(M), the
    two-branch bound for block-circulant inverses.
    """
    Minv = np.asarray(Minv)
    n = Minv.shape[0]
    k = np.arange(n)
    dist = np.abs(k[:, None] - k[None, :])
    if cyclic:
        dist = np.minimum(dist, n - dist)
    if cert.tight:
        bounds = np.where(dist == 0, cert.D, 0.0)
    else:
        bounds = cert.D * cert.lam ** dist
    mags = np.abs(Minv)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(bounds > 0.0, mags / bounds,
                          np.where(mags == 0.0, 0.0, np.inf))
    bad = np.argwhere(ratios > 1.0 + slack)
    violations = tuple((int(i), int(j), float(mags[i, j]), float(bounds[i, j]))
                       for i, j in bad)
    return DecayReport(max_ratio=float(np.max(ratios)), violations=violations)
