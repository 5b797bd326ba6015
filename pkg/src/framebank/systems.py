"""Shift-invariant systems and the analysis / synthesis / frame operators.

A system is a family g_{m,n}(k) = g_m(k - n a) built from M generators and a
time-shift step a (an M-channel filter bank with hop size a). All operators
here are evaluated by exact finite sums on finitely supported data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .sequences import FiniteSeq

__all__ = ["ShiftSystem", "CoeffArray", "make_system", "make_gabor_system",
           "analyze", "synthesize", "apply_frame_operator"]

_NORM_TOL = 1e-12


@dataclass(frozen=True)
class GaborInfo:
    window: FiniteSeq
    M: int


@dataclass(frozen=True)
class ShiftSystem:
    """M generators plus a shift step; gabor is set for modulated systems."""

    a: int
    generators: tuple
    s: int
    normalized: bool
    gabor: GaborInfo | None = None

    @property
    def M(self):
        return len(self.generators)


@dataclass(frozen=True)
class CoeffArray:
    """Analysis coefficients c[m, n] on a finite index rectangle."""

    n_lo: int
    data: np.ndarray  # shape (M, n_count)

    @property
    def n_hi(self):
        return self.n_lo + self.data.shape[1] - 1

    def at(self, m, n):
        j = n - self.n_lo
        if 0 <= j < self.data.shape[1]:
            return complex(self.data[m, j])
        return 0.0j


def _half_support(g):
    lo, hi = g.support
    return max(abs(lo), abs(hi))


def make_system(generators, a):
    """Build a ShiftSystem, computing the half support s and checking norms."""
    a = int(a)
    if a < 1:
        raise PreconditionError("shift step a must be >= 1")
    generators = list(generators)
    if not generators:
        raise PreconditionError("need at least one generator")
    for g in generators:
        if g.is_zero:
            raise PreconditionError("an all-zero generator cannot belong to a frame")
    s = max(_half_support(g) for g in generators)
    normalized = all(abs(g.norm() - 1.0) <= _NORM_TOL for g in generators)
    return ShiftSystem(a=a, generators=tuple(generators), s=s,
                       normalized=normalized)


def make_gabor_system(g, a, M):
    """Generators g_m(k) = exp(2 pi i m k / M) g(k) from a single window."""
    a, M = int(a), int(M)
    if M < 1:
        raise PreconditionError("channel count M must be >= 1")
    if a < 1:
        raise PreconditionError("shift step a must be >= 1")
    if g.is_zero:
        raise PreconditionError("window must be nonzero")
    ks = np.arange(g.offset, g.offset + len(g.values))
    gens = [FiniteSeq(g.offset, np.exp(2j * np.pi * m * ks / M) * g.values)
            for m in range(M)]
    base = make_system(gens, a)
    return ShiftSystem(a=base.a, generators=base.generators, s=base.s,
                       normalized=base.normalized, gabor=GaborInfo(window=g, M=M))


def _auto_n_range(sys, f):
    """All n for which some g_{m,n} can overlap the support of f."""
    if f.is_zero:
        return (0, 0)
    flo, fhi = f.support
    return (math.ceil((flo - sys.s) / sys.a), math.floor((fhi + sys.s) / sys.a))


def analyze(sys, f, n_lo=None, n_hi=None):
    """Coefficients c[m, n] = <f, g_{m,n}>.

    Pass n_lo=n_hi=None to cover exactly the n with possible overlap.
    """
    if n_lo is None or n_hi is None:
        n_lo, n_hi = _auto_n_range(sys, f)
    if n_lo > n_hi:
        raise PreconditionError("need n_lo <= n_hi")
    data = np.zeros((sys.M, n_hi - n_lo + 1), dtype=complex)
    for m, g in enumerate(sys.generators):
        for j, n in enumerate(range(n_lo, n_hi + 1)):
            data[m, j] = f.inner(g.shift(n * sys.a))
    return CoeffArray(n_lo=n_lo, data=data)


def synthesize(sys, c):
    """sum_{m,n} c[m, n] g_{m,n}, canonicalized."""
    out = FiniteSeq(0, [])
    for m, g in enumerate(sys.generators):
        for j in range(c.data.shape[1]):
            v = c.data[m, j]
            if v != 0.0:
                out = out + g.shift((c.n_lo + j) * sys.a).scale(v)
    return out


def apply_frame_operator(sys, f):
    """S f = sum_{m,n} <f, g_{m,n}> g_{m,n} with the finite overlapping n."""
    if f.is_zero:
        return FiniteSeq(0, [])
    return synthesize(sys, analyze(sys, f))
