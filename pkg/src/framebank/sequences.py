"""Finitely supported and periodic complex sequences.

A FiniteSeq stores a contiguous window of complex samples together with the
integer index of its first sample; everything outside the window is zero.
Canonical form trims exactly-zero samples at both ends, so equality of
canonical forms is well defined.
"""

from __future__ import annotations

import numpy as np

__all__ = ["FiniteSeq", "PeriodicSeq", "periodize", "delta"]


class FiniteSeq:
    """A finitely supported sequence on the integers.

    Immutable by convention: the stored array must not be mutated after
    construction.
    """

    __slots__ = ("offset", "values")

    def __init__(self, offset, values):
        values = np.asarray(values, dtype=complex)
        if values.ndim != 1:
            raise ValueError("values must be one-dimensional")
        # canonical form: strip exact zeros at both ends
        nz = np.nonzero(values)[0]
        if len(nz) == 0:
            self.offset = 0
            self.values = np.zeros(0, dtype=complex)
        else:
            lo, hi = nz[0], nz[-1]
            self.offset = int(offset) + int(lo)
            self.values = values[lo:hi + 1].copy()
        self.values.setflags(write=False)

    @property
    def is_zero(self):
        return len(self.values) == 0

    @property
    def support(self):
        """(first, last) index of the support, or None for the zero sequence."""
        if self.is_zero:
            return None
        return (self.offset, self.offset + len(self.values) - 1)

    def at(self, k):
        i = int(k) - self.offset
        if 0 <= i < len(self.values):
            return complex(self.values[i])
        return 0.0j

    def window(self, lo, hi):
        """Samples on [lo, hi] as a dense array of length hi - lo + 1."""
        if hi < lo:
            raise ValueError("empty window")
        out = np.zeros(hi - lo + 1, dtype=complex)
        if not self.is_zero:
            a, b = self.support
            wlo, whi = max(lo, a), min(hi, b)
            if wlo <= whi:
                out[wlo - lo:whi - lo + 1] = \
                    self.values[wlo - self.offset:whi - self.offset + 1]
        return out

    def norm(self):
        return float(np.linalg.norm(self.values))

    def inner(self, other):
        """<self, other> = sum_k self(k) * conj(other(k))."""
        if self.is_zero or other.is_zero:
            return 0.0j
        lo = max(self.offset, other.offset)
        hi = min(self.support[1], other.support[1])
        if lo > hi:
            return 0.0j
        a = self.values[lo - self.offset:hi - self.offset + 1]
        b = other.values[lo - other.offset:hi - other.offset + 1]
        return complex(np.sum(a * np.conj(b)))

    def shift(self, n):
        """The translate k -> self(k - n)."""
        return FiniteSeq(self.offset + int(n), self.values)

    def scale(self, c):
        return FiniteSeq(self.offset, self.values * c)

    def __add__(self, other):
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        lo = min(self.offset, other.offset)
        hi = max(self.support[1], other.support[1])
        return FiniteSeq(lo, self.window(lo, hi) + other.window(lo, hi))

    def __sub__(self, other):
        return self + other.scale(-1.0)

    def allclose(self, other, tol=1e-12):
        """Canonical-form equality with per-entry tolerance."""
        if self.is_zero and other.is_zero:
            return True
        lo = min(self.offset, getattr(other, "offset", self.offset))
        his = [s.support[1] for s in (self, other) if not s.is_zero]
        hi = max(his)
        return bool(np.allclose(self.window(lo, hi), other.window(lo, hi),
                                rtol=0.0, atol=tol))

    def __repr__(self):
        return "FiniteSeq(offset={}, values={!r})".format(self.offset, self.values)


def delta(k=0, amp=1.0):
    """The point mass amp * delta_k."""
    return FiniteSeq(k, [amp])


class PeriodicSeq:
    """A sequence on Z_L; residue 0 is aligned with global index 0."""

    __slots__ = ("L", "values", "wrapped")

    def __init__(self, L, values, wrapped=False):
        L = int(L)
        values = np.asarray(values, dtype=complex)
        if L < 1 or values.shape != (L,):
            raise ValueError("need exactly L samples, L >= 1")
        self.L = L
        self.values = values.copy()
        self.values.setflags(write=False)
        self.wrapped = bool(wrapped)

    def at(self, k):
        return complex(self.values[int(k) % self.L])

    def norm(self):
        return float(np.linalg.norm(self.values))

    def window(self, lo, hi):
        """Periodic samples read on the global index window [lo, hi]."""
        idx = np.arange(lo, hi + 1) % self.L
        return self.values[idx]

    def __repr__(self):
        return "PeriodicSeq(L={}, values={!r})".format(self.L, self.values)


def periodize(x, L):
    """Fold a finite sequence onto Z_L: value at residue r is sum_j x(r + jL).

    For L larger than the support width this is plain periodic extension with
    no wrap-around; otherwise overlapping contributions add up and the result
    carries wrapped=True.
    """
    L = int(L)
    if L < 1:
        raise ValueError("period must be positive")
    vals = np.zeros(L, dtype=complex)
    if not x.is_zero:
        for i, v in enumerate(x.values):
            vals[(x.offset + i) % L] += v
    wrapped = (not x.is_zero) and len(x.values) > L
    return PeriodicSeq(L, vals, wrapped=wrapped)
