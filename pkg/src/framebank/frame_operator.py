"""Frame-operator assembly, matrix symbol extraction and frame bounds.

The frame operator of an FIR shift-invariant system is a Hermitian, 2s-banded
block Laurent operator; its a x a matrix symbol is a trigonometric matrix
polynomial whose eigenvalue range over the torus gives the frame bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .banded import BandedHermitian
from .errors import NotAFrameError, PreconditionError

__all__ = ["MatrixSymbol", "FrameBounds", "assemble_banded", "truncate_section",
           "symbol", "frame_bounds"]

_FRAME_A_FLOOR = 1e-12


def _operator_entry(sys, k, l):
    """S[k, l] = sum_m sum_n g_m(k - n a) conj(g_m(l - n a)), exact."""
    a, s = sys.a, sys.s
    n_lo = math.ceil((max(k, l) - s) / a)
    n_hi = math.floor((min(k, l) + s) / a)
    acc = 0.0j
    for g in sys.generators:
        for n in range(n_lo, n_hi + 1):
            acc += g.at(k - n * a) * np.conj(g.at(l - n * a))
    return acc


def assemble_banded(sys, row_lo, row_hi):
    """The section of the full operator S on [row_lo, row_hi]^2.

    No boundary truncation is applied to the n-sum; this differs from
    truncate_section only in how the window is interpreted (here the window
    merely selects rows/columns of the biinfinite matrix).
    """
    if row_lo > row_hi:
        raise PreconditionError("need row_lo <= row_hi")
    dim = row_hi - row_lo + 1
    bw = 2 * sys.s
    bands = np.zeros((bw + 1, dim), dtype=complex)
    for d in range(bw + 1):
        for i in range(dim - d):
            bands[d, i] = _operator_entry(sys, row_lo + i, row_lo + i + d)
    return BandedHermitian(bands, index_origin=row_lo)


def truncate_section(sys, N):
    """S_N, the Gram matrix of the truncated elements on [-N, N].

    Truncating all elements to the window leaves the interior entries of S
    untouched, so S_N coincides with the central section of the full operator.
    """
    if N < 0:
        raise PreconditionError("need N >= 0")
    return assemble_banded(sys, -N, N)


@dataclass(frozen=True)
class MatrixSymbol:
    """Fourier coefficients of the a x a symbol of the block Laurent operator."""

    a: int
    coeffs: dict  # j -> a x a complex matrix

    @property
    def J(self):
        return max(abs(j) for j in self.coeffs)

    def eval(self, omega):
        """tau(omega) = sum_j coeffs[j] exp(2 pi i j omega), Hermitized."""
        acc = np.zeros((self.a, self.a), dtype=complex)
        for j, c in self.coeffs.items():
            acc += c * np.exp(2j * np.pi * j * omega)
        return 0.5 * (acc + acc.conj().T)


@dataclass(frozen=True)
class FrameBounds:
    A: float
    B: float
    grid: int


def symbol(sys):
    """Read the symbol coefficients off one block period of the operator."""
    a, s = sys.a, sys.s
    J = math.ceil((2 * s + a - 1) / a)
    row_hi = J * a + a - 1
    sec = assemble_banded(sys, 0, max(row_hi, a - 1))
    coeffs = {}
    for j in range(J + 1):
        block = np.zeros((a, a), dtype=complex)
        for p in range(a):
            for q in range(a):
                if abs(j * a + p - q) <= 2 * s:
                    block[p, q] = sec.entry(j * a + p, q)
        coeffs[j] = block
        if j > 0:
            coeffs[-j] = block.conj().T
    return MatrixSymbol(a=a, coeffs=coeffs)


def _eig_extreme(sym, omega, which):
    w = np.linalg.eigvalsh(sym.eval(omega))
    return float(w[0] if which == "min" else w[-1])


def _refine(sym, omega, h, which):
    """Local refinement of the grid arg-extreme inside [omega - h, omega + h]."""
    sign = 1.0 if which == "min" else -1.0
    res = minimize_scalar(lambda w: sign * _eig_extreme(sym, w, which),
                          bounds=(omega - h, omega + h), method="bounded",
                          options={"xatol": 1e-13})
    return sign * float(res.fun)


def frame_bounds(sym, grid=None):
    """Frame bounds from eigenvalue extrema of the symbol over the torus.

    Samples a uniform omega grid and refines around the arg-min / arg-max;
    the symbol is a trigonometric polynomial of degree J, so the default
    grid of 1024 * J points resolves every extremal basin.
    """
    if grid is None:
        grid = 1024 * max(sym.J, 1)
    grid = int(grid)
    if grid < 64:
        raise PreconditionError("need grid >= 64")
    omegas = np.arange(grid) / grid
    mins = np.array([_eig_extreme(sym, w, "min") for w in omegas])
    maxs = np.array([_eig_extreme(sym, w, "max") for w in omegas])
    i_min, i_max = int(np.argmin(mins)), int(np.argmax(maxs))
    h = 1.0 / grid
    A = min(float(mins[i_min]), _refine(sym, omegas[i_min], h, "min"))
    B = max(float(maxs[i_max]), _refine(sym, omegas[i_max], h, "max"))
    if A <= _FRAME_A_FLOOR:
        raise NotAFrameError(
            "lower symbol eigenvalue {:.3e} on a grid of {} points: "
            "not a frame".format(A, grid))
    return FrameBounds(A=A, B=B, grid=grid)
