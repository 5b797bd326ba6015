"""Approximate dual and tight generators of FIR shift-invariant systems.

The package solves S gamma = g by the finite section method on growing
windows and by the periodic (block-circulant) model on Z_L, and evaluates
the explicit exponential convergence-rate and inverse-decay bounds that
certify both approximations.
"""

from .banded import BandedFactor, BandedHermitian, banded_cholesky, estimate_cond
from .decay import (DecayCertificate, demko_certificate, dual_decay_bound,
                    fs_error_bound, invert_bound_for_N, periodic_error_bound,
                    vector_decay_bound, verify_entry_decay)
from .errors import (FrameBankError, InsufficientDataError, InvariantViolation,
                     NotAFrameError, NotPositiveDefiniteError,
                     PreconditionError, SpecFileError)
from .finite_section import (ConvergenceRow, DecayFit, DualSolution,
                             convergence_sweep, dual_distance, fit_decay,
                             reference_dual, solve_dual_fs)
from .frame_operator import (FrameBounds, MatrixSymbol, assemble_banded,
                             frame_bounds, symbol, truncate_section)
from .oracles import (counterexample_matrices, dense_oracle_dual,
                      random_fir_frame, random_gabor_frame)
from .periodic import (BlockCirculant, PeriodicDual, assemble_circulant,
                       block_diagonalize, compare_periodic_vs_fs,
                       janssen_periodization_check, periodic_frame_matrix,
                       solve_dual_periodic, spectrum_inclusion_check)
from .sequences import FiniteSeq, PeriodicSeq, delta, periodize
from .specfile import load_system
from .systems import (CoeffArray, ShiftSystem, analyze, apply_frame_operator,
                      make_gabor_system, make_system, synthesize)
from .tight import TightSolution, tight_convergence, tight_fs, tight_periodic

__version__ = "0.1.0"
