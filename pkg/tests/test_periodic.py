import math

import numpy as np
import pytest

from framebank import (FiniteSeq, NotAFrameError, PreconditionError,
                       assemble_circulant, block_diagonalize,
                       compare_periodic_vs_fs, delta,
                       janssen_periodization_check, make_gabor_system,
                       make_system, periodic_frame_matrix, reference_dual,
                       solve_dual_periodic, spectrum_inclusion_check, symbol,
                       truncate_section)
from framebank.oracles import default_seed, gauss_solve, random_gabor_frame
from framebank.sequences import periodize


def shift_matrix(values, a, L):
    """Columns are the cyclic a-shifts of a length-L vector."""
    K = L // a
    k = np.arange(L)
    G = np.empty((L, K), dtype=complex)
    for n in range(K):
        G[:, n] = values[(k - n * a) % L]
    return G


class TestAssembleCirculant:
    def test_system_b_first_column(self, system_b):
        C = assemble_circulant(system_b, 8)
        col = C.blocks[:, 0, 0]
        assert np.allclose(col, [2.0, 0.5, 0, 0, 0, 0, 0, 0.5], atol=1e-14)

    def test_dense_is_hermitian_circulant(self, system_b):
        dense = assemble_circulant(system_b, 9).to_dense()
        assert np.allclose(dense, dense.conj().T)
        rolled = np.roll(np.roll(dense, 1, axis=0), 1, axis=1)
        assert np.allclose(dense, rolled)

    def test_corner_wrap_only(self, system_b):
        # the circulant agrees with the finite section except in the s x s
        # corners, where the wrapped band reappears
        N = 6
        per = assemble_circulant(system_b, 2 * N + 1).to_dense()
        sec = truncate_section(system_b, N).to_dense()
        diff = np.abs(per - sec)
        assert diff[0, -1] == pytest.approx(0.5)
        assert diff[-1, 0] == pytest.approx(0.5)
        diff[0, -1] = diff[-1, 0] = 0.0
        assert np.max(diff) <= 1e-14

    def test_period_must_be_block_multiple(self, haar):
        with pytest.raises(PreconditionError):
            assemble_circulant(haar, 9)

    def test_period_must_clear_band(self, system_b):
        with pytest.raises(PreconditionError):
            assemble_circulant(system_b, 4)  # L = 4s


class TestBlockDiagonalize:
    def test_system_b_scalar_blocks(self, system_b):
        B = block_diagonalize(assemble_circulant(system_b, 8))
        for j in range(8):
            assert B[j, 0, 0] == pytest.approx(2.0 + np.cos(2 * np.pi * j / 8))

    def test_blocks_sample_symbol(self, haar):
        sym = symbol(haar)
        C = assemble_circulant(haar, 12)
        B = block_diagonalize(C)
        for j in range(C.K):
            assert np.allclose(B[j], sym.eval(j / C.K), atol=1e-12)

    def test_blocks_sample_symbol_random(self):
        rng = np.random.default_rng(default_seed() + 11)
        sys = random_gabor_frame(rng)
        L = sys.a * ((4 * sys.s) // sys.a + 3)
        sym = symbol(sys)
        C = assemble_circulant(sys, L)
        B = block_diagonalize(C)
        for j in range(C.K):
            assert np.allclose(B[j], sym.eval(j / C.K), atol=1e-11)


class TestSolveDualPeriodic:
    def test_matches_dense_solve(self, system_b):
        L = 11
        per = solve_dual_periodic(system_b, L)
        S = periodic_frame_matrix(1, [periodize(g, L)
                                      for g in system_b.generators], L)
        for d, g in zip(per.duals, system_b.generators):
            x_ref = gauss_solve(S, periodize(g, L).values)
            assert np.linalg.norm(d.values - x_ref) <= 1e-12

    def test_spectrum_matches_blocks(self, system_b):
        per = solve_dual_periodic(system_b, 8)
        vals = 2.0 + np.cos(2 * np.pi * np.arange(8) / 8)
        assert per.spectrum_lo == pytest.approx(np.min(vals))
        assert per.spectrum_hi == pytest.approx(np.max(vals))

    def test_mixed_reconstruction_identity(self, system_b):
        L = 15
        per = solve_dual_periodic(system_b, L)
        acc = np.zeros((L, L), dtype=complex)
        for g, d in zip(system_b.generators, per.duals):
            G = shift_matrix(periodize(g, L).values, system_b.a, L)
            Gd = shift_matrix(d.values, system_b.a, L)
            acc += G @ Gd.conj().T
        assert np.max(np.abs(acc - np.eye(L))) <= 1e-12

    def test_singular_periodization_rejected(self):
        # difference generator: symbol 2 - 2cos vanishes at frequency zero,
        # so the j = 0 block of every periodization is singular
        sys = make_system([FiniteSeq(0, [1.0, -1.0])], 1)
        with pytest.raises(NotAFrameError):
            solve_dual_periodic(sys, 16)


class TestSpectrumInclusion:
    def test_system_b(self, system_b):
        rep = spectrum_inclusion_check(system_b, 13)
        assert rep.ok
        assert rep.lo >= rep.A - rep.eps
        assert rep.hi <= rep.B + rep.eps

    def test_haar(self, haar):
        rep = spectrum_inclusion_check(haar, 10)
        assert rep.ok
        assert rep.lo == pytest.approx(1.0) and rep.hi == pytest.approx(1.0)

    def test_random_frames(self):
        rng = np.random.default_rng(default_seed() + 21)
        for _ in range(5):
            from framebank.oracles import random_fir_frame

            sys = random_fir_frame(rng)
            L = sys.a * ((4 * sys.s) // sys.a + 2)
            assert spectrum_inclusion_check(sys, L).ok


class TestComparePeriodicVsFS:
    def test_system_b_bound_dominates(self, system_b):
        ref = reference_dual(system_b, 150)
        tail = math.sqrt(ref.tail_mass)
        for N in range(4, 21):
            rows = compare_periodic_vs_fs(system_b, N, ref=ref)
            for r in rows:
                assert r.measured_err <= r.bound + tail
                assert r.cond_N <= 3.0 + 1e-6

    def test_window_too_small_rejected(self, system_b):
        with pytest.raises(PreconditionError):
            compare_periodic_vs_fs(system_b, 3)  # N = 3s

    def test_even_shift_never_divides_odd_window(self, haar):
        with pytest.raises(PreconditionError):
            compare_periodic_vs_fs(haar, 7)


class TestJanssenPeriodization:
    def test_gabor_required(self, system_b):
        with pytest.raises(PreconditionError):
            janssen_periodization_check(system_b, 12)

    def test_lattice_multiple_required(self):
        sys = make_gabor_system(delta(0), 2, 3)
        with pytest.raises(PreconditionError):
            janssen_periodization_check(sys, 16)  # not a multiple of lcm(2,3)

    def test_point_mass_window_exact(self):
        sys = make_gabor_system(delta(0), 1, 2)
        assert janssen_periodization_check(sys, 12, N_ref=40) <= 1e-13

    def test_random_gabor_small(self):
        rng = np.random.default_rng(default_seed() + 31)
        sys = random_gabor_frame(rng)
        lcm = math.lcm(sys.a, sys.gabor.M)
        L = lcm * (4 * sys.s // lcm + 2)
        assert janssen_periodization_check(sys, L, N_ref=200) <= 1e-8
