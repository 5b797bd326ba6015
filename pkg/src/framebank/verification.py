"""Full invariant suite for one system; backs the `verify` CLI command.

Each check appends a human-readable message on failure; an empty list means
the system passed everything at the stated tolerances.
"""

from __future__ import annotations

import numpy as np

from .banded import banded_cholesky, estimate_cond
from .decay import demko_certificate, dual_decay_bound, verify_entry_decay
from .errors import FrameBankError
from .finite_section import reference_dual, solve_dual_fs
from .frame_operator import frame_bounds, symbol, truncate_section
from .oracles import gauss_solve
from .periodic import (periodic_frame_matrix, solve_dual_periodic,
                       spectrum_inclusion_check)
from .sequences import FiniteSeq, periodize
from .systems import analyze, apply_frame_operator, synthesize

__all__ = ["run_verification"]


def _random_seq(rng, half):
    v = rng.standard_normal(2 * half + 1) + 1j * rng.standard_normal(2 * half + 1)
    return FiniteSeq(-half, v)


def run_verification(sys, N, seed=0, trials=100):
    """Run the invariant suite at section half-width N; returns violations."""
    rng = np.random.default_rng(seed)
    violations = []

    def check(ok, msg):
        if not ok:
            violations.append(msg)

    # adjointness of analysis and synthesis
    worst = 0.0
    for _ in range(trials):
        f = _random_seq(rng, 6)
        c = analyze(sys, f)
        c_rand = type(c)(n_lo=c.n_lo, data=rng.standard_normal(c.data.shape)
                         + 1j * rng.standard_normal(c.data.shape))
        lhs = complex(np.sum(c.data * np.conj(c_rand.data)))
        rhs = f.inner(synthesize(sys, c_rand))
        worst = max(worst, abs(lhs - rhs))
    check(worst <= 1e-12 * trials,
          "adjointness defect {:.3e} exceeds tolerance".format(worst))

    # shift covariance of the analysis map
    f = _random_seq(rng, 5)
    c0 = analyze(sys, f, -8, 8)
    c1 = analyze(sys, f.shift(sys.a), -8, 8)
    cov = max(abs(c1.at(m, n) - c0.at(m, n - 1))
              for m in range(sys.M) for n in range(-7, 8))
    check(cov == 0.0 or cov <= 1e-13,
          "shift covariance defect {:.3e}".format(cov))

    # frame operator: direct summation vs banded matrix-vector product
    Sn = truncate_section(sys, N)
    probe = _random_seq(rng, max(1, N - 2 * sys.s - 1))
    direct = apply_frame_operator(sys, probe)
    matv = Sn.matvec(probe.window(-N, N))
    inner = 2 * sys.s + 1 <= N  # interior rows unaffected by the window
    if inner:
        lo, hi = -(N - 2 * sys.s), N - 2 * sys.s
        diff = np.max(np.abs(direct.window(lo, hi)
                             - matv[lo + N:hi + N + 1]))
        check(diff <= 1e-12,
              "frame operator vs matrix defect {:.3e}".format(diff))

    try:
        fb = frame_bounds(symbol(sys))
        cert = demko_certificate(fb.A, fb.B, sys.s, grid=fb.grid)
    except FrameBankError as exc:
        violations.append("frame bounds: {}".format(exc))
        return violations

    # interlacing: cond(S_N) nondecreasing and below B/A
    prev = 0.0
    for n in range(2 * sys.s + 1, N + 1, max(1, (N - 2 * sys.s) // 6)):
        cond_n = estimate_cond(truncate_section(sys, n))
        check(cond_n <= cert.kappa + 1e-6,
              "cond(S_{}) = {:.6f} exceeds B/A = {:.6f}".format(
                  n, cond_n, cert.kappa))
        check(cond_n >= prev - 1e-8 * max(1.0, prev),
              "cond(S_N) decreased at N={}".format(n))
        prev = cond_n

    # solver residuals and agreement with a dense elimination solve
    sol = solve_dual_fs(sys, N)
    for m, r in enumerate(sol.residuals):
        check(r <= 1e-10 * max(1.0, sys.generators[m].norm()),
              "channel {} residual {:.3e}".format(m, r))
    dense = Sn.to_dense()
    for m, g in enumerate(sys.generators):
        x = gauss_solve(dense, g.window(-N, N))
        d = np.linalg.norm(x - sol.duals[m].window(-N, N))
        check(d <= 1e-10 * max(1.0, float(np.linalg.norm(x))),
              "banded vs dense solve differ by {:.3e} on channel {}".format(d, m))

    # entrywise decay of the inverse section
    inv = gauss_solve(dense, np.eye(dense.shape[0]))
    rep = verify_entry_decay(inv, cert)
    check(rep.ok, "inverse entry decay violated, max ratio {:.6f}".format(
        rep.max_ratio))

    # decay of the duals themselves (normalized systems only)
    if sys.normalized:
        ref = reference_dual(sys, max(4 * N, 80))
        for m in range(sys.M):
            d = ref.duals[m]
            bad = any(abs(d.at(k)) > dual_decay_bound(cert, k) * (1 + 1e-9)
                      for k in range(-(ref.N // 2), ref.N // 2 + 1))
            check(not bad, "dual decay bound violated on channel {}".format(m))

    # periodic model: spectrum inclusion and exact reconstruction on Z_L
    L = sys.a * ((4 * sys.s) // sys.a + 2)
    rep = spectrum_inclusion_check(sys, L, grid=fb.grid, eps=1e-6)
    check(rep.ok, "spectrum inclusion violated at L={}: {}".format(L, rep.violations))
    per = solve_dual_periodic(sys, L)
    pgs = [periodize(g, L) for g in sys.generators]
    # mixed-operator matrix sum_{m,n} <., pgamma_{m,n}> pg_{m,n} must be I
    K = L // sys.a
    k = np.arange(L)
    mix = np.zeros((L, L), dtype=complex)
    for pg, pd in zip(pgs, per.duals):
        G = np.stack([pg.values[(k - n * sys.a) % L] for n in range(K)], axis=1)
        Gd = np.stack([pd.values[(k - n * sys.a) % L] for n in range(K)], axis=1)
        mix += G @ Gd.conj().T
    d = float(np.max(np.abs(mix - np.eye(L))))
    check(d <= 1e-10, "periodic reconstruction defect {:.3e} at L={}".format(d, L))

    return violations
