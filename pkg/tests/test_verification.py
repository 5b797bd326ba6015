import numpy as np
import pytest

from framebank.oracles import default_seed, random_fir_frame
from framebank.verification import run_verification


class TestRunVerification:
    def test_haar_clean(self, haar):
        assert run_verification(haar, 8) == []

    def test_system_b_clean(self, system_b):
        assert run_verification(system_b, 12) == []

    def test_seed_reproducible(self, system_b):
        a = run_verification(system_b, 8, seed=5, trials=20)
        b = run_verification(system_b, 8, seed=5, trials=20)
        assert a == b

    @pytest.mark.parametrize("seed_off", range(3))
    def test_random_frames_clean(self, seed_off):
        rng = np.random.default_rng(default_seed() + 200 + seed_off)
        sys = random_fir_frame(rng)
        assert run_verification(sys, 4 * sys.s + 4, trials=25) == []
