import json

import numpy as np
import pytest

from framebank import FiniteSeq, delta, make_system

SQ2 = 2.0 ** -0.5


@pytest.fixture
def haar():
    """Orthonormal basis of translates: S is the identity."""
    g0 = FiniteSeq(0, [SQ2, SQ2])
    g1 = FiniteSeq(0, [SQ2, -SQ2])
    return make_system([g0, g1], 2)


@pytest.fixture
def system_b():
    """g0 = delta, g1 = (delta_0 + delta_1)/sqrt(2), a = 1.

    Frame operator is tridiagonal with diagonal 2 and off-diagonal 1/2;
    symbol 2 + cos(2 pi w), frame bounds A = 1, B = 3, and the dual of g0
    has the closed form gamma0(k) = (sqrt(3) - 2)^|k| / sqrt(3).
    """
    return make_system([delta(0), FiniteSeq(0, [SQ2, SQ2])], 1)


def system_b_analytic_dual0(k):
    r3 = np.sqrt(3.0)
    return (r3 - 2.0) ** abs(k) / r3


@pytest.fixture
def spec_file_b(tmp_path):
    doc = {
        "a": 1,
        "channels": [
            {"offset": 0, "re": [1.0]},
            {"offset": 0, "re": [SQ2, SQ2]},
        ],
    }
    path = tmp_path / "system_b.json"
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def spec_file_haar(tmp_path):
    doc = {
        "a": 2,
        "channels": [
            {"offset": 0, "re": [SQ2, SQ2]},
            {"offset": 0, "re": [SQ2, -SQ2]},
        ],
    }
    path = tmp_path / "haar.json"
    path.write_text(json.dumps(doc))
    return str(path)
