import math

import numpy as np
import pytest

import folner_lab as fl

SHIFT = {"kind": "shift"}
TOEPLITZ_2COS = {
    "kind": "toeplitz",
    "selfadjoint": True,
    "coefficients": [{"k": -1, "value": [1, 0]}, {"k": 1, "value": [1, 0]}],
}
GOLDEN = (math.sqrt(5) - 1) / 2


def test_shift_law():
    for n in (1, 3, 7, 15, 100):
        w = fl.window("n0", n)
        assert fl.folner_ratio(SHIFT, w) == pytest.approx(1 / math.sqrt(n + 1), abs=1e-12)
        assert fl.qd_gap(SHIFT, w) == pytest.approx(1.0, abs=1e-12)


def test_compress_shift_is_subdiagonal():
    m = fl.compress(SHIFT, fl.window("n0", 3))
    assert m.dtype == np.complex128
    np.testing.assert_array_equal(m, np.eye(4, k=-1))


def test_toeplitz_second_moment():
    ev = fl.eigenvalues(TOEPLITZ_2COS, fl.window("n0", 64))
    assert np.all(np.diff(ev) >= 0)
    assert np.mean(ev**2) == pytest.approx(2 * 64 / 65, abs=1e-10)


def test_rotation_algebra_trace():
    h = {
        "alpha": GOLDEN,
        "terms": [
            {"m": 1, "k": 0, "coeff": 1},
            {"m": -1, "k": 0, "coeff": 1},
            {"m": 0, "k": 1, "coeff": 0.5},
            {"m": 0, "k": -1, "coeff": 0.5},
            {"m": 0, "k": 0, "coeff": 3},
        ],
    }
    assert fl.canonical_trace(h) == pytest.approx(3.0)
    op = {"kind": "nc", **h}
    assert fl.trace_estimate(op, fl.window("z", 200)).real == pytest.approx(3.0, abs=1e-2)


def test_tensor_bound_shift():
    w = fl.window("n0", 5)
    rec = fl.tensor_bound(SHIFT, w, SHIFT, w)
    assert rec["slack"] >= -1e-10
    assert rec["rhs"] == pytest.approx(2 / 6)


def test_errors_are_value_errors():
    with pytest.raises(ValueError):
        fl.compress({"kind": "nope"}, fl.window("n0", 2))
    with pytest.raises(ValueError):
        fl.compress("{not json", fl.window("n0", 2))
