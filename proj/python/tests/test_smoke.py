import json

import numpy as np
import pytest

import stbclab


def test_herm3_rank_matches_law():
    code = stbclab.make_code("herm", n=3)
    assert code.k == 9
    hist = stbclab.rank_monte_carlo(code, m=2, trials=50, seed=7)
    assert hist == {8: 50}
    assert stbclab.predict_rank("herm", n=3, m=2)["total"] == stbclab.f_rank(3, 2) == 8


def test_equivalent_channel_against_numpy():
    code = stbclab.make_code("fgd-ren")
    h = stbclab.sample_channel(4, 3, seed=3)
    g = stbclab.equivalent_channel(code, h)
    assert g.shape == (24, 17)
    assert np.linalg.matrix_rank(g) == 16
    assert stbclab.numerical_rank(g) == 16
    # Column 0 is tilde_vec(A_1 H): real parts then imaginary parts, column-major.
    a1h = code.matrices()[0] @ h
    flat = a1h.flatten(order="F")
    np.testing.assert_allclose(g[:, 0], np.concatenate([flat.real, flat.imag]), atol=1e-12)


def test_rank_deficient_decode_matches_brute_force():
    code = stbclab.make_code("herm", n=2)
    h = stbclab.sample_channel(2, 1, seed=11)
    for seed in range(20):
        tx = stbclab.simulate(code, h, q=2, snr_db=10.0, seed=seed)
        rd = stbclab.decode(code, h, tx["y"], q=2)
        bf = stbclab.decode(code, h, tx["y"], q=2, method="brute_force")
        assert rd["cost"] == pytest.approx(bf["cost"], rel=1e-9, abs=1e-12)
        assert rd["outer_candidates"] == 2 ** (4 - 3)


def test_noiseless_recovery_multigroup():
    code = stbclab.make_code("natarajan-g2", n=2)
    h = stbclab.sample_channel(4, 2, seed=5)
    tx = stbclab.simulate(code, h, q=2, seed=9)
    out = stbclab.decode(code, h, tx["y"], q=2, method="multigroup")
    assert out["cost"] == pytest.approx(0.0, abs=1e-9)


def test_weight_set_json_round_trip():
    code = stbclab.make_code("ryggz-basis", n=2, t=4)
    again = stbclab.WeightSet.from_json(code.to_json())
    assert again.k == code.k and again.groups == code.groups
    for a, b in zip(code.matrices(), again.matrices()):
        np.testing.assert_allclose(a, b)


def test_cli_rank_json():
    code, out, _ = stbclab.run_cli(
        ["rank", "--family", "herm", "--n", "4", "--m", "3", "--trials", "20", "--format", "json", "--no-timestamp"]
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["histogram"] == {"15": 20}


def test_errors_are_python_exceptions():
    with pytest.raises(ValueError):
        stbclab.make_code("nope", n=2)
    code, _, err = stbclab.run_cli(["rank", "--n", "3", "--m", "2"])
    assert code == 2 and err
