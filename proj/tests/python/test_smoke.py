import os
import subprocess

import numpy as np
import pytest

import superstyle as ss


def blob_scene(h=24, w=32):
    rng = np.random.default_rng(3)
    image = rng.integers(0, 256, size=(h, w, 3), dtype=np.uint8)
    mask = np.zeros((h, w), dtype=np.uint16)
    mask[:, w // 2 :] = 1
    return image, mask


def test_color_white_and_round_trip():
    assert ss.rgb_to_lab(255, 255, 255)[0] == pytest.approx(100.0, abs=1e-3)
    assert tuple(ss.lab_to_rgb(*ss.rgb_to_lab(12, 200, 77))) == (12, 200, 77)


def test_cluster_partitions_each_label():
    image, mask = blob_scene()
    result = ss.cluster(image, mask, k=6)
    assert result["ids"].shape == mask.shape
    assert result["cluster_counts"] == [6, 6]
    for history in result["objective_history"]:
        assert all(b <= a + 1e-9 for a, b in zip(history, history[1:]))


def test_encode_reconstruct_and_json_round_trip():
    image, mask = blob_scene()
    codes = ss.encode(image, mask, k=8, n=48)
    assert len(codes) == 2 and codes.n == 48
    assert codes.labels[0].code.shape == (48,)
    assert ss.StyleCodes.from_json(codes.to_json()) == codes

    ids = ss.cluster(image, mask, k=8)["ids"]
    rec = ss.coarse_reconstruct(codes, ids, mask)
    assert rec.shape == image.shape and rec.dtype == np.uint8


def test_constant_image_code():
    image = np.full((10, 10, 3), (51, 102, 204), dtype=np.uint8)
    mask = np.zeros((10, 10), dtype=np.uint16)
    codes = ss.encode(image, mask, k=4, n=12)
    np.testing.assert_allclose(codes.labels[0].code, np.tile([0.2, 0.4, 0.8], 4), atol=1e-12)


def test_gsas_zero_params_closed_form():
    a = np.array([0.3, -1.2, 2.5, 0.0])
    out = ss.gsas_forward(a, ss.GsasParams())
    np.testing.assert_allclose(out["output"], a + a.mean() / a.size, atol=1e-12)
    np.testing.assert_allclose(out["s"].sum(axis=1), 1.0, atol=1e-12)
    grads = ss.gsas_backward(a, ss.GsasParams.random(5), np.ones_like(a))
    assert grads["a"].shape == a.shape


def test_losses():
    real = [np.array([[[1.0, 2.0], [3.0, 4.0]]])]
    fake = [np.zeros((1, 2, 2))]
    assert ss.perceptual_loss(real, fake) == pytest.approx(2.5)
    assert ss.hinge_d_loss([0.5], [-0.5]) == pytest.approx(1.0)
    assert ss.total_loss(0.1, [0.2, 0.3], [1.0, -1.0]) == pytest.approx(6.0)


def test_swap_and_errors():
    image, mask = blob_scene()
    source = ss.encode(image, mask, k=4, n=24)
    style = ss.encode(255 - image, mask, k=4, n=24)
    swapped = ss.swap_codes(source, style, {1})
    np.testing.assert_array_equal(swapped.labels[1].code, style.labels[1].code)
    np.testing.assert_array_equal(swapped.labels[0].code, source.labels[0].code)

    short = ss.encode(image, mask, k=4, n=12)
    with pytest.raises(ss.DimensionMismatch):
        ss.swap_codes(source, short, {1})
    with pytest.raises(ss.Error):
        ss.encode(image, mask[:-1], k=4)


@pytest.mark.skipif("SUPERSTYLE_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_help_runs():
    proc = subprocess.run([os.environ["SUPERSTYLE_CLI"], "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "encode" in proc.stdout
