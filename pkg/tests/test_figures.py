import numpy as np
import pytest

from helmwave.lfa.analysis import SWEEP_COLUMNS
from helmwave.experiments.config import ExperimentConfig
from helmwave.experiments.figures import CURVE_COLUMNS, FIGURES, run_figure


def _figure(name, num_theta=17):
    config = ExperimentConfig.load(name)
    config.num_theta = num_theta
    return config, run_figure(config)


def _curves(frame):
    return {
        (panel, curve): len(samples)
        for (panel, curve), samples in frame.groupby(["panel", "curve"])
    }


def test_every_bundled_figure_has_a_builder():
    assert set(FIGURES) == {f"fig{n}" for n in range(1, 6)}


def test_smoother_symbols():
    config, frame = _figure("fig1")
    assert list(frame.columns) == CURVE_COLUMNS
    assert len(frame) == 2 * 3 * 17
    assert set(frame.panel) == {"jacobi", "gs"}
    assert set(frame.curve) == {"t=0.1", "t=0.5", "t=1"}
    assert np.all(frame.value >= 0)
    assert frame.theta.max() == pytest.approx(np.pi)


def test_amplification():
    _, frame = _figure("fig2")
    assert list(frame.columns) == CURVE_COLUMNS
    assert list(frame.curve.unique()) == ["gs", "jacobi", "gmres"]
    assert set(frame.panel) == {"kappa=200"}
    assert frame.t.iloc[0] == pytest.approx(0.8)
    assert np.all(np.isfinite(frame.value))


def test_twolevel_curves():
    _, frame = _figure("fig3")
    columns = ["panel", "curve", "theta", "value"] + SWEEP_COLUMNS[2:]
    assert list(frame.columns) == columns

    curves = _curves(frame)
    assert len(curves) == 8
    assert set(curves.values()) == {17}
    assert ("left", "SL beta=0.5") in curves
    assert ("right", "C shift=0.1") in curves

    left = frame.loc[frame.panel == "left"]
    assert set(left.variant) == {"SL", "FC", "C"}
    assert np.all(np.abs(left.theta) <= np.pi / 2)


def test_divergence_for_large_t():
    _, frame = _figure("fig4", num_theta=65)
    assert set(frame.panel) == {"t=1.732", "t=4"}
    assert len(_curves(frame)) == 4

    imaginary = frame.loc[(frame.panel == "t=1.732") & (frame.variant == "C")]
    assert imaginary.value.max() > 1
    assert np.all(imaginary.sigma_im == 0.8)


def test_threelevel_curves():
    _, frame = _figure("fig5")
    curves = _curves(frame)
    assert len(curves) == 7
    assert {curve for panel, curve in curves if panel == "left"} == {
        "C t=0.6",
        "C t=0.4",
        "C t=0.2",
    }
    right = frame.loc[frame.panel == "right"]
    assert set(right.t) == {0.4}
    assert np.all(np.isfinite(frame.value))
