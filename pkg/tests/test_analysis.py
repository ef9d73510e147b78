import numpy as np
import pytest

from helmwave.lfa.symbols import (
    ResonanceError,
    optimal_sigma,
    smoother_symbols,
    symbol_smoother_jacobi,
)
from helmwave.discretization.stencil import StencilCoefficients
from helmwave.lfa.blocks import SymbolParams, SymbolBlock, smoother_block
from helmwave.lfa.analysis import (
    SWEEP_COLUMNS,
    theta_samples,
    full_circle,
    spectral_radius_sweep,
    sweep_dataframe,
    smoother_curve,
    amplification_experiment,
)


def test_samples():
    thetas = theta_samples(8)
    assert len(thetas) == 8
    assert thetas[-1] == pytest.approx(np.pi / 2)
    assert thetas[0] > -np.pi / 2
    assert full_circle(4)[-1] == pytest.approx(np.pi)

    with pytest.raises(ValueError):
        theta_samples(1)


# ---------------------------------------------------------------------------- #
#                                    sweeps                                    #
# ---------------------------------------------------------------------------- #


def test_constant_block_sweep():
    def constant(theta, params):
        return SymbolBlock(-0.3j * np.eye(2), np.array([theta, 0]), "C")

    sweep = spectral_radius_sweep(constant, SymbolParams(0.5), num_samples=9)
    assert np.allclose(sweep.rho, 0.3)
    assert sweep.supremum == pytest.approx(0.3)


def test_smoother_sweep_peaks_at_the_ends():
    t = 0.5
    params = SymbolParams(t, sigma=0.0)
    sweep = spectral_radius_sweep(smoother_block, params, num_samples=256)

    ends = np.abs(symbol_smoother_jacobi(np.array([0.0, np.pi]), t, 0.0))
    assert sweep.supremum == pytest.approx(ends.max(), rel=1e-12)


def test_resonant_samples_are_shifted_or_excluded():
    target = np.pi / 2

    def resonant_at_target(theta, params):
        if theta == target:
            raise ResonanceError("resonance", theta=theta)
        return SymbolBlock(0.5 * np.eye(2), np.array([theta, 0]), "C")

    sweep = spectral_radius_sweep(resonant_at_target, None, num_samples=4)
    assert np.all(np.isfinite(sweep.rho))

    def always_resonant(theta, params):
        raise ResonanceError("resonance", theta=theta)

    sweep = spectral_radius_sweep(always_resonant, None, num_samples=4)
    assert np.all(np.isinf(sweep.rho))
    assert sweep.supremum == np.inf


def test_sweep_dataframe():
    params = SymbolParams(0.8, sigma=optimal_sigma(0.8) + 0.01j, beta=0.3)
    sweep = spectral_radius_sweep(smoother_block, params, num_samples=5)
    frame = sweep_dataframe(sweep, params, "C")

    assert list(frame.columns) == SWEEP_COLUMNS
    assert len(frame) == 5
    assert np.allclose(frame.sigma_im, 0.01)
    assert set(frame.variant) == {"C"}


def test_smoother_curve():
    t, sigma = 0.5, optimal_sigma(0.5)
    for smoother in ("jacobi", "gs"):
        sweep = smoother_curve(t, sigma, smoother=smoother, num_samples=33)
        iteration, _ = smoother_symbols(
            sweep.thetas, StencilCoefficients(t, sigma), smoother=smoother
        )
        assert np.allclose(sweep.rho, np.abs(iteration))
        assert sweep.supremum == sweep.rho.max()


# ---------------------------------------------------------------------------- #
#                                 amplification                                #
# ---------------------------------------------------------------------------- #


def test_exact_smoother_annihilates_modes():
    sweep = amplification_experiment(
        kappa=20, h=0.02, length=1.0, smoother="gmres", m=49, theta_samples=8
    )
    assert np.all(sweep.rho < 1e-8)


def test_gmres_damps_more_than_classical_smoothers():
    kappa, h = 200, 0.004
    sweeps = {
        smoother: amplification_experiment(
            kappa=kappa, h=h, smoother=smoother, m=1, theta_samples=257
        )
        for smoother in ("jacobi", "gs", "gmres")
    }
    thetas = sweeps["gmres"].thetas

    # all three factors are close to 1 next to the discrete resonance θ = ±κh
    spacing = 2 * np.pi / 257
    resonant = np.abs(np.abs(thetas) - kappa * h) <= 4 * spacing
    slack = np.where(resonant, 1e-2, 1e-12)

    gmres = sweeps["gmres"].rho
    for smoother in ("jacobi", "gs"):
        assert np.all(gmres <= sweeps[smoother].rho + slack)
    assert resonant.sum() < 20


def test_jacobi_amplification_matches_its_symbol():
    t = 0.8
    sweep = amplification_experiment(
        kappa=200, h=0.004, smoother="jacobi", theta_samples=16
    )
    assert sweep.thetas[-1] == pytest.approx(np.pi)
    expected = abs(symbol_smoother_jacobi(np.pi, t, optimal_sigma(t)))
    assert sweep.rho[-1] == pytest.approx(expected, abs=5e-2)


def test_amplification_rejects_unknown_smoother():
    with pytest.raises(ValueError):
        amplification_experiment(smoother="sor")
