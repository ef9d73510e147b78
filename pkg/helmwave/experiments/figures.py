"""
    Curves of the Fourier analysis figures. Every figure is a long table
    with one row per (panel, curve, θ) sample.
"""
import numpy as np
import pandas as pd
from functools import partial
from loguru import logger

from fcutils.progress import track

from helmwave.lfa.symbols import optimal_sigma, penalty_rule
from helmwave.lfa.blocks import SymbolParams, twolevel_block, threelevel_block
from helmwave.lfa.analysis import (
    spectral_radius_sweep,
    sweep_dataframe,
    smoother_curve,
    amplification_experiment,
)

CURVE_COLUMNS = ["panel", "curve", "theta", "value", "t", "smoother"]


def _curve_frame(sweep, panel, curve, t, smoother):
    return pd.DataFrame(
        dict(
            panel=panel,
            curve=curve,
            theta=sweep.thetas,
            value=sweep.rho,
            t=t,
            smoother=smoother,
        ),
        columns=CURVE_COLUMNS,
    )


def _sweep_frame(block, params, variant, panel, curve, num_theta):
    """ spectral radius of one block family over the low frequencies """
    builder = partial(block, variant=variant)
    sweep = spectral_radius_sweep(builder, params, num_samples=num_theta)
    logger.info(f"{panel} {curve}: sup rho = {sweep.supremum:.4f}")
    frame = sweep_dataframe(sweep, params, variant).rename(
        columns=dict(theta0="theta", rho="value")
    )
    frame.insert(0, "curve", curve)
    frame.insert(0, "panel", panel)
    return frame


# ---------------------------------------------------------------------------- #
#                                   smoothers                                  #
# ---------------------------------------------------------------------------- #


def smoother_symbols_figure(config):
    """ |S(θ)| of Jacobi and Gauss-Seidel with σ = σ_o(t) for each t """
    frames = []
    for smoother in ("jacobi", "gs"):
        for t in config.t:
            sweep = smoother_curve(
                t,
                sigma=optimal_sigma(t),
                smoother=smoother,
                omega=config.omega,
                num_samples=config.num_theta,
            )
            frames.append(
                _curve_frame(sweep, smoother, f"t={t:g}", t, smoother)
            )
    return pd.concat(frames, ignore_index=True)


def amplification_figure(config):
    """ one step damping of Gauss-Seidel, Jacobi and GMRES(1) """
    frames = []
    for kappa in config.kappa:
        t = kappa * config.h
        for smoother in track(
            ("gs", "jacobi", "gmres"), description="fig2", transient=True
        ):
            sweep = amplification_experiment(
                kappa=kappa,
                h=config.h,
                sigma=config.sigma,
                smoother=smoother,
                m=config.m1,
                theta_samples=config.num_theta,
                omega=config.omega,
            )
            frames.append(
                _curve_frame(sweep, f"kappa={kappa:g}", smoother, t, smoother)
            )
    return pd.concat(frames, ignore_index=True)


# ---------------------------------------------------------------------------- #
#                                   two level                                  #
# ---------------------------------------------------------------------------- #


def twolevel_figure(config):
    """
        Left panel: shifted Laplacian with each β, then FC and C with the
        fine penalty σ_o + 0.01i. Right panel: C with the fine penalty
        σ_o + s·i for each shift s. Coarse grids follow the penalty rule.
    """
    frames = []
    for t in config.t:
        common = dict(
            omega=config.omega,
            smoother=config.smoother,
            coarse_sigma="rule",
            mu=config.mu,
        )
        curves = [
            ("SL", "left", f"SL beta={beta:g}", dict(beta=beta))
            for beta in config.beta
        ]
        curves += [
            (variant, "left", variant, dict(sigma=optimal_sigma(t) + 0.01j))
            for variant in ("FC", "C")
        ]
        curves += [
            (
                "C",
                "right",
                f"C shift={shift:g}",
                dict(sigma=optimal_sigma(t) + 1j * shift),
            )
            for shift in config.sigma_shift
        ]

        for variant, panel, curve, kwargs in curves:
            params = SymbolParams(t, **common, **kwargs)
            frames.append(
                _sweep_frame(
                    twolevel_block,
                    params,
                    variant,
                    panel,
                    curve,
                    config.num_theta,
                )
            )
    return pd.concat(frames, ignore_index=True)


def divergence_figure(config):
    """
        Shifted Laplacian against C with a purely imaginary penalty at
        large t, where the coarse symbol decides convergence.
    """
    sigma = 0.8j if config.sigma is None else config.sigma
    frames = []
    for t in config.t:
        curves = [
            ("SL", f"SL beta={beta:g}", dict(beta=beta))
            for beta in config.beta
        ]
        curves.append(("C", f"C sigma={sigma:g}", dict(sigma=sigma)))

        for variant, curve, kwargs in curves:
            params = SymbolParams(
                t,
                omega=config.omega,
                smoother=config.smoother,
                mu=config.mu,
                **kwargs,
            )
            frames.append(
                _sweep_frame(
                    twolevel_block,
                    params,
                    variant,
                    f"t={t:.4g}",
                    curve,
                    config.num_theta,
                )
            )
    return pd.concat(frames, ignore_index=True)


# ---------------------------------------------------------------------------- #
#                                  three level                                 #
# ---------------------------------------------------------------------------- #


def threelevel_figure(config):
    """
        Left panel: C for each t. Right panel at the middle t: SL, C and FC
        with one and with two smoothing steps on the intermediate level.
        Penalties follow the rule on every level.
    """
    common = dict(
        omega=config.omega,
        smoother=config.smoother,
        coarse_sigma="rule",
        mu=config.mu,
    )
    curves = [
        (t, "C", "left", f"C t={t:g}", dict(sigma=penalty_rule(t)))
        for t in config.t
    ]

    t = config.t[len(config.t) // 2]
    sigma = penalty_rule(t)
    curves += [
        (t, "SL", "right", "SL", dict(beta=config.beta[0])),
        (t, "C", "right", "C", dict(sigma=sigma)),
        (t, "FC", "right", "FC one step", dict(sigma=sigma)),
        (t, "FC", "right", "FC two steps", dict(sigma=sigma, steps=(1, 2, 1))),
    ]

    frames = []
    for t, variant, panel, curve, kwargs in curves:
        params = SymbolParams(t, **common, **kwargs)
        frames.append(
            _sweep_frame(
                threelevel_block,
                params,
                variant,
                panel,
                curve,
                config.num_theta,
            )
        )
    return pd.concat(frames, ignore_index=True)


FIGURES = dict(
    fig1=smoother_symbols_figure,
    fig2=amplification_figure,
    fig3=twolevel_figure,
    fig4=divergence_figure,
    fig5=threelevel_figure,
)


def run_figure(config):
    """
        Arguments:
            config: ExperimentConfig of a figure

        Returns:
            curves: pd.DataFrame
    """
    curves = FIGURES[config.experiment](config)
    if not np.all(np.isfinite(curves["value"].to_numpy())):
        logger.warning(f"{config.experiment}: some samples hit a resonance")
    return curves
