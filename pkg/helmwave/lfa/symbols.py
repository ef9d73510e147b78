"""
    Fourier symbols of the 1D P1 stencils on an infinite uniform grid, all
    dimensionless: the 1/h factor of the operators is dropped and comes back
    through the mesh ratios in the two and three level blocks.
"""
import numpy as np
import sympy
from functools import lru_cache
from loguru import logger

from helmwave.fixtures import OMEGA
from helmwave.discretization.stencil import StencilCoefficients

_RESONANCE = 1e-13
_SERIES_BELOW = 0.05


class ResonanceError(ArithmeticError):
    def __init__(self, message, theta=None, level=None):
        self.theta = theta
        self.level = level
        super().__init__(f"{message} (theta={theta}, level={level})")


def _first(theta, mask):
    theta = np.broadcast_to(np.asarray(theta, dtype=float), mask.shape)
    return float(theta[mask].flat[0])


# ---------------------------------------------------------------------------- #
#                                   operators                                  #
# ---------------------------------------------------------------------------- #


def symbol(theta, stencil):
    """ 2σ cos 2θ + 2R cos θ + 2S for a StencilCoefficients """
    theta = np.asarray(theta, dtype=float)
    return (
        2 * stencil.sigma * np.cos(2 * theta)
        + 2 * stencil.R * np.cos(theta)
        + 2 * stencil.S
    )


def symbol_A_cip(theta, t, sigma):
    return symbol(theta, StencilCoefficients(t, sigma))


def symbol_A_fem(theta, t):
    return symbol(theta, StencilCoefficients(t))


def symbol_A_shifted(theta, t, beta):
    return symbol(theta, StencilCoefficients(t, beta=beta))


def symbol_transfer(theta):
    """ (1 + cos θ) / 2, shared by linear interpolation and full weighting """
    return (1 + np.cos(np.asarray(theta, dtype=float))) / 2


# ---------------------------------------------------------------------------- #
#                                   smoothers                                  #
# ---------------------------------------------------------------------------- #


def jacobi_symbol(theta, stencil, omega=OMEGA):
    if stencil.S == 0:
        raise ValueError(f"Singular Jacobi stencil, S = 0 for {stencil}")
    theta = np.asarray(theta, dtype=float)
    return 1 - (omega / stencil.S) * (
        stencil.sigma * np.cos(2 * theta)
        + stencil.R * np.cos(theta)
        + stencil.S
    )


def _gs_denominator(theta, stencil, level=None):
    theta = np.asarray(theta, dtype=float)
    D = (
        stencil.R * np.exp(-1j * theta)
        + stencil.sigma * np.exp(-2j * theta)
        + 2 * stencil.S
    )
    small = np.abs(D) < _RESONANCE
    if np.any(small):
        raise ResonanceError(
            "Gauss-Seidel symbol has a zero denominator",
            theta=_first(theta, small),
            level=level,
        )
    return D


def gs_symbol(theta, stencil, level=None):
    theta = np.asarray(theta, dtype=float)
    D = _gs_denominator(theta, stencil, level=level)
    return (
        -(stencil.R * np.exp(1j * theta) + stencil.sigma * np.exp(2j * theta))
        / D
    )


def symbol_smoother_jacobi(theta, t, sigma, omega=OMEGA, beta=0.0):
    """
        Symbol of the weighted Jacobi iteration I - ω D^-1 A:
        1 - (ω/S)(σ cos 2θ + R cos θ + S)
    """
    return jacobi_symbol(theta, StencilCoefficients(t, sigma, beta), omega)


def symbol_smoother_gs(theta, t, sigma, beta=0.0):
    """
        Symbol of lexicographic Gauss-Seidel (D - L)^-1 U:
        -(R e^{iθ} + σ e^{2iθ}) / (R e^{-iθ} + σ e^{-2iθ} + 2S)
    """
    return gs_symbol(theta, StencilCoefficients(t, sigma, beta))


def smoother_symbols(
    theta, stencil, smoother="jacobi", omega=OMEGA, steps=1, level=None
):
    """
        Iteration and approximate-inverse symbols of `steps` smoothing steps
        from a zero initial guess, S^m and R_m = R (1 + S + ... + S^{m-1}),
        with R = ω/(2S) for Jacobi and 1/D for Gauss-Seidel.

        Returns:
            iteration: complex np.ndarray
            inverse: complex np.ndarray
    """
    if steps < 1:
        raise ValueError(f"Smoothing steps must be >= 1, not {steps}")
    if smoother == "jacobi":
        iteration = jacobi_symbol(theta, stencil, omega)
        inverse = omega / (2 * stencil.S) * np.ones_like(iteration)
    elif smoother == "gs":
        iteration = gs_symbol(theta, stencil, level=level)
        inverse = 1 / _gs_denominator(theta, stencil, level=level)
    else:
        raise ValueError(f"Unknown smoother: {smoother}")

    geometric = sum(iteration ** k for k in range(steps))
    return iteration ** steps, inverse * geometric


# ---------------------------------------------------------------------------- #
#                                   penalties                                  #
# ---------------------------------------------------------------------------- #


@lru_cache()
def _small_t_series(order=8):
    t = sympy.symbols("t")
    c = sympy.cos(t)
    expression = (6 * c - 6 + t ** 2 * c + 2 * t ** 2) / (12 * (1 - c) ** 2)
    series = sympy.series(expression, t, 0, order).removeO()
    return sympy.lambdify(t, series, "numpy")


def _sigma_formula(t):
    if t < _SERIES_BELOW:
        return complex(float(_small_t_series()(t)))
    c = np.cos(t)
    return complex(
        (6 * c - 6 + t ** 2 * c + 2 * t ** 2) / (12 * (1 - c) ** 2)
    )


def optimal_sigma(t):
    """
        Penalty σ_o = (6 cos t - 6 + t² cos t + 2t²) / (12 (1 - cos t)²)
        removing the phase error of the 1D P1 CIP scheme. For small t the
        Taylor expansion (σ_o -> -1/12) replaces the cancelling formula.

        Arguments:
            t: float. κh, 0 < t, the formula's regime is t <= 1

        Returns:
            sigma: complex with zero imaginary part
    """
    if t <= 0:
        raise ValueError(f"optimal_sigma needs t > 0, not {t}")
    if t > 1:
        logger.warning(
            f"optimal_sigma evaluated at t={t:.4g} outside 0 < t <= 1"
        )

    return _sigma_formula(t)


def penalty_rule(t):
    """ σ_o(t) + 0.01i for t < 1, σ_o(t) + 0.05i otherwise """
    if t <= 0:
        raise ValueError(f"penalty_rule needs t > 0, not {t}")
    return _sigma_formula(t) + (0.01j if t < 1 else 0.05j)
