import numpy as np
from collections import namedtuple

from helmwave.fixtures import OMEGA, MU, SMOOTHERS, VARIANTS
from helmwave.discretization.stencil import StencilCoefficients
from helmwave.lfa.symbols import (
    ResonanceError,
    symbol,
    symbol_transfer,
    smoother_symbols,
    penalty_rule,
    _RESONANCE,
)


def complementary(theta):
    """ θ - sign(θ)π with sign(0) = +1 """
    theta = np.asarray(theta, dtype=float)
    return theta - np.where(theta >= 0, 1.0, -1.0) * np.pi


def frequency_pair(theta0):
    """ 2h-harmonics (θ⁰, θ¹) """
    return np.array([theta0, complementary(theta0)], dtype=float)


def frequency_quad(theta0):
    """
        4h-harmonics (θ⁰⁰, θ⁰¹, θ¹⁰, θ¹¹) with θ^{α0} = θ^α / 2 and
        θ^{α1} its complementary frequency, (θ⁰, θ¹) being the pair on the
        intermediate grid.
    """
    halves = frequency_pair(theta0) / 2
    return np.array(
        [
            halves[0],
            complementary(halves[0]),
            halves[1],
            complementary(halves[1]),
        ]
    )


# ---------------------------------------------------------------------------- #
#                                  parameters                                  #
# ---------------------------------------------------------------------------- #


class SymbolParams:
    def __init__(
        self,
        t,
        sigma=0.0,
        omega=OMEGA,
        beta=0.5,
        mu=(MU, MU, MU),
        smoother="jacobi",
        coarse_sigma=None,
        steps=(1, 1, 1),
    ):
        """
            Parameters of the two and three level Fourier analysis.

            Arguments:
                t: float. κh on the finest grid
                sigma: complex. Penalty σ = iγ of the finest grid CIP smoother
                omega: float. Jacobi weight
                beta: float. Shift of the shifted-Laplacian variant
                mu: tuple. Scalings (μ_0, μ_1, μ_2) indexed by level
                smoother: str. 'jacobi' or 'gs'
                coarse_sigma: None, complex or 'rule'. Penalty on coarser
                    grids: the fine σ, a fixed value or the penalty rule
                    evaluated at each level's t
                steps: tuple. Smoothing steps per level
        """
        if t <= 0:
            raise ValueError(f"t = κh must be positive, not {t}")
        if smoother not in SMOOTHERS:
            raise ValueError(f"Unknown smoother: {smoother}")
        if isinstance(coarse_sigma, str) and coarse_sigma != "rule":
            raise ValueError(f"Unknown coarse penalty: {coarse_sigma}")

        mu = (mu,) * 3 if np.isscalar(mu) else tuple(mu)
        if len(mu) != 3 or any(not 0 <= m <= 1 for m in mu):
            raise ValueError(f"mu must be three scalings in [0, 1], not {mu}")
        steps = (steps,) * 3 if np.isscalar(steps) else tuple(steps)
        if len(steps) != 3 or any(s < 1 for s in steps):
            raise ValueError(f"steps must be three counts >= 1, not {steps}")

        self.t = float(t)
        self.sigma = complex(sigma)
        self.omega = omega
        self.beta = beta
        self.mu = mu
        self.smoother = smoother
        self.coarse_sigma = coarse_sigma
        self.steps = steps

    def __repr__(self):
        return (
            f"t={self.t:.4g} sigma={self.sigma:.4g} omega={self.omega:g} "
            f"beta={self.beta:g} mu={self.mu} {self.smoother}"
        )

    def level_sigma(self, t_level):
        if self.coarse_sigma is None:
            return self.sigma
        if self.coarse_sigma == "rule":
            return penalty_rule(t_level)
        return complex(self.coarse_sigma)

    def stencil(self, variant, t_level, fine):
        """
            Stencil smoothing (fine grid) or correcting (coarser grids) in a
            method variant: C uses CIP everywhere, FC smooths with FEM on
            the finest grid and SL uses the shifted Laplacian everywhere.
        """
        if variant not in VARIANTS:
            raise ValueError(f"Unknown variant: {variant}")
        if variant == "SL":
            return StencilCoefficients(t_level, beta=self.beta)
        if fine:
            sigma = self.sigma if variant == "C" else 0.0
            return StencilCoefficients(t_level, sigma)
        return StencilCoefficients(t_level, self.level_sigma(t_level))


# ---------------------------------------------------------------------------- #
#                                    blocks                                    #
# ---------------------------------------------------------------------------- #


class SymbolBlock(
    namedtuple("SymbolBlock", "entries, frequencies, variant")
):
    """ Fourier representation of an iteration operator on the harmonics """

    def __repr__(self):
        return (
            f"{self.size}x{self.size} {self.variant} block at "
            f"{np.round(self.frequencies, 4)}"
        )

    @property
    def size(self):
        return self.entries.shape[0]

    @property
    def eigenvalues(self):
        return np.linalg.eigvals(self.entries)

    @property
    def spectral_radius(self):
        return float(np.max(np.abs(self.eigenvalues)))


def _coarse_inverse(theta, stencil, theta0, level):
    value = complex(symbol(theta, stencil))
    if abs(value) < _RESONANCE:
        raise ResonanceError(
            "Coarse grid symbol vanishes", theta=float(theta0), level=level
        )
    return 1 / value


def smoother_block(theta0, params, variant="C"):
    """ diagonal block of the finest grid smoother alone """
    thetas = frequency_pair(theta0)
    stencil = params.stencil(variant, params.t, fine=True)
    iteration, _ = smoother_symbols(
        thetas,
        stencil,
        smoother=params.smoother,
        omega=params.omega,
        steps=params.steps[1],
        level=1,
    )
    return SymbolBlock(np.diag(iteration), thetas, variant)


def twolevel_block(theta0, params, variant="C"):
    """
        2x2 block of the two-grid operator (smoothing on the fine grid after
        a coarse correction) on the 2h-harmonics of θ⁰:

            [I - μ_1 R A^F] [I - μ_0 4 p (p A^F)ᵗ / A_2h(2θ⁰)]

        with R the smoother's approximate inverse, A^F the FEM symbol the
        residuals come from and p the transfer symbols.

        Arguments:
            theta0: float. Low frequency in (-π/2, π/2]
            params: SymbolParams
            variant: str. 'C', 'FC' or 'SL'

        Returns:
            block: SymbolBlock
    """
    thetas = frequency_pair(theta0)
    t = params.t
    A_F = symbol(thetas, StencilCoefficients(t))

    _, inverse = smoother_symbols(
        thetas,
        params.stencil(variant, t, fine=True),
        smoother=params.smoother,
        omega=params.omega,
        steps=params.steps[1],
        level=1,
    )
    smoothing = np.diag(1 - params.mu[1] * inverse * A_F)

    coarse = _coarse_inverse(
        2 * theta0, params.stencil(variant, 2 * t, fine=False), theta0, 0
    )
    p = symbol_transfer(thetas)
    correction = np.eye(2) - params.mu[0] * 4 * coarse * np.outer(p, p * A_F)

    return SymbolBlock(smoothing @ correction, thetas, variant)


def threelevel_block(theta0, params, variant="C"):
    """
        4x4 block of the three-grid operator S_2 C_1 C_0 on the
        4h-harmonics: coarsest correction first, then the intermediate
        smoothing correction through the 4x2 transfer and finally the
        finest smoothing.
    """
    quad = frequency_quad(theta0)
    pair = frequency_pair(theta0)
    t = params.t
    A_F = symbol(quad, StencilCoefficients(t))

    _, fine_inverse = smoother_symbols(
        quad,
        params.stencil(variant, t, fine=True),
        smoother=params.smoother,
        omega=params.omega,
        steps=params.steps[2],
        level=2,
    )
    smoothing = np.diag(1 - params.mu[2] * fine_inverse * A_F)

    _, mid_inverse = smoother_symbols(
        pair,
        params.stencil(variant, 2 * t, fine=False),
        smoother=params.smoother,
        omega=params.omega,
        steps=params.steps[1],
        level=1,
    )
    p = symbol_transfer(quad)
    P21 = np.zeros((4, 2))
    P21[:2, 0], P21[2:, 1] = p[:2], p[2:]
    mid = np.eye(4) - params.mu[1] * 4 * (
        P21 @ np.diag(mid_inverse) @ P21.T @ np.diag(A_F)
    )

    coarse = _coarse_inverse(
        2 * theta0, params.stencil(variant, 4 * t, fine=False), theta0, 0
    )
    P20 = P21 @ symbol_transfer(pair)
    correction = np.eye(4) - params.mu[0] * 16 * coarse * np.outer(
        P20, P20 * A_F
    )

    return SymbolBlock(smoothing @ mid @ correction, quad, variant)
