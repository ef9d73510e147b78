import numpy as np
import pandas as pd
from collections import namedtuple
from loguru import logger

from helmwave.fixtures import NUM_THETA, THETA_EPS, OMEGA
from helmwave.discretization.assembly import assemble_dirichlet_1d
from helmwave.discretization.stencil import StencilCoefficients
from helmwave.lfa.symbols import (
    ResonanceError,
    smoother_symbols,
    optimal_sigma,
)
from helmwave.solvers.smoothers import (
    jacobi_sweep,
    gauss_seidel_sweep,
    gmres_relax,
)

# a curve over frequencies and its largest value
Sweep = namedtuple("Sweep", "thetas, rho, supremum")

SWEEP_COLUMNS = [
    "theta0",
    "rho",
    "variant",
    "t",
    "sigma_re",
    "sigma_im",
    "omega",
    "beta",
]


def theta_samples(num_samples=NUM_THETA):
    """ uniform samples of (-π/2, π/2], π/2 included """
    if num_samples < 2:
        raise ValueError(f"Need at least 2 samples, not {num_samples}")
    k = np.arange(num_samples)
    return -np.pi / 2 + np.pi * (k + 1) / num_samples


def full_circle(num_samples=NUM_THETA):
    """ uniform samples of (-π, π], π included """
    if num_samples < 2:
        raise ValueError(f"Need at least 2 samples, not {num_samples}")
    k = np.arange(num_samples)
    return -np.pi + 2 * np.pi * (k + 1) / num_samples


# ---------------------------------------------------------------------------- #
#                                spectral radius                               #
# ---------------------------------------------------------------------------- #


def spectral_radius_sweep(block_builder, params, num_samples=NUM_THETA):
    """
        Spectral radius of the Fourier blocks over the low frequencies.
        At a resonance the frequency is shifted by a tiny amount; if the
        shifted one resonates too the sample is kept with ρ = inf.

        Arguments:
            block_builder: callable. (theta0, params) -> SymbolBlock
            params: SymbolParams
            num_samples: int

        Returns:
            Sweep: named tuple (thetas, rho, supremum)
    """
    thetas = theta_samples(num_samples)
    rho = np.empty(num_samples)
    for i, theta in enumerate(thetas):
        for shift in (0.0, THETA_EPS):
            try:
                rho[i] = block_builder(theta + shift, params).spectral_radius
                break
            except ResonanceError as error:
                logger.debug(f"Resonance in the sweep: {error}")
        else:
            logger.warning(f"Resonant frequency theta0={theta:.6g} excluded")
            rho[i] = np.inf

    return Sweep(thetas, rho, float(np.max(rho)))


def sweep_dataframe(sweep, params, variant):
    """ sweep as a table with the columns of the curve CSV files """
    return pd.DataFrame(
        dict(
            theta0=sweep.thetas,
            rho=sweep.rho,
            variant=variant,
            t=params.t,
            sigma_re=params.sigma.real,
            sigma_im=params.sigma.imag,
            omega=params.omega,
            beta=params.beta,
        ),
        columns=SWEEP_COLUMNS,
    )


def smoother_curve(
    t, sigma=0.0, smoother="jacobi", omega=OMEGA, num_samples=NUM_THETA
):
    """
        |S(θ)| of a classical smoother of the CIP stencil over (-π, π].

        Returns:
            Sweep
    """
    thetas = full_circle(num_samples)
    iteration, _ = smoother_symbols(
        thetas, StencilCoefficients(t, sigma), smoother=smoother, omega=omega
    )
    values = np.abs(iteration)
    return Sweep(thetas, values, float(np.max(values)))


# ---------------------------------------------------------------------------- #
#                                 amplification                                #
# ---------------------------------------------------------------------------- #


def amplification_experiment(
    kappa=200,
    h=0.004,
    sigma=None,
    smoother="jacobi",
    m=1,
    theta_samples=NUM_THETA,
    omega=OMEGA,
    length=10.0,
):
    """
        Damping of one smoothing step on a Fourier mode for the Dirichlet
        CIP matrix of (0, length). Every mode u0 = e^{iθ x/h} is relaxed
        toward the zero solution of A u = 0 and ρ(θ) = |u1| / |u0|.
        GMRES solves A e = -A u0 with m steps from a zero guess and sets
        u1 = u0 + e.

        Arguments:
            kappa: float. Wave number
            h: float. Mesh size
            sigma: complex. Penalty, σ_o(κh) by default
            smoother: str. 'jacobi', 'gs' or 'gmres'
            m: int. Steps of the smoother
            theta_samples: int. Frequencies over (-π, π]
            omega: float. Jacobi weight
            length: float. Interval length

        Returns:
            Sweep
    """
    if smoother not in ("jacobi", "gs", "gmres"):
        raise ValueError(f"Unknown smoother: {smoother}")
    t = kappa * h
    sigma = optimal_sigma(t) if sigma is None else complex(sigma)
    cells = int(round(length / h))
    A = assemble_dirichlet_1d(cells, length, t, sigma)
    zero = np.zeros(A.shape[0], dtype=complex)
    nodes = np.arange(1, A.shape[0] + 1)

    thetas = full_circle(theta_samples)
    rho = np.empty(len(thetas))
    for i, theta in enumerate(thetas):
        u0 = np.exp(1j * theta * nodes)
        if smoother == "jacobi":
            u1 = jacobi_sweep(A, u0, zero, omega=omega, steps=m)
        elif smoother == "gs":
            u1 = gauss_seidel_sweep(A, u0, zero, steps=m)
        else:
            u1 = u0 + gmres_relax(A, -(A @ u0), m)
        rho[i] = np.linalg.norm(u1) / np.linalg.norm(u0)

    logger.debug(
        f"{smoother}({m}) amplification, t={t:.4g} sigma={sigma:.4g}: "
        f"max {rho.max():.4f}"
    )
    return Sweep(thetas, rho, float(np.max(rho)))
