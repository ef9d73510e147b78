import numpy as np
from loguru import logger
from scipy.sparse import diags

from helmwave.discretization import _forms
from helmwave.discretization.stencil import StencilCoefficients
from helmwave.fixtures import FLAVORS


def assemble(grid, problem, p, flavor="cip", beta=0.0):
    """
        Assembles the discrete Helmholtz operator of a given flavor and the
        load vector (f, v) + <g, v>.

        Arguments:
            grid: Grid
            problem: HelmholtzProblem
            p: int. Polynomial order, 1 or 2
            flavor: str. 'cip', 'fem' (σ = 0) or 'shifted' (FEM with κ²
                replaced by (1 + iβ)κ² in the volume term)
            beta: float. Shift of the shifted-Laplacian flavor

        Returns:
            A: scipy.sparse.csr_matrix, complex symmetric
            F: np.ndarray, complex load vector
    """
    if p not in (1, 2):
        raise ValueError(f"Polynomial order must be 1 or 2, not {p}")
    if flavor not in FLAVORS:
        raise ValueError(f"Unknown operator flavor: {flavor}")
    if problem.boundary == "dirichlet" and grid.dimension != 1:
        raise ValueError("Dirichlet boundary conditions are only used in 1D")

    sigma = problem.sigma if flavor == "cip" else 0.0
    if flavor == "cip" and sigma.imag < 0:
        raise ValueError(
            f"CIP penalty must have non-negative imaginary part, got {sigma}"
        )
    if flavor == "shifted" and beta < 0:
        raise ValueError(f"Shift beta must be non-negative, not {beta}")
    shift = 1 + 1j * beta if flavor == "shifted" else 1.0

    quadrature = _forms.ElementQuadrature(grid, p)
    kappa = problem.kappa(quadrature.points)

    A = quadrature.stiffness() - shift * quadrature.mass(kappa ** 2)
    F = quadrature.load(problem.f(quadrature.points))

    if problem.boundary == "robin":
        robin = _forms.boundary_mass(
            grid, p, lambda points: 1j * problem.kappa(points)
        )
        if robin is not None:
            A = A + robin
            F = F + _forms.boundary_load(grid, p, problem.g)

    if flavor == "cip":
        A = A + _forms.penalty(grid, p, sigma)

    if problem.boundary == "dirichlet" and not grid.periodic:
        free = np.setdiff1d(
            np.arange(grid.num_dofs(p)), grid.dof_map(p).boundary
        )
        A = A[free][:, free]
        F = F[free]

    A = A.tocsr().astype(complex)
    logger.debug(
        f"Assembled {flavor} P{p} operator on {grid}: "
        f"{A.shape[0]} dofs, {A.nnz} nonzeros"
    )
    return A, F.astype(complex)


def assemble_cip(grid, problem, p):
    return assemble(grid, problem, p, flavor="cip")


def assemble_fem(grid, problem, p):
    return assemble(grid, problem, p, flavor="fem")


def assemble_shifted_laplacian(grid, problem, p, beta):
    """ FEM discretization of -Δ - (1 + iβ)κ² with the Robin term unchanged """
    return assemble(grid, problem, p, flavor="shifted", beta=beta)[0]


def assemble_dirichlet_1d(N_cells, interval_length, t, sigma):
    """
        Pentadiagonal CIP matrix (1/h)[σ, R, 2S, R, σ] on the interior nodes
        of a uniformly divided interval with homogeneous Dirichlet
        conditions. The first and last diagonal entries read 2S - σ since
        the penalty has no site on the boundary vertices.

        Arguments:
            N_cells: int. Number of cells, the matrix has N_cells - 1 rows
            interval_length: float
            t: float. κh
            sigma: complex. Penalty weight σ = iγ

        Returns:
            A: scipy.sparse.csr_matrix (N, N)
    """
    N = N_cells - 1
    if N < 3:
        raise ValueError(
            f"Dirichlet matrix needs at least 3 unknowns, not {N}"
        )

    h = interval_length / N_cells
    stencil = StencilCoefficients(t, sigma)
    bands = [
        np.full(N - abs(k), value)
        for k, value in zip(range(-2, 3), stencil.diagonals)
    ]
    A = diags(
        bands,
        offsets=list(range(-2, 3)),
        shape=(N, N),
        format="lil",
        dtype=complex,
    )
    A[0, 0] -= stencil.sigma
    A[N - 1, N - 1] -= stencil.sigma
    return (A / h).tocsr()
