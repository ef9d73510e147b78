import numpy as np
import pytest

from helmwave.discretization import (
    Grid,
    HelmholtzProblem,
    StencilCoefficients,
    assemble,
    assemble_cip,
    assemble_fem,
    assemble_shifted_laplacian,
    assemble_dirichlet_1d,
)
from helmwave.discretization._forms import penalty
from helmwave.solvers.krylov import direct_solve
from helmwave.lfa.symbols import symbol

SIGMA = -0.08 + 0.03j


def _unit(value):
    return lambda points, *args: np.full(np.shape(points)[:-1], value)


def _max_difference(A, B):
    return np.abs((A - B).toarray()).max()


# ---------------------------------------------------------------------------- #
#                                      1D                                      #
# ---------------------------------------------------------------------------- #


@pytest.mark.parametrize("periodic", [True, False])
def test_interior_row_is_the_cip_stencil(periodic):
    grid = Grid(1, 16, periodic=periodic)
    t = 0.8
    problem = HelmholtzProblem(t / grid.h, sigma=SIGMA)
    A, _ = assemble_cip(grid, problem, 1)

    row = A.toarray()[8, 6:11] * grid.h
    assert np.allclose(row, StencilCoefficients(t, SIGMA).diagonals)
    assert A.nnz <= 5 * A.shape[0]


def test_shifted_laplacian_row():
    grid = Grid(1, 16, periodic=True)
    t, beta = 0.6, 0.5
    problem = HelmholtzProblem(t / grid.h, sigma=SIGMA)
    A = assemble_shifted_laplacian(grid, problem, 1, beta)

    shifted = StencilCoefficients(t, beta=beta)
    row = A.toarray()[4, 2:7] * grid.h
    assert np.allclose(row, [0, shifted.R, 2 * shifted.S, shifted.R, 0])


def test_diagonal_without_penalty():
    grid = Grid(1, 10, periodic=True)
    problem = HelmholtzProblem(0.8 / grid.h)
    A, _ = assemble_fem(grid, problem, 1)
    assert A[3, 3] * grid.h == pytest.approx(2 * (1 - 0.64 / 3))


def test_periodic_operator_is_diagonalized_by_fourier_modes():
    grid = Grid(1, 24, periodic=True)
    t = 0.5
    A, _ = assemble_cip(grid, HelmholtzProblem(t / grid.h, SIGMA), 1)
    stencil = StencilCoefficients(t, SIGMA)

    n = np.arange(24)
    for k in (0, 3, 12, 19):
        theta = 2 * np.pi * k / 24
        mode = np.exp(1j * theta * n)
        image = grid.h * (A @ mode)
        assert np.allclose(image, symbol(theta, stencil) * mode)


def test_dirichlet_matrix():
    t, h = 0.8, 0.004
    A = assemble_dirichlet_1d(2500, 10.0, t, SIGMA)
    assert A.shape == (2499, 2499)
    assert 10 / h - 1 == pytest.approx(2499)

    stencil = StencilCoefficients(t, SIGMA)
    dense = A[:6, :6].toarray() * h
    assert dense[0, 0] == pytest.approx(2 * stencil.S - SIGMA)
    assert dense[0, 1] == pytest.approx(stencil.R)
    assert dense[0, 2] == pytest.approx(SIGMA)
    assert np.allclose(dense[3, 1:6], stencil.diagonals)
    assert A[2498, 2498] * h == pytest.approx(2 * stencil.S - SIGMA)

    with pytest.raises(ValueError):
        assemble_dirichlet_1d(3, 1.0, t, SIGMA)


def test_dirichlet_assembly_matches_closed_form():
    grid = Grid(1, 10)
    kappa = 8.0
    problem = HelmholtzProblem(kappa, sigma=SIGMA, boundary="dirichlet")
    A, F = assemble(grid, problem, 1)

    expected = assemble_dirichlet_1d(10, 1.0, kappa * grid.h, SIGMA)
    assert A.shape == (9, 9)
    assert len(F) == 9
    assert _max_difference(A, expected) < 1e-10


def test_dirichlet_matrix_is_solvable():
    A = assemble_dirichlet_1d(2500, 10.0, 0.8, 0.01j)
    rhs = np.ones(A.shape[0], dtype=complex)
    x = direct_solve(A, rhs)
    assert np.linalg.norm(A @ x - rhs) < 1e-8 * np.linalg.norm(rhs)


# ---------------------------------------------------------------------------- #
#                                      2D                                      #
# ---------------------------------------------------------------------------- #


@pytest.mark.parametrize("p", [1, 2])
def test_complex_symmetric(p):
    A, _ = assemble(Grid(2, 4), HelmholtzProblem.bessel(10.0, p=p), p)
    assert _max_difference(A, A.T) < 1e-12
    assert A.dtype == complex


def test_small_grid_sizes():
    grid = Grid(2, 2)
    A, F = assemble(grid, HelmholtzProblem.bessel(5.0), 1)
    assert A.shape == (9, 9) and F.shape == (9,)

    A, _ = assemble(grid, HelmholtzProblem.bessel(5.0, p=2), 2)
    assert A.shape == (25, 25)


@pytest.mark.parametrize("p", [1, 2])
def test_flavor_reductions(p):
    grid = Grid(2, 4)
    problem = HelmholtzProblem.bessel(12.0, p=p)

    fem, F = assemble_fem(grid, problem, p)
    cip, F_cip = assemble_cip(grid, problem.with_sigma(0.0), p)
    shifted = assemble_shifted_laplacian(grid, problem, p, 0.0)

    assert _max_difference(fem, cip) < 1e-12
    assert _max_difference(fem, shifted) < 1e-12
    assert np.allclose(F, F_cip)

    penalized, _ = assemble_cip(grid, problem, p)
    assert _max_difference(penalized, fem) > 1e-6


@pytest.mark.parametrize("p", [1, 2])
def test_total_integrals(p):
    """ constant fields: 1ᵀA1 = -|Ω| + i|∂Ω|, ΣF = |Ω|, Σ<1, v> = |∂Ω| """
    grid = Grid(2, 4)
    problem = HelmholtzProblem(1.0, source=_unit(1.0))
    A, F = assemble_fem(grid, problem, p)
    ones = np.ones(A.shape[0])
    assert ones @ (A @ ones) == pytest.approx(-1 + 4j)
    assert F.sum() == pytest.approx(1.0)

    boundary = HelmholtzProblem(1.0, boundary_data=_unit(1.0))
    _, G = assemble_fem(grid, boundary, p)
    assert G.sum() == pytest.approx(4.0)


def test_stiffness_annihilates_constants():
    A, _ = assemble_fem(Grid(2, 4), HelmholtzProblem(0.0), 2)
    assert np.allclose(A @ np.ones(A.shape[0]), 0, atol=1e-12)


@pytest.mark.parametrize("p", [1, 2])
def test_penalty_vanishes_on_smooth_functions(p):
    grid = Grid(2, 4)
    x, y = grid.dof_map(p).points.T
    values = 1 + 2 * x - 3 * y
    if p == 2:
        values = values + x ** 2 - x * y

    J = penalty(grid, p, 1.0)
    assert np.allclose(J @ values, 0, atol=1e-10)

    kink = np.abs(x)
    assert np.linalg.norm(J @ kink) > 1e-3


@pytest.mark.parametrize("p", [1, 2])
def test_discretization_error_decreases(p):
    errors = []
    for cells in (8, 16):
        grid = Grid(2, cells)
        problem = HelmholtzProblem.bessel(4.0, p=p)
        A, F = assemble(grid, problem, p)
        u = direct_solve(A, F)
        exact = problem.exact(grid.dof_map(p).points)
        errors.append(np.abs(u - exact).max() / np.abs(exact).max())
    assert errors[1] < 0.6 * errors[0]


def test_invalid_arguments():
    grid = Grid(2, 2)
    problem = HelmholtzProblem.bessel(5.0)
    with pytest.raises(ValueError):
        assemble(grid, problem, 3)
    with pytest.raises(ValueError):
        assemble(grid, problem, 1, flavor="dg")
    with pytest.raises(ValueError):
        assemble(grid, problem, 1, flavor="shifted", beta=-1.0)
    with pytest.raises(ValueError):
        assemble(grid, problem.with_sigma(-0.01j), 1)
    with pytest.raises(ValueError):
        assemble(grid, HelmholtzProblem(5.0, boundary="dirichlet"), 1)
