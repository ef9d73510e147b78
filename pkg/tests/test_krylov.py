import numpy as np
import pytest
from scipy.sparse import identity, csr_matrix, diags
from scipy.sparse.linalg import LinearOperator

from helmwave.solvers.krylov import (
    fgmres,
    gmres,
    direct_solve,
    DirectSolver,
    SingularMatrixError,
)
from helmwave.discretization import assemble_dirichlet_1d


def _system(rng, n, shift=3.0):
    A = shift * np.eye(n) + (
        rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    ) / np.sqrt(2 * n)
    rhs = rng.normal(size=n) + 1j * rng.normal(size=n)
    return A, rhs


# ---------------------------------------------------------------------------- #
#                                    fgmres                                    #
# ---------------------------------------------------------------------------- #


def test_identity_converges_in_one_iteration():
    rhs = np.arange(1, 6, dtype=complex)
    x, report = fgmres(identity(5, format="csr"), rhs)
    assert report.iterations == 1
    assert np.allclose(x, rhs)
    assert report.label() == "1"


def test_diagonal_system():
    x, report = fgmres(diags([1.0, 2.0]), np.ones(2))
    assert report.iterations <= 2
    assert np.allclose(x, [1, 0.5])


def test_converges_with_decreasing_history(rng):
    A, rhs = _system(rng, 60)
    x, report = fgmres(A, rhs, tol=1e-10)
    history = np.asarray(report.relative_residual_history)

    assert report.converged
    assert history[0] == 1.0 and history[-1] <= 1e-10
    assert np.all(np.diff(history) <= 1e-12)
    assert np.linalg.norm(A @ x - rhs) <= 1e-9 * np.linalg.norm(rhs)


def test_exact_preconditioner():
    A, rhs = _system(np.random.default_rng(3), 30, shift=0.5)
    inverse = np.linalg.inv(A)
    x, report = fgmres(A, rhs, preconditioner=lambda r: inverse @ r)
    assert report.iterations == 1
    assert np.allclose(A @ x, rhs)


def test_flexible_preconditioner(rng):
    """ a preconditioner that changes every iteration """
    A, rhs = _system(rng, 40)
    calls = []

    def changing(r):
        calls.append(1)
        return r / (1 + len(calls) % 3)

    x, report = fgmres(A, rhs, preconditioner=changing, tol=1e-10)
    assert report.converged
    assert len(calls) == report.iterations
    assert np.linalg.norm(A @ x - rhs) <= 1e-9 * np.linalg.norm(rhs)


def test_not_converged(rng):
    A = rng.normal(size=(50, 50)) + 1j * rng.normal(size=(50, 50))
    _, report = fgmres(A, np.ones(50), max_iter=2)
    assert not report.converged
    assert report.iterations == 2
    assert report.label(2) == ">2"

    with pytest.raises(ValueError):
        fgmres(A, np.ones(50), max_iter=0)


def test_fixed_preconditioner_matches_right_preconditioned_gmres(rng):
    A, rhs = _system(rng, 30)
    d = np.diag(A)
    x, flexible = fgmres(A, rhs, preconditioner=lambda r: r / d, tol=1e-10)

    right = LinearOperator(
        A.shape, matvec=lambda y: A @ (y / d), dtype=complex
    )
    y, plain = gmres(right, rhs, m=30, tol=1e-10)

    assert flexible.iterations == plain.iterations
    assert np.allclose(
        flexible.relative_residual_history,
        plain.relative_residual_history,
        rtol=0,
        atol=1e-12,
    )
    assert np.allclose(x, y / d)


def test_history_is_invariant_to_complex_scaling(rng):
    A, rhs = _system(rng, 20)
    x0 = rng.normal(size=20) + 1j * rng.normal(size=20)
    d = np.diag(A)
    scale = 2.5 - 1.5j

    _, report = fgmres(A, rhs, preconditioner=lambda r: r / d, x0=x0)
    _, scaled = fgmres(
        A, scale * rhs, preconditioner=lambda r: r / d, x0=scale * x0
    )
    assert report.iterations == scaled.iterations
    assert np.allclose(
        report.relative_residual_history,
        scaled.relative_residual_history,
        rtol=0,
        atol=1e-12,
    )


def test_zero_rhs():
    x, report = fgmres(identity(4), np.zeros(4))
    assert report.converged and report.iterations == 0
    assert np.all(x == 0)


def test_residual_history_file(tmp_path, rng):
    A, rhs = _system(rng, 20)
    _, report = fgmres(A, rhs)
    report.to_csv(tmp_path / "history.csv")
    lines = (tmp_path / "history.csv").read_text().splitlines()
    assert lines[0] == "iter,relres"
    assert len(lines) == report.iterations + 2


# ---------------------------------------------------------------------------- #
#                                     gmres                                    #
# ---------------------------------------------------------------------------- #


def test_gmres_finite_termination(rng):
    A, rhs = _system(rng, 25, shift=0.2)
    x, _ = gmres(A, rhs, m=25)
    assert np.linalg.norm(A @ x - rhs) <= 1e-8 * np.linalg.norm(rhs)


def test_gmres_one_step_on_identity():
    rhs = np.array([1.0, -2.0, 3j])
    x, report = gmres(identity(3), rhs, m=1)
    assert np.allclose(x, rhs)


def test_exact_breakdown_keeps_the_history_positive():
    x, report = gmres(identity(3), np.array([1.0, 0.0, 0.0]), m=3)
    history = np.asarray(report.relative_residual_history)
    assert report.iterations == 1
    assert np.all(history > 0)
    assert history[-1] == np.finfo(float).tiny
    assert np.allclose(x, [1, 0, 0])


@pytest.mark.parametrize("seed", range(50))
def test_gmres_history_is_monotone(seed):
    A, rhs = _system(np.random.default_rng(seed), 15, shift=0.3)
    x, report = gmres(A, rhs, m=10)
    history = np.asarray(report.relative_residual_history)
    assert np.all(np.diff(history) <= 1e-12)

    relres = np.linalg.norm(rhs - A @ x) / np.linalg.norm(rhs)
    assert relres == pytest.approx(history[-1], rel=1e-6, abs=1e-12)


def test_gmres_rejects_zero_steps():
    with pytest.raises(ValueError):
        gmres(identity(2), np.ones(2), m=0)


# ---------------------------------------------------------------------------- #
#                                    direct                                    #
# ---------------------------------------------------------------------------- #


def test_direct_solve(rng):
    A, rhs = _system(rng, 100, shift=0.0)
    x = direct_solve(csr_matrix(A), rhs)
    assert np.linalg.norm(A @ x - rhs) <= 1e-10 * np.linalg.norm(rhs)
    assert np.allclose(direct_solve(identity(4), np.ones(4)), 1)


def test_direct_solve_dirichlet_matrix():
    A = assemble_dirichlet_1d(2500, 10.0, 0.8, -0.085 + 0.01j)
    rhs = np.ones(A.shape[0])
    x = direct_solve(A, rhs)
    assert np.linalg.norm(A @ x - rhs) <= 1e-8 * np.linalg.norm(rhs)


def test_singular_matrix():
    with pytest.raises(SingularMatrixError):
        direct_solve(csr_matrix(np.ones((2, 2))), np.ones(2))

    with pytest.raises(SingularMatrixError) as error:
        DirectSolver(csr_matrix(np.zeros((3, 3))), level=0)
    assert error.value.level == 0
