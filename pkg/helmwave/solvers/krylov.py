import time
import numpy as np
import pandas as pd
from collections import namedtuple
from loguru import logger
from scipy.sparse import csc_matrix, issparse
from scipy.sparse.linalg import splu, aslinearoperator

from helmwave.fixtures import TOL, MAX_ITER, DIRECT_RTOL
from helmwave.solvers._arnoldi import arnoldi_solve


class SingularMatrixError(ValueError):
    def __init__(self, message, level=None):
        self.level = level
        if level is not None:
            message = f"[level {level}] {message}"
        super().__init__(message)


class SolveReport(
    namedtuple(
        "SolveReport",
        "iterations, relative_residual_history, converged, wall_time",
    )
):
    """
        Outcome of a Krylov solve: iteration count, relative residual
        history |r_k| / |r_0| (starting at 1.0), convergence flag and
        wall time in seconds.
    """

    def __repr__(self):
        state = "converged" if self.converged else "not converged"
        return (
            f"{state} in {self.iterations} iterations "
            f"(relres={self.relative_residual_history[-1]:.2e}, "
            f"{self.wall_time:.2f}s)"
        )

    def label(self, max_iter=MAX_ITER):
        """ iteration count as reported in tables, '>max_iter' on failure """
        return str(self.iterations) if self.converged else f">{max_iter}"

    def to_dataframe(self):
        history = self.relative_residual_history
        return pd.DataFrame(
            dict(iter=np.arange(len(history)), relres=np.asarray(history))
        )

    def to_csv(self, filepath):
        self.to_dataframe().to_csv(filepath, index=False, lineterminator="\n")


def _operator(A):
    return aslinearoperator(A).matvec


def _initial_guess(rhs, x0):
    if x0 is None:
        return np.zeros_like(rhs, dtype=complex)
    return np.asarray(x0, dtype=complex)


# ---------------------------------------------------------------------------- #
#                                    krylov                                    #
# ---------------------------------------------------------------------------- #


def fgmres(
    A, rhs, preconditioner=None, tol=TOL, max_iter=MAX_ITER, x0=None,
):
    """
        Flexible GMRES with a right preconditioner that may change between
        iterations (e.g. a multilevel cycle with inner GMRES smoothing).
        Not restarted.

        Arguments:
            A: sparse matrix, array or LinearOperator
            rhs: np.ndarray
            preconditioner: callable. residual -> correction, identity if None
            tol: float. Relative residual tolerance
            max_iter: int. Maximum number of iterations
            x0: np.ndarray. Initial guess, zero by default

        Returns:
            x: np.ndarray
            report: SolveReport
    """
    if max_iter < 1:
        raise ValueError(f"max_iter must be >= 1, not {max_iter}")
    rhs = np.asarray(rhs, dtype=complex)
    start = time.perf_counter()

    result = arnoldi_solve(
        _operator(A),
        rhs,
        _initial_guess(rhs, x0),
        max_iter,
        tol,
        precondition=preconditioner or (lambda r: r.copy()),
    )
    report = SolveReport(
        len(result.history) - 1,
        result.history,
        result.converged,
        time.perf_counter() - start,
    )
    if not report.converged:
        logger.warning(f"FGMRES did not converge: {report}")
    else:
        logger.debug(f"FGMRES {report}")
    return result.solution, report


def gmres(A, rhs, m=None, tol=0.0, x0=None):
    """
        Plain GMRES(m), no restarts. With the default tol the full m steps
        are taken unless the Krylov space becomes invariant.

        Returns:
            x: np.ndarray
            report: SolveReport
    """
    rhs = np.asarray(rhs, dtype=complex)
    m = len(rhs) if m is None else m
    if m < 1:
        raise ValueError(f"GMRES needs at least one step, got m={m}")
    start = time.perf_counter()

    result = arnoldi_solve(
        _operator(A), rhs, _initial_guess(rhs, x0), m, tol
    )
    converged = result.converged or result.history[-1] <= tol
    report = SolveReport(
        len(result.history) - 1,
        result.history,
        converged,
        time.perf_counter() - start,
    )
    return result.solution, report


# ---------------------------------------------------------------------------- #
#                                    direct                                    #
# ---------------------------------------------------------------------------- #


class DirectSolver:
    def __init__(self, A, level=None):
        """
            Sparse LU factorization with partial pivoting, computed once and
            reused for every solve.
        """
        self.level = level
        self.shape = A.shape
        matrix = csc_matrix(A if issparse(A) else np.asarray(A), dtype=complex)
        try:
            self.factor = splu(matrix)
        except RuntimeError as error:
            raise SingularMatrixError(
                f"LU factorization failed: {error}", level=level
            )
        logger.debug(f"Factorized {self.shape} matrix (level {level})")

    def solve(self, rhs):
        x = self.factor.solve(np.asarray(rhs, dtype=complex))
        if not np.all(np.isfinite(x)):
            raise SingularMatrixError(
                "Matrix is singular to working precision", level=self.level
            )
        return x


def direct_solve(A, rhs):
    """
        Solves A x = rhs by sparse LU and checks the relative residual.

        Raises:
            SingularMatrixError when A is singular to working precision
    """
    rhs = np.asarray(rhs, dtype=complex)
    x = DirectSolver(A).solve(rhs)

    scale = max(np.linalg.norm(rhs), np.finfo(float).tiny)
    relres = np.linalg.norm(rhs - _operator(A)(x)) / scale
    if relres > DIRECT_RTOL:
        raise SingularMatrixError(
            f"Direct solve residual {relres:.2e} exceeds {DIRECT_RTOL:g}, "
            "matrix is singular to working precision"
        )
    return x
