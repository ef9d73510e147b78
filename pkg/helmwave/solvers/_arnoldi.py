import numpy as np
from collections import namedtuple
from scipy.linalg import solve_triangular
from scipy.linalg.blas import zrotg

arnoldi_result = namedtuple(
    "arnoldi_result", "solution, history, converged, breakdown"
)

_BREAKDOWN = 1e-14


def arnoldi_solve(matvec, rhs, x0, max_iter, tol, precondition=None):
    """
        GMRES on A x = rhs started from x0: modified Gram-Schmidt Arnoldi
        with complex Givens rotations updating the least squares problem.
        With `precondition` the preconditioned vectors z_j = M_j(v_j) are
        stored and the solution is built from them (flexible GMRES), so M
        may change from one iteration to the next.

        Arguments:
            matvec: callable. x -> A x
            rhs: np.ndarray. Right hand side
            x0: np.ndarray. Initial guess
            max_iter: int. Maximum number of Arnoldi steps
            tol: float. Stop when |r_k| / |r_0| <= tol
            precondition: callable or None. Right preconditioner

        Returns:
            arnoldi_result: named tuple with the solution, the relative
                residual history (first entry 1.0), the convergence flag and
                whether the Krylov space became invariant
    """
    r0 = rhs - matvec(x0)
    beta = np.linalg.norm(r0)
    history = [1.0]
    if beta == 0:
        return arnoldi_result(x0, history, True, False)

    # bases grow with the iteration count
    V = [r0 / beta]
    Z = [] if precondition else V
    H = np.zeros((max_iter + 1, max_iter), dtype=complex)
    cosines = np.zeros(max_iter)
    sines = np.zeros(max_iter, dtype=complex)
    g = np.zeros(max_iter + 1, dtype=complex)

    g[0] = beta
    steps, converged, breakdown = 0, False, False

    for j in range(max_iter):
        if precondition:
            Z.append(precondition(V[j]))
        w = matvec(Z[j])
        w_norm = np.linalg.norm(w)

        # modified Gram-Schmidt
        for i in range(j + 1):
            H[i, j] = np.vdot(V[i], w)
            w = w - H[i, j] * V[i]
        h_next = np.linalg.norm(w)

        # previous rotations on the new column
        for i in range(j):
            top = cosines[i] * H[i, j] + sines[i] * H[i + 1, j]
            H[i + 1, j] = (
                -np.conj(sines[i]) * H[i, j] + cosines[i] * H[i + 1, j]
            )
            H[i, j] = top

        c, s = zrotg(H[j, j], h_next)
        cosines[j], sines[j] = np.real(c), s
        H[j, j] = cosines[j] * H[j, j] + s * h_next
        g[j + 1] = -np.conj(s) * g[j]
        g[j] = cosines[j] * g[j]

        steps = j + 1
        # an exact breakdown leaves a zero residual, kept positive
        history.append(max(abs(g[j + 1]) / beta, np.finfo(float).tiny))

        breakdown = h_next <= _BREAKDOWN * max(w_norm, np.finfo(float).tiny)
        if history[-1] <= tol or breakdown:
            converged = True
            break
        V.append(w / h_next)

    y = solve_triangular(H[:steps, :steps], g[:steps])
    solution = x0 + np.asarray(Z[:steps]).T @ y
    return arnoldi_result(solution, history, converged, breakdown)
