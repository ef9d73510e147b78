import numpy as np
from loguru import logger
from scipy.sparse import csr_matrix

from helmwave.fixtures import ALPHA, OMEGA, SMOOTHERS
from helmwave.solvers import _sweeps
from helmwave.solvers.krylov import gmres


def _diagonal(A):
    diagonal = A.diagonal()
    zeros = np.where(diagonal == 0)[0]
    if len(zeros):
        raise ValueError(f"Zero diagonal entry in row {zeros[0]}")
    return diagonal


# ---------------------------------------------------------------------------- #
#                                  relaxations                                 #
# ---------------------------------------------------------------------------- #


def jacobi_sweep(A, x, rhs, omega=OMEGA, steps=1):
    """
        Weighted Jacobi x <- x + ω D^-1 (rhs - A x), `steps` times.

        Arguments:
            A: sparse matrix
            x: np.ndarray. Initial iterate, not modified
            rhs: np.ndarray
            omega: float. Relaxation weight
            steps: int. Number of sweeps

        Returns:
            x: np.ndarray. Relaxed iterate
    """
    inverse_diagonal = omega / _diagonal(A)
    x = np.array(x, dtype=complex)
    for _ in range(steps):
        x += inverse_diagonal * (rhs - A @ x)
    return x


def gauss_seidel_sweep(A, x, rhs, steps=1, direction="forward"):
    """
        Lexicographic Gauss-Seidel in DOF order ('forward') or in reverse
        order ('backward'). For complex symmetric A the backward sweep is
        the transpose of the forward one.
    """
    if direction not in ("forward", "backward"):
        raise ValueError(f"Unknown Gauss-Seidel direction: {direction}")
    _diagonal(A)

    sweep = (
        _sweeps.forward_sweep
        if direction == "forward"
        else _sweeps.backward_sweep
    )
    indptr, indices, data = _sweeps.csr_arrays(csr_matrix(A))
    rhs = np.ascontiguousarray(rhs, dtype=np.complex128)
    x = np.array(x, dtype=np.complex128)
    for _ in range(steps):
        sweep(indptr, indices, data, x, rhs)
    return x


def gmres_relax(A, rhs, m):
    """
        m un-restarted GMRES steps on A w = rhs from a zero initial guess.
        An Arnoldi breakdown returns the (exact) current iterate.
    """
    if m < 1:
        raise ValueError(f"GMRES relaxation needs m >= 1, not {m}")
    w, _ = gmres(A, rhs, m=m)
    return w


# ---------------------------------------------------------------------------- #
#                                 classification                               #
# ---------------------------------------------------------------------------- #


def classify_levels(hierarchy, kappa, p, alpha=ALPHA):
    """
        Splits the levels 1..L in S_L (κh_l/p < α, classical smoothing)
        and G_L (GMRES smoothing).

        Arguments:
            hierarchy: GridHierarchy or list of mesh sizes per level
            kappa: float. Largest wave number
            p: int. Polynomial order
            alpha: float. Threshold

        Returns:
            S_L: list of int
            G_L: list of int
    """
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, not {alpha}")
    h = hierarchy.h if hasattr(hierarchy, "h") else list(hierarchy)

    S_L, G_L = [], []
    for level in range(1, len(h)):
        (S_L if kappa * h[level] / p < alpha else G_L).append(level)
    return S_L, G_L


class SmootherPlan:
    def __init__(
        self, num_levels, S_L, omega=OMEGA, smoother="jacobi", alpha=ALPHA
    ):
        """
            Per-level relaxation choice. Level 0 is solved directly, levels
            in S_L use the classical smoother and all others GMRES.

            Arguments:
                num_levels: int. L + 1
                S_L: list of int. Levels with classical smoothing
                omega: float. Jacobi weight
                smoother: str. 'jacobi' or 'gs'
                alpha: float. Threshold the classification came from
        """
        if smoother not in SMOOTHERS:
            raise ValueError(f"Unknown smoother: {smoother}")
        if not 0 < omega <= 1:
            raise ValueError(f"Jacobi weight must be in (0, 1], not {omega}")

        self.omega = omega
        self.alpha = alpha
        self.smoother = smoother
        self.S_L = sorted(int(level) for level in S_L)
        if any(not 1 <= level < num_levels for level in self.S_L):
            raise ValueError(
                f"S_L must contain levels in [1, {num_levels - 1}], "
                f"got {self.S_L}"
            )
        self.G_L = [
            level for level in range(1, num_levels) if level not in self.S_L
        ]
        self.tags = ["direct"] + [
            smoother if level in self.S_L else "gmres"
            for level in range(1, num_levels)
        ]

    def __repr__(self):
        return (
            f"smoothing plan | S_L={self.S_L} G_L={self.G_L} "
            f"| {self.smoother} omega={self.omega:g} alpha={self.alpha:g}"
        )

    def __len__(self):
        return len(self.tags)

    def __getitem__(self, level):
        return self.tags[level]

    @classmethod
    def from_hierarchy(
        cls, hierarchy, kappa, p, alpha=ALPHA, omega=OMEGA, smoother="jacobi"
    ):
        S_L, _ = classify_levels(hierarchy, kappa, p, alpha=alpha)
        plan = cls(
            len(hierarchy.h if hasattr(hierarchy, "h") else hierarchy),
            S_L,
            omega=omega,
            smoother=smoother,
            alpha=alpha,
        )
        logger.debug(f"kappa={kappa:g}, P{p}: {plan}")
        return plan

    @property
    def linear(self):
        """ True when no level relies on GMRES relaxation """
        return not self.G_L

    def relax(self, A, rhs, steps, direction="forward"):
        """
            `steps` classical smoothing steps on A w = rhs from a zero
            initial guess.
        """
        zero = np.zeros(A.shape[0], dtype=complex)
        if self.smoother == "jacobi":
            return jacobi_sweep(A, zero, rhs, omega=self.omega, steps=steps)
        return gauss_seidel_sweep(
            A, zero, rhs, steps=steps, direction=direction
        )
