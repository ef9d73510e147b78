import numpy as np
import pandas as pd
from collections import namedtuple
from loguru import logger

from helmwave.fixtures import (
    ALPHA,
    OMEGA,
    MU,
    M1,
    M2,
    DENSE_CAP,
    SCHEMES,
    scheme as scheme_tuple,
)
from helmwave.discretization.assembly import assemble
from helmwave.discretization.transfer import composite_prolongations
from helmwave.solvers.krylov import DirectSolver
from helmwave.solvers.smoothers import SmootherPlan, gmres_relax

ALGORITHMS = ("alg1", "alg2")

# fine iterate after `stage_index` stages of a sweep
CycleState = namedtuple("CycleState", "v, stage_index")

TRACE_COLUMNS = ["sweep", "stage", "level", "kind", "residual"]


class CyclePlan:
    def __init__(
        self,
        operators,
        prolongations,
        smoother_plan,
        algorithm="alg1",
        scheme="alg1",
        mu=MU,
        m1=M1,
        m2=M2,
        smoothing_steps=None,
        rhs=None,
    ):
        """
            Everything a multilevel sweep needs: the per-level operators of
            each flavor, the prolongations to the finest level and the
            relaxation choice on every level.

            Arguments:
                operators: dict. flavor -> {level: sparse matrix}, holding
                    at least the operators the scheme asks for
                prolongations: list. P_l from level l to the finest level
                smoother_plan: SmootherPlan
                algorithm: str. 'alg1' or 'alg2', fixes the step counts
                scheme: str or scheme. Operator flavor for the fine residual,
                    the classical smoothing and the GMRES corrections
                mu: float or list. Correction scaling per level, in [0, 1]
                m1, m2: int. GMRES steps on the down and up passes
                smoothing_steps: int. Overrides the classical step count
                rhs: np.ndarray. Fine load vector, when built from a problem
        """
        if algorithm not in ALGORITHMS:
            raise ValueError(f"Unknown algorithm: {algorithm}")
        if isinstance(scheme, str):
            if scheme not in SCHEMES:
                raise ValueError(f"Unknown scheme: {scheme}")
            scheme = SCHEMES[scheme]
        if m1 < 1 or m2 < 1:
            raise ValueError(f"GMRES step counts must be >= 1, not {m1, m2}")
        if smoothing_steps is not None and smoothing_steps < 1:
            raise ValueError(
                f"smoothing_steps must be >= 1, not {smoothing_steps}"
            )

        self.L = len(prolongations) - 1
        if len(smoother_plan) != self.L + 1:
            raise ValueError(
                f"Smoother plan has {len(smoother_plan)} levels, "
                f"prolongations {self.L + 1}"
            )

        self.mu = (
            [float(mu)] * (self.L + 1) if np.isscalar(mu) else list(mu)
        )
        if len(self.mu) != self.L + 1:
            raise ValueError(
                f"Expected {self.L + 1} scalings mu, got {len(self.mu)}"
            )
        if any(not 0 <= m <= 1 for m in self.mu):
            raise ValueError(f"Scalings mu must lie in [0, 1], got {self.mu}")

        self.operators = operators
        self.prolongations = prolongations
        self.smoother_plan = smoother_plan
        self.algorithm = algorithm
        self.scheme = scheme_tuple(*scheme)
        self.m1, self.m2 = m1, m2
        self.smoothing_steps = smoothing_steps
        self.rhs = rhs

        self._check_operators()
        self.A = self.operator(self.scheme.residual, self.L)
        self.coarse_solver = DirectSolver(
            self.operator(self.scheme.correction, 0), level=0
        )

        self.trace = None
        self._sweep_count = 0

    def __repr__(self):
        return (
            f"{self.algorithm} cycle | scheme {tuple(self.scheme)} "
            f"| L={self.L} | mu={self.mu} m1={self.m1} m2={self.m2} "
            f"| {self.smoother_plan}"
        )

    def __len__(self):
        return self.L + 1

    @property
    def num_dofs(self):
        return self.A.shape[0]

    @property
    def linear(self):
        return self.smoother_plan.linear

    def operator(self, flavor, level):
        try:
            return self.operators[flavor][level]
        except KeyError:
            raise ValueError(
                f"No {flavor} operator available on level {level}"
            )

    def _check_operators(self):
        for level, tag in enumerate(self.smoother_plan.tags):
            if tag == "direct" or tag == "gmres":
                self.operator(self.scheme.correction, level)
            else:
                self.operator(self.scheme.smoothing, level)

    # ------------------------------ step counts ----------------------------- #
    def classical_steps(self):
        if self.smoothing_steps is not None:
            return self.smoothing_steps
        return 1 if self.algorithm == "alg1" else self.m1

    def gmres_steps(self, upward):
        if upward and self.algorithm == "alg2":
            return self.m2
        return self.m1

    # --------------------------------- trace -------------------------------- #
    def start_trace(self):
        self.trace = []
        self._sweep_count = 0

    def trace_dataframe(self):
        return pd.DataFrame(self.trace or [], columns=TRACE_COLUMNS)

    # -------------------------------- factory ------------------------------- #
    @classmethod
    def from_problem(
        cls,
        hierarchy,
        problem,
        p,
        algorithm="alg1",
        scheme=None,
        beta=0.0,
        mu=MU,
        m1=M1,
        m2=M2,
        alpha=ALPHA,
        omega=OMEGA,
        smoother="jacobi",
        smoothing_steps=None,
    ):
        """
            Assembles the operators a scheme needs on a grid hierarchy and
            the transfers between levels.

            Arguments:
                hierarchy: GridHierarchy
                problem: HelmholtzProblem
                p: int. Polynomial order
                algorithm: str. 'alg1' or 'alg2'
                scheme: str. Key of SCHEMES, defaults to the algorithm's own
                beta: float. Shift of the shifted-Laplacian flavor
                alpha, omega, smoother: see SmootherPlan

            Returns:
                plan: CyclePlan, with the fine load vector in plan.rhs
        """
        scheme = scheme or algorithm
        if isinstance(scheme, str):
            if scheme not in SCHEMES:
                raise ValueError(f"Unknown scheme: {scheme}")
            scheme = SCHEMES[scheme]
        smoother_plan = SmootherPlan.from_hierarchy(
            hierarchy,
            problem.kappa_max,
            p,
            alpha=alpha,
            omega=omega,
            smoother=smoother,
        )

        # which flavor is needed on which level
        needed = {(scheme.residual, hierarchy.L), (scheme.correction, 0)}
        for level, tag in enumerate(smoother_plan.tags[1:], start=1):
            flavor = scheme.correction if tag == "gmres" else scheme.smoothing
            needed.add((flavor, level))

        operators, rhs = {}, None
        for flavor, level in sorted(needed, key=lambda item: item[1]):
            A, F = assemble(
                hierarchy[level], problem, p, flavor=flavor, beta=beta
            )
            operators.setdefault(flavor, {})[level] = A
            if level == hierarchy.L:
                rhs = F

        prolongations = composite_prolongations(hierarchy, p)
        if problem.boundary == "dirichlet" and not hierarchy.periodic:
            free = [_free_dofs(grid, p) for grid in hierarchy]
            prolongations = [
                P[free[-1]][:, free[level]].tocsr()
                for level, P in enumerate(prolongations)
            ]

        plan = cls(
            operators,
            prolongations,
            smoother_plan,
            algorithm=algorithm,
            scheme=scheme,
            mu=mu,
            m1=m1,
            m2=m2,
            smoothing_steps=smoothing_steps,
            rhs=rhs,
        )
        logger.debug(f"Cycle plan for {problem}: {plan}")
        return plan


def _free_dofs(grid, p):
    return np.setdiff1d(np.arange(grid.num_dofs(p)), grid.dof_map(p).boundary)


# ---------------------------------------------------------------------------- #
#                                     cycle                                    #
# ---------------------------------------------------------------------------- #


def _stages(L, sweep):
    """ (stage_index, level, upward) in execution order """
    stages = [(level + 1, level, False) for level in range(L + 1)]
    if sweep == "full":
        stages += [
            (2 * L + 2 - level, level, True) for level in range(L, -1, -1)
        ]
    return stages


def _correction(plan, level, r_level, upward):
    tag = plan.smoother_plan[level]
    if tag == "direct":
        return plan.coarse_solver.solve(r_level)
    elif tag == "gmres":
        return gmres_relax(
            plan.operator(plan.scheme.correction, level),
            r_level,
            plan.gmres_steps(upward),
        )
    else:
        return plan.smoother_plan.relax(
            plan.operator(plan.scheme.smoothing, level),
            r_level,
            plan.classical_steps(),
            direction="backward" if upward else "forward",
        )


def iterate_cycle(plan, fine_rhs, v_in, sweep="full"):
    """
        Runs the non-recursive multilevel sweep, yielding the fine iterate
        after every stage. Each stage restricts the current fine residual
        F - A_L v straight to its level l, relaxes there and adds the
        scaled prolongated correction: v <- v + μ_l P_l w.

        Arguments:
            plan: CyclePlan
            fine_rhs: np.ndarray. F on the finest level
            v_in: np.ndarray. Initial fine iterate
            sweep: str. 'full' (levels 0..L then L..0) or 'down' (0..L)

        Yields:
            CycleState: the initial state, then one per stage
    """
    if sweep not in ("full", "down"):
        raise ValueError(f"Unknown sweep: {sweep}")
    fine_rhs = np.asarray(fine_rhs, dtype=complex)
    v = np.array(v_in, dtype=complex)
    if fine_rhs.shape != (plan.num_dofs,) or v.shape != (plan.num_dofs,):
        raise ValueError(
            f"Cycle expects vectors of size {plan.num_dofs}, got "
            f"{fine_rhs.shape} and {v.shape}"
        )

    if plan.trace is not None:
        plan._sweep_count += 1
    yield CycleState(v.copy(), 0)

    for stage, level, upward in _stages(plan.L, sweep):
        residual = fine_rhs - plan.A @ v
        if plan.trace is not None:
            norm = np.linalg.norm(residual)
            kind = plan.smoother_plan[level]
            plan.trace.append((plan._sweep_count, stage, level, kind, norm))
            logger.debug(
                f"stage {stage} level {level} ({kind}): |r|={norm:.3e}"
            )

        if plan.mu[level] == 0:
            yield CycleState(v.copy(), stage)
            continue

        P = plan.prolongations[level]
        w = _correction(plan, level, P.T @ residual, upward)
        v = v + plan.mu[level] * (P @ w)
        yield CycleState(v.copy(), stage)


def apply_cycle(plan, fine_rhs, v_in, sweep="full"):
    """ one multilevel sweep, returns v_{2L+2} (or v_{L+1} for 'down') """
    for state in iterate_cycle(plan, fine_rhs, v_in, sweep=sweep):
        pass
    return state.v


def preconditioner(plan):
    """
        The cycle as a right preconditioner: residual -> correction from a
        zero initial guess.
    """
    zero = np.zeros(plan.num_dofs, dtype=complex)
    return lambda residual: apply_cycle(plan, residual, zero)


def error_operator_dense(plan, sweep="full", cap=DENSE_CAP):
    """
        Dense error propagation matrix of a linear cycle, probed column by
        column: column j is the cycle applied to the initial error e_j with a
        zero right hand side.

        Arguments:
            plan: CyclePlan with no GMRES level
            sweep: str. 'full' or 'down'
            cap: int. Largest fine DOF count accepted

        Returns:
            E: np.ndarray (n, n) complex
    """
    if not plan.linear:
        raise ValueError(
            f"GMRES smoothing on levels {plan.smoother_plan.G_L} makes the "
            "cycle nonlinear, it has no error operator"
        )
    n = plan.num_dofs
    if n > cap:
        raise ValueError(f"{n} fine DOFs exceed the dense cap of {cap}")

    zero = np.zeros(n, dtype=complex)
    E = np.empty((n, n), dtype=complex)
    for j in range(n):
        unit = np.zeros(n, dtype=complex)
        unit[j] = 1.0
        E[:, j] = apply_cycle(plan, zero, unit, sweep=sweep)
    return E
