import itertools
import numpy as np
import pandas as pd
from collections import namedtuple
from loguru import logger

from fcutils.progress import track

from helmwave.fixtures import GAMMA_E, SCHEMES
from helmwave.discretization.mesh import build_hierarchy
from helmwave.discretization.problem import HelmholtzProblem
from helmwave.discretization.assembly import assemble
from helmwave.discretization.io import save_matrix, save_vector, save_grid
from helmwave.solvers.krylov import fgmres, direct_solve
from helmwave.solvers.multilevel import CyclePlan, preconditioner

# one solver run of a table
run = namedtuple("run", "kappa, kappa1, q, p, scheme, beta, m2, level")

TABLE_COLUMNS = [
    "experiment",
    "problem",
    "kappa",
    "kappa1",
    "q",
    "p",
    "algorithm",
    "scheme",
    "beta",
    "m1",
    "m2",
    "level",
    "dofs",
    "solver",
    "iter",
    "converged",
    "error",
]


def table_runs(config):
    """ every combination of the list valued fields, levels innermost """
    if config.problem == "bessel":
        waves = [(kappa, None, None) for kappa in config.kappa]
    else:
        waves = [
            (kappa2, kappa2 / q, q)
            for kappa2, q in itertools.product(config.kappa2, config.q)
        ]

    runs = []
    for (kappa, kappa1, q), p, scheme, m2, level in itertools.product(
        waves, config.p, config.scheme, config.m2, config.levels
    ):
        betas = config.beta if scheme == "shifted" else [None]
        for beta in betas:
            runs.append(run(kappa, kappa1, q, p, scheme, beta, m2, level))
    return runs


def make_problem(config, entry):
    gamma_e = GAMMA_E[entry.p] if config.gamma_e is None else config.gamma_e
    if config.problem == "bessel":
        return HelmholtzProblem.bessel(entry.kappa, gamma_e=gamma_e)
    return HelmholtzProblem.gaussian(entry.kappa1, entry.q, gamma_e=gamma_e)


def nodal_error(grid, p, problem, u):
    """ relative nodal max error against the exact solution """
    exact = problem.exact(grid.dof_map(p).points)
    return float(np.max(np.abs(u - exact)) / np.max(np.abs(exact)))


# ---------------------------------------------------------------------------- #
#                                     runs                                     #
# ---------------------------------------------------------------------------- #


def solve_entry(config, entry, trace=False):
    """
        Solves one table entry with the multilevel preconditioned FGMRES
        (or directly on a single level grid).

        Arguments:
            config: ExperimentConfig
            entry: run
            trace: bool. Collect the per-stage residual norms of the cycles

        Returns:
            row: dict. Table row
            outputs: dict. Solution, report, operators and trace
    """
    problem = make_problem(config, entry)
    hierarchy = build_hierarchy(
        2, config.coarse_cells_for(entry.kappa, entry.p), entry.level + 1
    )
    grid = hierarchy.finest
    logger.info(
        f"{config.experiment}: {problem.name} kappa={entry.kappa:g} "
        f"P{entry.p} {entry.scheme} level {entry.level} "
        f"({grid.num_dofs(entry.p)} DOFs)"
    )

    beta = entry.beta or 0.0
    report, cycle_trace = None, None
    if entry.level == 0:
        flavor = SCHEMES[entry.scheme].residual
        A, F = assemble(grid, problem, entry.p, flavor=flavor, beta=beta)
        u = direct_solve(A, F)
        solver, iterations, converged = "direct", "0", True
    else:
        plan = CyclePlan.from_problem(
            hierarchy,
            problem,
            entry.p,
            algorithm=config.algorithm,
            scheme=entry.scheme,
            beta=beta,
            mu=config.mu,
            m1=config.m1,
            m2=entry.m2,
            alpha=config.alpha,
            omega=config.omega,
            smoother=config.smoother,
        )
        if trace:
            plan.start_trace()
        A, F = plan.A, plan.rhs
        u, report = fgmres(
            A,
            F,
            preconditioner=preconditioner(plan),
            tol=config.tol,
            max_iter=config.max_iter,
        )
        solver = "pgmres"
        iterations = report.label(config.max_iter)
        converged = report.converged
        if trace:
            cycle_trace = plan.trace_dataframe()
        logger.info(f"Level {entry.level}: {report}")

    error = (
        nodal_error(grid, entry.p, problem, u)
        if problem.exact is not None
        else np.nan
    )

    row = dict(
        experiment=config.experiment,
        problem=problem.name,
        kappa=entry.kappa,
        kappa1=entry.kappa1,
        q=entry.q,
        p=entry.p,
        algorithm=config.algorithm,
        scheme=entry.scheme,
        beta=entry.beta,
        m1=config.m1,
        m2=entry.m2,
        level=entry.level,
        dofs=len(F),
        solver=solver,
        iter=iterations,
        converged=converged,
        error=error,
    )
    outputs = dict(
        u=u, report=report, A=A, F=F, grid=grid, trace=cycle_trace
    )
    return row, outputs


def run_table(config, output_dir=None, verbose=False):
    """
        Runs every entry of a solver table.

        Arguments:
            config: ExperimentConfig
            output_dir: Path. Folder for the optional per-run outputs
            verbose: bool. Save residual histories and the cycle trace

        Returns:
            table: pd.DataFrame with TABLE_COLUMNS
            written: list of Path
    """
    runs = table_runs(config)
    logger.info(f"{config.experiment}: {len(runs)} runs")

    rows, traces, written = [], [], []
    for index, entry in enumerate(
        track(runs, description=config.experiment, transient=True)
    ):
        row, outputs = solve_entry(config, entry, trace=verbose)
        rows.append(row)
        if output_dir is None:
            continue

        prefix = f"run{index:02d}"
        if config.save_matrices:
            for name, save, value in (
                ("matrix.mtx", save_matrix, outputs["A"]),
                ("rhs.txt", save_vector, outputs["F"]),
                ("solution.txt", save_vector, outputs["u"]),
                ("grid.txt", save_grid, outputs["grid"]),
            ):
                save(value, output_dir / f"{prefix}_{name}")
                written.append(output_dir / f"{prefix}_{name}")

        if verbose and outputs["report"] is not None:
            filepath = output_dir / f"{prefix}_residuals.csv"
            outputs["report"].to_csv(filepath)
            written.append(filepath)
            traces.append(outputs["trace"].assign(run=index))

    if traces:
        filepath = output_dir / "cycle_trace.csv"
        trace = pd.concat(traces, ignore_index=True)
        trace = trace[["run"] + [c for c in trace.columns if c != "run"]]
        trace.to_csv(filepath, index=False, lineterminator="\n")
        written.append(filepath)

    return pd.DataFrame(rows, columns=TABLE_COLUMNS), written
