from helmwave.solvers.krylov import (
    SolveReport,
    SingularMatrixError,
    DirectSolver,
    fgmres,
    gmres,
    direct_solve,
)
from helmwave.solvers.smoothers import (
    SmootherPlan,
    jacobi_sweep,
    gauss_seidel_sweep,
    gmres_relax,
    classify_levels,
)
from helmwave.solvers.multilevel import (
    CyclePlan,
    CycleState,
    iterate_cycle,
    apply_cycle,
    preconditioner,
    error_operator_dense,
)
