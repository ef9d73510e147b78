from helmwave.discretization.mesh import (
    Grid,
    GridHierarchy,
    build_hierarchy,
    edge_sets,
)
from helmwave.discretization.problem import (
    HelmholtzProblem,
    ConstantKappa,
    QuadrantKappa,
    bessel_exact_solution,
    gaussian_source,
)
from helmwave.discretization.stencil import StencilCoefficients
from helmwave.discretization.assembly import (
    assemble,
    assemble_cip,
    assemble_fem,
    assemble_shifted_laplacian,
    assemble_dirichlet_1d,
)
from helmwave.discretization.transfer import (
    build_transfer,
    composite_prolongations,
)
