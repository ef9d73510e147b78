from collections import namedtuple

from myterial import (
    blue,
    indigo,
    pink_light,
    salmon,
    teal,
)

# ------------------------------- multilevel ------------------------------- #
ALPHA = 0.5  # κh/p threshold between classical and GMRES smoothing
OMEGA = 0.6  # weighted Jacobi
MU = 0.5  # correction scaling on every level
M1, M2 = 1, 1  # pre / post GMRES steps

# --------------------------------- krylov --------------------------------- #
TOL = 1e-6
MAX_ITER = 200
DIRECT_RTOL = 1e-10

# ------------------------------- penalties -------------------------------- #
# γ_e as entered in configs; the jump coefficient is σ = iγ_e
GAMMA_E = {1: 0.01 + 0.07j, 2: 0.005 + 0.035j}

# ------------------------------- safeguards ------------------------------- #
DENSE_CAP = 4096
SIZE_GUARD = 5e6
INDEX_LIMIT = 2 ** 31 - 1

# ----------------------------------- lfa ---------------------------------- #
NUM_THETA = 257
THETA_EPS = 1e-9

# --------------------------------- schemes -------------------------------- #
# which operator flavor feeds the fine residual, the classical smoothing on
# S_L levels and the GMRES corrections / coarsest solve
scheme = namedtuple("scheme", "residual, smoothing, correction")

SCHEMES = dict(
    alg1=scheme("cip", "cip", "cip"),
    alg2=scheme("fem", "fem", "cip"),
    fem=scheme("fem", "fem", "fem"),
    shifted=scheme("fem", "shifted", "shifted"),
    cip_smoothing=scheme("fem", "cip", "cip"),
)

FLAVORS = ("cip", "fem", "shifted")
SMOOTHERS = ("jacobi", "gs")
VARIANTS = ("C", "FC", "SL")

VARIANT_COLORS = dict(C=salmon, FC=blue, SL=teal)
SMOOTHER_COLORS = dict(jacobi=indigo, gs=pink_light, gmres=teal)

# ------------------------------- experiments ------------------------------ #
COARSE_KH = 2.0  # largest κh0/p on the coarsest grid picked for a table
BETA = 0.5  # default shifted-Laplacian shift
