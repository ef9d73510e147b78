import numpy as np
from collections import namedtuple
from scipy.sparse import coo_matrix, identity

from helmwave.discretization._elements import shape_functions

# restrict = prolong.T, no rescaling
transfer_pair = namedtuple("transfer_pair", "prolong, restrict")

_ZERO = 1e-12


def interpolation_matrix(coarse, fine, p):
    """
        Natural embedding of the coarse P_p space in the fine one: each fine
        Lagrange node takes the value of the coarse finite element function
        at its location.

        Returns:
            P: scipy.sparse.csr_matrix (fine dofs, coarse dofs), real
    """
    points = fine.dof_map(p).points
    elements = coarse.locate(points)
    xi = coarse.reference_coordinates(elements, points[:, None, :])[:, 0, :]
    weights, _ = shape_functions(p, xi)
    weights[np.abs(weights) < _ZERO] = 0.0

    columns = coarse.dof_map(p).nodes[elements]
    rows = np.repeat(np.arange(len(points)), columns.shape[1])
    P = coo_matrix(
        (weights.ravel(), (rows, columns.ravel())),
        shape=(len(points), coarse.num_dofs(p)),
    ).tocsr()
    P.eliminate_zeros()
    return P


def build_transfer(grids, level, p):
    """
        Prolongation from level `level` to level + 1 and the matching
        restriction.

        Arguments:
            grids: GridHierarchy
            level: int. Coarse level, 0 <= level < L
            p: int. Polynomial order

        Returns:
            transfer_pair: named tuple (prolong, restrict)
    """
    if not 0 <= level < grids.L:
        raise ValueError(
            f"Transfer level must be in [0, {grids.L}), got {level}"
        )
    prolong = interpolation_matrix(grids[level], grids[level + 1], p)
    return transfer_pair(prolong, prolong.T.tocsr())


def composite_prolongations(grids, p):
    """
        Prolongations from every level l straight to the finest one,
        P_{L<-l} = P_{L<-L-1} ... P_{l+1<-l}. The finest level maps with the
        identity.

        Returns:
            prolongations: list of csr matrices indexed by level
    """
    L = grids.L
    prolongations = [None] * (L + 1)
    prolongations[L] = identity(grids.finest.num_dofs(p), format="csr")
    for level in range(L - 1, -1, -1):
        step = build_transfer(grids, level, p).prolong
        prolongations[level] = (prolongations[level + 1] @ step).tocsr()
    return prolongations
