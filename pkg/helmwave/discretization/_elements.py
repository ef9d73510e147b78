import numpy as np
from numpy.polynomial.legendre import leggauss

from helmwave.discretization._mesh import LOCAL_EDGES

# ---------------------------------------------------------------------------- #
#                                  quadrature                                  #
# ---------------------------------------------------------------------------- #

# symmetric rules on the reference triangle, weights sum to 1
_A, _WA = 0.445948490915965, 0.223381589678011
_B, _WB = 0.091576213509771, 0.109951743655322

_TRIANGLE_RULES = {
    2: (
        np.array([[1 / 6, 1 / 6], [2 / 3, 1 / 6], [1 / 6, 2 / 3]]),
        np.full(3, 1 / 3),
    ),
    4: (
        np.array(
            [
                [_A, _A],
                [1 - 2 * _A, _A],
                [_A, 1 - 2 * _A],
                [_B, _B],
                [1 - 2 * _B, _B],
                [_B, 1 - 2 * _B],
            ]
        ),
        np.array([_WA, _WA, _WA, _WB, _WB, _WB]),
    ),
}


def gauss_interval(degree):
    """
        Gauss-Legendre rule on [0, 1] exact for polynomials of `degree`

        Returns:
            points: np.ndarray (q,)
            weights: np.ndarray (q,), summing to 1
    """
    points, weights = leggauss(degree // 2 + 1)
    return 0.5 * (points + 1), 0.5 * weights


def element_rule(dimension, degree):
    """
        Quadrature on the reference simplex, weights already scaled by its
        measure (1 in 1D, 1/2 in 2D).

        Returns:
            points: np.ndarray (q, dimension)
            weights: np.ndarray (q,)
    """
    if dimension == 1:
        points, weights = gauss_interval(degree)
        return points[:, None], weights

    if degree > 4:
        raise ValueError(f"No triangle rule of degree {degree}")
    points, weights = _TRIANGLE_RULES[2 if degree <= 2 else 4]
    return points, 0.5 * weights


# ---------------------------------------------------------------------------- #
#                                shape functions                               #
# ---------------------------------------------------------------------------- #


def shape_functions(p, xi):
    """
        Lagrange shape functions of order p on the reference simplex, in
        barycentric form: vertices first, then edge midpoints in the
        LOCAL_EDGES order.

        Arguments:
            p: int. 1 or 2
            xi: np.ndarray (..., d). Reference coordinates

        Returns:
            phi: np.ndarray (..., n_local)
            dphi: np.ndarray (..., n_local, d). Reference gradients
    """
    xi = np.asarray(xi, dtype=float)
    dim = xi.shape[-1]
    lam = np.concatenate([1 - xi.sum(axis=-1, keepdims=True), xi], axis=-1)
    dlam = np.vstack([-np.ones(dim), np.eye(dim)])

    if p == 1:
        return lam, np.broadcast_to(dlam, lam.shape + (dim,)).copy()

    a, b = LOCAL_EDGES[dim][:, 0], LOCAL_EDGES[dim][:, 1]
    vertex = lam * (2 * lam - 1)
    dvertex = (4 * lam - 1)[..., None] * dlam
    edge = 4 * lam[..., a] * lam[..., b]
    dedge = 4 * (lam[..., b, None] * dlam[a] + lam[..., a, None] * dlam[b])

    phi = np.concatenate([vertex, edge], axis=-1)
    dphi = np.concatenate([dvertex, dedge], axis=-2)
    return phi, dphi


def physical_gradients(dphi, inverse_jacobians):
    """
        grad_x phi = B^-T grad_xi phi, for gradients (m, q, l, d) of
        elements with inverse jacobians (m, d, d)
    """
    return np.einsum("mqld,mdk->mqlk", dphi, inverse_jacobians)
