"""
    Element and facet integrals of the Helmholtz bilinear form, returned
    as sparse matrices (or vectors) in the global Lagrange numbering.
"""

import numpy as np
from scipy.sparse import coo_matrix

from helmwave.discretization._elements import (
    element_rule,
    gauss_interval,
    shape_functions,
    physical_gradients,
)


def scatter(nodes, local, n_dofs):
    """
        Sums local matrices (m, a, b) with row/column dofs `nodes` (m, a) into
        a CSR matrix
    """
    n_local = nodes.shape[1]
    rows = np.repeat(nodes, n_local, axis=1).ravel()
    cols = np.tile(nodes, (1, n_local)).ravel()
    matrix = coo_matrix(
        (local.ravel(), (rows, cols)), shape=(n_dofs, n_dofs)
    ).tocsr()
    matrix.sum_duplicates()
    return matrix


def scatter_vector(nodes, local, n_dofs):
    return np.bincount(
        nodes.ravel(), weights=local.real.ravel(), minlength=n_dofs
    ) + 1j * np.bincount(
        nodes.ravel(), weights=local.imag.ravel(), minlength=n_dofs
    )


# ---------------------------------------------------------------------------- #
#                                element terms                                 #
# ---------------------------------------------------------------------------- #


class ElementQuadrature:
    def __init__(self, grid, p):
        """
            Quadrature data on every element: physical points, weights
            (including the jacobian), shape values and physical gradients.
        """
        xi, w = element_rule(grid.dimension, 2 * p)
        everything = np.arange(len(grid))

        self.nodes = grid.dof_map(p).nodes
        self.n_dofs = grid.num_dofs(p)
        self.points = grid.physical_points(everything, xi)
        self.weights = grid.determinants[:, None] * w[None, :]

        self.phi, dphi = shape_functions(p, xi)
        self.grads = physical_gradients(
            np.broadcast_to(dphi, (len(grid),) + dphi.shape),
            grid.inverse_jacobians,
        )

    def stiffness(self):
        local = np.einsum(
            "mq,mqak,mqbk->mab", self.weights, self.grads, self.grads
        )
        return scatter(self.nodes, local, self.n_dofs)

    def mass(self, coefficient):
        """ (c u, v) with c sampled at the quadrature points (m, q) """
        local = np.einsum(
            "mq,qa,qb->mab", self.weights * coefficient, self.phi, self.phi
        )
        return scatter(self.nodes, local, self.n_dofs)

    def load(self, values):
        local = np.einsum("mq,qa->ma", self.weights * values, self.phi)
        return scatter_vector(self.nodes, local, self.n_dofs)


# ---------------------------------------------------------------------------- #
#                                 facet terms                                  #
# ---------------------------------------------------------------------------- #


def facet_points(grid, facets, degree):
    """
        Quadrature points (m, q, d) and weights (m, q) on facets. In 1D a
        facet is a vertex with a single unit weight.
    """
    if grid.dimension == 1:
        points = grid.vertices[np.asarray(facets.vertices)][:, None, :]
        return points, np.ones((len(points), 1))

    s, w = gauss_interval(degree)
    a = grid.vertices[facets.vertices[:, 0]]
    b = grid.vertices[facets.vertices[:, 1]]
    points = a[:, None, :] + s[None, :, None] * (b - a)[:, None, :]
    return points, facets.lengths[:, None] * w[None, :]


def traces(grid, p, elements, points):
    """
        Shape values (m, q, a) and physical gradients (m, q, a, d) of the
        given elements at physical points on their boundary
    """
    xi = grid.reference_coordinates(elements, points)
    phi, dphi = shape_functions(p, xi)
    return phi, physical_gradients(dphi, grid.inverse_jacobians[elements])


def boundary_mass(grid, p, coefficient):
    """ <c u, v> on the boundary facets, c callable (points) -> values """
    facets = grid.boundary_edges
    if not len(facets.elements):
        return None
    nodes = grid.dof_map(p).nodes[facets.elements]
    points, weights = facet_points(grid, facets, 2 * p)
    phi, _ = traces(grid, p, facets.elements, points)

    local = np.einsum(
        "mq,mqa,mqb->mab", weights * coefficient(points), phi, phi
    )
    return scatter(nodes, local, grid.num_dofs(p))


def boundary_load(grid, p, data):
    """ <g, v> with g = data(points, normals) """
    facets = grid.boundary_edges
    n_dofs = grid.num_dofs(p)
    if not len(facets.elements):
        return np.zeros(n_dofs, dtype=complex)
    nodes = grid.dof_map(p).nodes[facets.elements]
    points, weights = facet_points(grid, facets, 2 * p)
    phi, _ = traces(grid, p, facets.elements, points)

    normals = np.broadcast_to(facets.normals[:, None, :], points.shape)
    local = np.einsum("mq,mqa->ma", weights * data(points, normals), phi)
    return scatter_vector(nodes, local, n_dofs)


def penalty(grid, p, sigma):
    """
        J(u, v) = sum_e σ h_e <[∂n u], [∂n v]>_e over the interior facets,
        with the jump taken along the facet normal.
    """
    facets = grid.interior_edges
    dofs = grid.dof_map(p).nodes
    left, right = facets.elements[:, 0], facets.elements[:, 1]
    points, weights = facet_points(grid, facets, 2 * p)

    normals = np.broadcast_to(facets.normals[:, None, :], points.shape)
    _, grads_left = traces(grid, p, left, points)
    _, grads_right = traces(grid, p, right, points)
    jump = np.concatenate(
        [
            np.einsum("mqak,mqk->mqa", grads_left, normals),
            -np.einsum("mqak,mqk->mqa", grads_right, normals),
        ],
        axis=2,
    )

    scale = sigma * facets.lengths[:, None] * weights
    local = np.einsum("mq,mqa,mqb->mab", scale, jump, jump)
    nodes = np.concatenate([dofs[left], dofs[right]], axis=1)
    return scatter(nodes, local, grid.num_dofs(p))
