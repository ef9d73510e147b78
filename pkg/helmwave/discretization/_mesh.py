"""
    Helpers for the structured meshes: vertex/element generation,
    edge enumeration and the numbering of P2 Lagrange nodes on the
    refined lattice.
"""

import numpy as np
from collections import namedtuple

edges = namedtuple("edges", "vertices, elements, normals, lengths")
dof_map = namedtuple("dof_map", "nodes, points, boundary")

# local vertex pairs spanning the element edges, in P2 midpoint order
LOCAL_EDGES = {1: np.array([[0, 1]]), 2: np.array([[0, 1], [1, 2], [2, 0]])}


# ---------------------------------------------------------------------------- #
#                                   vertices                                   #
# ---------------------------------------------------------------------------- #


def structured_vertices(dimension, cells, lower, upper, periodic=False):
    """
        Vertex coordinates of a uniform grid with `cells` cells per side,
        numbered row-major (x fastest).

        Arguments:
            dimension: int. 1 or 2
            cells: int. Number of cells per side
            lower, upper: float. Domain bounds along each axis
            periodic: bool. 1D only, drops the duplicated last vertex

        Returns:
            vertices: np.ndarray (n_vertices, dimension)
    """
    h = (upper - lower) / cells
    n_points = cells if periodic else cells + 1
    axis = lower + h * np.arange(n_points)
    if dimension == 1:
        return axis[:, None]

    x, y = np.meshgrid(axis, axis, indexing="xy")
    return np.column_stack([x.ravel(), y.ravel()])


def structured_elements(dimension, cells, periodic=False):
    """
        Element connectivity. In 2D each square (i, j) is split along its
        lower-left to upper-right diagonal into (v00, v10, v11) and
        (v00, v11, v01), both counterclockwise.
    """
    if dimension == 1:
        left = np.arange(cells)
        right = (left + 1) % cells if periodic else left + 1
        return np.column_stack([left, right])

    i, j = np.meshgrid(np.arange(cells), np.arange(cells), indexing="xy")
    i, j = i.ravel(), j.ravel()
    row = cells + 1
    v00 = j * row + i
    v10 = v00 + 1
    v01 = v00 + row
    v11 = v01 + 1

    elements = np.empty((2 * cells * cells, 3), dtype=np.int64)
    elements[0::2] = np.column_stack([v00, v10, v11])
    elements[1::2] = np.column_stack([v00, v11, v01])
    return elements


# ---------------------------------------------------------------------------- #
#                                     edges                                    #
# ---------------------------------------------------------------------------- #


def triangle_edges(vertices, elements):
    """
        Enumerates the edges of a triangulation and splits them into
        interior edges (two adjacent elements, normal pointing from the
        lower-indexed to the higher-indexed element) and boundary edges
        (one element, outward normal).

        Returns:
            interior, boundary: edges named tuples
    """
    n_elements = len(elements)
    pairs = np.sort(
        elements[:, LOCAL_EDGES[2]].reshape(-1, 2), axis=1
    )  # three per element
    unique, inverse, counts = np.unique(
        pairs, axis=0, return_inverse=True, return_counts=True
    )
    inverse = inverse.ravel()
    owners = np.repeat(np.arange(n_elements), 3)

    order = np.argsort(inverse, kind="stable")
    starts = np.concatenate([[0], np.cumsum(counts)[:-1]])
    first = owners[order[starts]]

    shared = counts == 2
    second = owners[order[starts[shared] + 1]]

    centroids = vertices[elements].mean(axis=1)

    def build(selected, adjacent, reference):
        a, b = vertices[selected[:, 0]], vertices[selected[:, 1]]
        direction = b - a
        lengths = np.linalg.norm(direction, axis=1)
        normals = np.column_stack([direction[:, 1], -direction[:, 0]])
        normals /= lengths[:, None]

        # orient away from the reference element
        outward = np.einsum(
            "ij,ij->i", normals, 0.5 * (a + b) - centroids[reference]
        )
        normals[outward < 0] *= -1
        return edges(selected, adjacent, normals, lengths)

    interior = build(
        unique[shared], np.column_stack([first[shared], second]), first[shared]
    )
    boundary = build(unique[~shared], first[~shared], first[~shared])
    return interior, boundary


def interval_edges(vertices, elements, periodic):
    """
        Facets of a 1D mesh are its vertices. Interior sites carry the
        (left, right) elements with normal +1, boundary sites the single
        element with outward normal.
    """
    n_cells = len(elements)
    cell_sizes = np.full(n_cells, _cell_size(vertices, elements, periodic))

    if periodic:
        right = np.arange(n_cells)
        left = (right - 1) % n_cells
        sites = right
        boundary = edges(
            np.empty(0, dtype=np.int64),
            np.empty(0, dtype=np.int64),
            np.empty((0, 1)),
            np.empty(0),
        )
    else:
        right = np.arange(1, n_cells)
        left = right - 1
        sites = right
        boundary = edges(
            np.array([0, n_cells]),
            np.array([0, n_cells - 1]),
            np.array([[-1.0], [1.0]]),
            np.ones(2),
        )

    lengths = 0.5 * (cell_sizes[left] + cell_sizes[right])
    interior = edges(
        sites,
        np.column_stack([left, right]),
        np.ones((len(sites), 1)),
        lengths,
    )
    return interior, boundary


def _cell_size(vertices, elements, periodic):
    if periodic:
        return vertices[1, 0] - vertices[0, 0]
    return vertices[elements[0, 1], 0] - vertices[elements[0, 0], 0]


# ---------------------------------------------------------------------------- #
#                                   P2 nodes                                   #
# ---------------------------------------------------------------------------- #


def lattice_nodes(dimension, cells, p, periodic=False):
    """
        Global numbering of the Lagrange nodes of order p. Nodes live on
        the lattice with p * cells intervals per side, numbered row-major,
        so that vertices sit at lattice points (p*i, p*j).

        Returns:
            nodes: np.ndarray (n_elements, n_local) with local order
                v0, v1[, v2], then edge midpoints (m01[, m12, m20])
    """
    if dimension == 1:
        n_lattice = p * cells if periodic else p * cells + 1
        left = p * np.arange(cells)
        right = (left + p) % n_lattice if periodic else left + p
        if p == 1:
            return np.column_stack([left, right])
        return np.column_stack([left, right, left + 1])

    row = p * cells + 1
    i, j = np.meshgrid(np.arange(cells), np.arange(cells), indexing="xy")
    a, b = p * i.ravel(), p * j.ravel()

    def node(da, db):
        return (b + db) * row + a + da

    nodes = np.empty((2 * cells * cells, 3 if p == 1 else 6), dtype=np.int64)
    if p == 1:
        nodes[0::2] = np.column_stack([node(0, 0), node(1, 0), node(1, 1)])
        nodes[1::2] = np.column_stack([node(0, 0), node(1, 1), node(0, 1)])
        return nodes

    nodes[0::2] = np.column_stack(
        [
            node(0, 0),
            node(2, 0),
            node(2, 2),
            node(1, 0),
            node(2, 1),
            node(1, 1),
        ]
    )
    nodes[1::2] = np.column_stack(
        [
            node(0, 0),
            node(2, 2),
            node(0, 2),
            node(1, 1),
            node(1, 2),
            node(0, 1),
        ]
    )
    return nodes


def boundary_nodes(points, lower, upper, periodic):
    """ indices of nodes lying on the domain boundary """
    if periodic:
        return np.empty(0, dtype=np.int64)
    tol = 1e-12 * (upper - lower)
    on_boundary = np.any(
        (np.abs(points - lower) < tol) | (np.abs(points - upper) < tol),
        axis=1,
    )
    return np.flatnonzero(on_boundary)
