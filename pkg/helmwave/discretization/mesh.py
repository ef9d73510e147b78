import numpy as np
from loguru import logger

from helmwave.fixtures import INDEX_LIMIT
from helmwave.discretization._mesh import (
    structured_vertices,
    structured_elements,
    triangle_edges,
    interval_edges,
    lattice_nodes,
    boundary_nodes,
    dof_map,
)


DEFAULT_DOMAINS = {1: (0.0, 1.0), 2: (-0.5, 0.5)}


class Grid:
    def __init__(self, dimension, cells, domain=None, periodic=False):
        """
            Uniform grid on an interval (1D) or on a square (2D) split in
            right triangles along the lower-left to upper-right diagonals.

            Arguments:
                dimension: int. 1 or 2
                cells: int. Number of cells per side
                domain: tuple. (lower, upper) bounds along every axis.
                    Defaults to (0, 1) in 1D and the unit square centered
                    at the origin in 2D
                periodic: bool. Periodic interval (1D only)
        """
        if dimension not in (1, 2):
            raise ValueError(f"Grid dimension must be 1 or 2, not {dimension}")
        if periodic and dimension != 1:
            raise ValueError("Periodic grids are only supported in 1D")
        if cells < (2 if periodic else 1):
            raise ValueError(f"Invalid number of cells per side: {cells}")

        self.dimension = dimension
        self.cells = int(cells)
        self.lower, self.upper = domain or DEFAULT_DOMAINS[dimension]
        self.periodic = periodic

        # mesh size is the cell side length
        self.h = (self.upper - self.lower) / self.cells
        self.diameter = self.h * np.sqrt(dimension)

        self.vertices = structured_vertices(
            dimension, self.cells, self.lower, self.upper, periodic=periodic
        )
        self.elements = structured_elements(
            dimension, self.cells, periodic=periodic
        )
        self._set_affine_maps()

        self._edges = None
        self._dof_maps = {}

    def __repr__(self):
        kind = "periodic " if self.periodic else ""
        return (
            f"{kind}{self.dimension}D grid | {self.cells} cells per side "
            f"| h={self.h:.4g} | {len(self)} elements"
        )

    def __str__(self):
        return self.__repr__()

    def __len__(self):
        return len(self.elements)

    @property
    def length(self):
        return self.upper - self.lower

    def _set_affine_maps(self):
        """
            Each element is the image of the reference simplex under
            x = origin + B xi
        """
        corners = self.vertices[self.elements]
        self.origins = corners[:, 0, :].copy()
        if self.dimension == 1:
            self.jacobians = np.full((len(self), 1, 1), self.h)
        else:
            self.jacobians = np.stack(
                [corners[:, 1] - corners[:, 0], corners[:, 2] - corners[:, 0]],
                axis=2,
            )
        self.inverse_jacobians = np.linalg.inv(self.jacobians)
        self.determinants = np.abs(np.linalg.det(self.jacobians))

    # --------------------------------- edges -------------------------------- #
    @property
    def interior_edges(self):
        return self.edge_sets()[0]

    @property
    def boundary_edges(self):
        return self.edge_sets()[1]

    def edge_sets(self):
        if self._edges is None:
            if self.dimension == 1:
                self._edges = interval_edges(
                    self.vertices, self.elements, self.periodic
                )
            else:
                self._edges = triangle_edges(self.vertices, self.elements)
        return self._edges

    # --------------------------------- dofs --------------------------------- #
    def num_dofs(self, p):
        per_side = p * self.cells + (0 if self.periodic else 1)
        return per_side ** self.dimension

    def dof_map(self, p):
        """
            Global numbering of the order-p Lagrange nodes.

            Returns:
                dof_map: named tuple with the element-to-node table, the node
                    coordinates and the indices of boundary nodes
        """
        if p not in (1, 2):
            raise ValueError(f"Polynomial order must be 1 or 2, not {p}")

        if p not in self._dof_maps:
            nodes = lattice_nodes(
                self.dimension, self.cells, p, periodic=self.periodic
            )
            per_side = p * self.cells + (0 if self.periodic else 1)
            axis = self.lower + (self.h / p) * np.arange(per_side)
            if self.dimension == 1:
                points = axis[:, None]
            else:
                x, y = np.meshgrid(axis, axis, indexing="xy")
                points = np.column_stack([x.ravel(), y.ravel()])

            self._dof_maps[p] = dof_map(
                nodes,
                points,
                boundary_nodes(points, self.lower, self.upper, self.periodic),
            )
        return self._dof_maps[p]

    # ------------------------------ coordinates ----------------------------- #
    def reference_coordinates(self, elements, points):
        """
            Maps physical points to the reference coordinates of the given
            elements. On periodic grids points are unwrapped into the element.

            Arguments:
                elements: np.ndarray (m,) element indices
                points: np.ndarray (m, q, d) physical points

            Returns:
                xi: np.ndarray (m, q, d)
        """
        offset = points - self.origins[elements][:, None, :]
        if self.periodic:
            offset = np.where(
                offset < -0.5 * self.h, offset + self.length, offset
            )
        return np.einsum(
            "mkd,mqd->mqk", self.inverse_jacobians[elements], offset
        )

    def physical_points(self, elements, xi):
        """ inverse of `reference_coordinates`, xi (q, d) or (m, q, d) """
        if xi.ndim == 2:
            xi = np.broadcast_to(xi, (len(elements),) + xi.shape)
        return self.origins[elements][:, None, :] + np.einsum(
            "mdk,mqk->mqd", self.jacobians[elements], xi
        )

    def locate(self, points):
        """
            Index of an element containing each point (closed elements, ties
            resolved toward the lower-left cell).
        """
        scaled = (points - self.lower) / self.h
        cell = np.clip(np.floor(scaled).astype(np.int64), 0, self.cells - 1)
        if self.dimension == 1:
            return cell[:, 0]

        local = scaled - cell
        square = cell[:, 1] * self.cells + cell[:, 0]
        upper_left = local[:, 1] > local[:, 0]
        return 2 * square + upper_left.astype(np.int64)


# ---------------------------------------------------------------------------- #
#                                   hierarchy                                  #
# ---------------------------------------------------------------------------- #


class GridHierarchy:
    def __init__(self, levels):
        self.levels = list(levels)
        self.dimension = self.levels[0].dimension
        self.domain = (self.levels[0].lower, self.levels[0].upper)
        self.periodic = self.levels[0].periodic

    def __repr__(self):
        return (
            f"{self.dimension}D hierarchy with {len(self)} levels, "
            f"cells per side: {[g.cells for g in self.levels]}"
        )

    def __len__(self):
        return len(self.levels)

    def __getitem__(self, level):
        return self.levels[level]

    def __iter__(self):
        return iter(self.levels)

    @property
    def L(self):
        """ index of the finest level """
        return len(self) - 1

    @property
    def finest(self):
        return self.levels[-1]

    @property
    def h(self):
        return [grid.h for grid in self.levels]


def build_hierarchy(
    dimension, coarse_cells_per_side, num_levels, domain=None, periodic=False
):
    """
        Builds nested grids by uniform bisection of the coarse grid.

        Arguments:
            dimension: int. 1 or 2
            coarse_cells_per_side: int. Cells per side on level 0
            num_levels: int. L + 1 grids, level l has
                coarse_cells_per_side * 2**l cells per side
            domain: tuple. (lower, upper), see Grid
            periodic: bool. 1D periodic hierarchy

        Returns:
            hierarchy: GridHierarchy
    """
    if coarse_cells_per_side < 1:
        raise ValueError(
            f"coarse_cells_per_side must be >= 1, not {coarse_cells_per_side}"
        )
    if num_levels < 1:
        raise ValueError(f"num_levels must be >= 1, not {num_levels}")

    fine_cells = coarse_cells_per_side * 2 ** (num_levels - 1)
    fine_dofs = (2 * fine_cells + 1) ** dimension  # P2 is the largest space
    if fine_dofs > INDEX_LIMIT:
        raise ValueError(
            f"{num_levels} levels from {coarse_cells_per_side} cells give "
            f"{fine_dofs} fine DOFs, more than the index type can address"
        )

    levels = [
        Grid(
            dimension,
            coarse_cells_per_side * 2 ** level,
            domain=domain,
            periodic=periodic,
        )
        for level in range(num_levels)
    ]
    hierarchy = GridHierarchy(levels)
    logger.debug(f"Built {hierarchy}")
    return hierarchy


def edge_sets(grid):
    """
        Interior and boundary facets of a grid. In 1D the facets are the
        vertices, interior ones being the penalty sites.

        Returns:
            interior_edges, boundary_edges: edges named tuples with fields
                vertices, elements, normals, lengths
    """
    return grid.edge_sets()
