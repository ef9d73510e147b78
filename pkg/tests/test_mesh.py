import numpy as np
import pytest

from helmwave.discretization import Grid, build_hierarchy, edge_sets


def test_single_level_dofs():
    hierarchy = build_hierarchy(2, 128, 1)
    assert len(hierarchy) == 1
    assert hierarchy.finest.num_dofs(1) == 16641
    assert hierarchy.finest.num_dofs(2) == 257 ** 2


def test_bisection_1d():
    hierarchy = build_hierarchy(1, 4, 2)
    assert [grid.cells for grid in hierarchy] == [4, 8]
    assert hierarchy.h[1] == hierarchy.h[0] / 2
    assert hierarchy.L == 1


def test_element_counts():
    hierarchy = build_hierarchy(2, 2, 3)
    assert [len(grid) for grid in hierarchy] == [8, 32, 128]

    hierarchy = build_hierarchy(1, 3, 3)
    assert [len(grid) for grid in hierarchy] == [3, 6, 12]


def test_mesh_size_is_cell_side():
    grid = Grid(2, 128)
    assert grid.h == pytest.approx(1 / 128)
    assert 100 * grid.h == pytest.approx(0.78125)


def test_nested_vertices():
    hierarchy = build_hierarchy(2, 2, 3)
    for coarse, fine in zip(hierarchy.levels[:-1], hierarchy.levels[1:]):
        fine_set = {tuple(v) for v in fine.vertices}
        assert all(tuple(v) in fine_set for v in coarse.vertices)


@pytest.mark.parametrize(
    "cells, interior, boundary", [(1, 1, 4), (2, 8, 8), (4, 40, 16)]
)
def test_edge_counts_2d(cells, interior, boundary):
    inner, outer = edge_sets(Grid(2, cells))
    assert len(inner.elements) == interior
    assert len(outer.elements) == boundary

    # Euler characteristic of the square
    grid = Grid(2, cells)
    n_edges = interior + boundary
    assert len(grid.vertices) - n_edges + len(grid) == 1


def test_edge_adjacency():
    grid = Grid(2, 3)
    inner, outer = grid.edge_sets()
    assert inner.elements.shape[1] == 2
    assert np.all(inner.elements[:, 0] < inner.elements[:, 1])
    assert outer.elements.ndim == 1
    assert np.allclose(np.linalg.norm(inner.normals, axis=1), 1)


def test_boundary_normals_point_outward():
    grid = Grid(2, 2)
    _, outer = grid.edge_sets()
    midpoints = grid.vertices[outer.vertices].mean(axis=1)
    assert np.all(np.einsum("ij,ij->i", outer.normals, midpoints) > 0)


def test_interior_normals_point_to_higher_element():
    grid = Grid(2, 2)
    inner, _ = grid.edge_sets()
    centroids = grid.vertices[grid.elements].mean(axis=1)
    left, right = inner.elements[:, 0], inner.elements[:, 1]
    direction = centroids[right] - centroids[left]
    assert np.all(np.einsum("ij,ij->i", inner.normals, direction) > 0)


def test_counterclockwise_elements():
    grid = Grid(2, 3)
    corners = grid.vertices[grid.elements]
    a, b = corners[:, 1] - corners[:, 0], corners[:, 2] - corners[:, 0]
    assert np.all(a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0] > 0)


def test_interval_penalty_sites():
    inner, outer = Grid(1, 4).edge_sets()
    assert len(inner.vertices) == 3
    assert len(outer.vertices) == 2

    inner, outer = Grid(1, 4, periodic=True).edge_sets()
    assert len(inner.vertices) == 4
    assert len(outer.vertices) == 0


def test_dof_counts_match_lattice():
    grid = Grid(2, 2)
    assert grid.num_dofs(1) == 9
    assert grid.num_dofs(2) == 25
    assert len(grid.dof_map(2).points) == 25
    assert len(grid.dof_map(1).boundary) == 8

    periodic = Grid(1, 6, periodic=True)
    assert periodic.num_dofs(1) == 6
    assert periodic.num_dofs(2) == 12


def test_locate_points_inside_elements():
    grid = Grid(2, 4)
    points = grid.dof_map(2).points
    elements = grid.locate(points)
    xi = grid.reference_coordinates(elements, points[:, None, :])[:, 0, :]
    assert np.all(xi >= -1e-12)
    assert np.all(xi.sum(axis=1) <= 1 + 1e-12)


@pytest.mark.parametrize(
    "args",
    [
        dict(dimension=3, cells=2),
        dict(dimension=2, cells=0),
        dict(dimension=2, cells=2, periodic=True),
    ],
)
def test_invalid_grids(args):
    with pytest.raises(ValueError):
        Grid(**args)


def test_hierarchy_errors():
    with pytest.raises(ValueError):
        build_hierarchy(2, 0, 2)
    with pytest.raises(ValueError):
        build_hierarchy(2, 2, 0)
    with pytest.raises(ValueError):
        build_hierarchy(2, 128, 20)

    with pytest.raises(ValueError):
        Grid(2, 2).dof_map(3)
