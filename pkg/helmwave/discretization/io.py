import numpy as np
from pathlib import Path
from scipy.io import mmwrite, mmread
from scipy.sparse import csr_matrix
from loguru import logger


def save_matrix(matrix, filepath):
    """
        Writes a sparse matrix in Matrix Market coordinate format
        (complex general)
    """
    filepath = Path(filepath)
    mmwrite(
        str(filepath),
        csr_matrix(matrix).astype(complex),
        field="complex",
        symmetry="general",
    )
    logger.debug(f"Saved {matrix.shape} matrix to {filepath}")


def load_matrix(filepath):
    return csr_matrix(mmread(str(filepath)))


def save_vector(vector, filepath):
    """ two columns, real and imaginary parts """
    vector = np.asarray(vector, dtype=complex)
    np.savetxt(
        str(filepath), np.column_stack([vector.real, vector.imag]), fmt="%.17e"
    )


def load_vector(filepath):
    values = np.loadtxt(str(filepath), ndmin=2)
    return values[:, 0] + 1j * values[:, 1]


def save_grid(grid, filepath):
    """
        Plain-text dump of a grid: one vertex per line (index x [y]) then
        one element per line (index v0 v1 [v2]).
    """
    with open(filepath, "w") as f:
        f.write(f"# {grid}\n")
        f.write(f"vertices {len(grid.vertices)}\n")
        for index, coordinates in enumerate(grid.vertices):
            values = " ".join(f"{c:.17g}" for c in coordinates)
            f.write(f"{index} {values}\n")

        f.write(f"elements {len(grid.elements)}\n")
        for index, element in enumerate(grid.elements):
            f.write(" ".join(str(v) for v in (index, *element)) + "\n")
