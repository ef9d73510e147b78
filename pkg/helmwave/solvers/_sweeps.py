"""
    Compiled lexicographic Gauss-Seidel sweeps over CSR arrays. Both kernels
    update x in place.
"""
import numpy as np
from numba import njit


@njit(cache=True)
def forward_sweep(indptr, indices, data, x, rhs):
    for row in range(len(x)):
        diagonal = 0.0 + 0.0j
        total = rhs[row]
        for k in range(indptr[row], indptr[row + 1]):
            column = indices[k]
            if column == row:
                diagonal += data[k]
            else:
                total -= data[k] * x[column]
        x[row] = total / diagonal


@njit(cache=True)
def backward_sweep(indptr, indices, data, x, rhs):
    for row in range(len(x) - 1, -1, -1):
        diagonal = 0.0 + 0.0j
        total = rhs[row]
        for k in range(indptr[row], indptr[row + 1]):
            column = indices[k]
            if column == row:
                diagonal += data[k]
            else:
                total -= data[k] * x[column]
        x[row] = total / diagonal


def csr_arrays(A):
    """ contiguous (indptr, indices, data) of a csr matrix as complex128 """
    return (
        np.ascontiguousarray(A.indptr, dtype=np.int64),
        np.ascontiguousarray(A.indices, dtype=np.int64),
        np.ascontiguousarray(A.data, dtype=np.complex128),
    )
