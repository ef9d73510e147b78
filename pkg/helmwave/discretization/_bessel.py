"""
    Bessel functions of the first kind J0 and J1 for non-negative real
    arguments, vectorized over numpy arrays.

    Three regimes:
        z <= 8        ascending power series
        8 < z < 35    Miller's backward recurrence normalized with
                      J0 + 2 sum J_2k = 1
        z >= 35       Hankel asymptotic expansion
"""

import numpy as np
from scipy.special import factorial

SERIES_LIMIT = 8.0
ASYMPTOTIC_LIMIT = 35.0

_SERIES_TERMS = 40
_MILLER_START = 100  # even, well above z + 30 on the recurrence range
_ASYMPTOTIC_TERMS = 30
_RESCALE = 1e250


def bessel_j0_j1(z):
    """
        Returns:
            j0, j1: np.ndarray with the shape of z
    """
    z = np.asarray(z, dtype=float)
    if np.any(z < 0):
        raise ValueError("Bessel routine expects non-negative arguments")
    shape = z.shape
    z = z.ravel()

    j0, j1 = np.empty_like(z), np.empty_like(z)

    series = z <= SERIES_LIMIT
    asymptotic = z >= ASYMPTOTIC_LIMIT
    recurrence = ~(series | asymptotic)

    j0[series], j1[series] = _power_series(z[series])
    j0[recurrence], j1[recurrence] = _miller(z[recurrence])
    j0[asymptotic], j1[asymptotic] = _hankel(z[asymptotic])
    return j0.reshape(shape), j1.reshape(shape)


# ---------------------------------------------------------------------------- #
#                                    regimes                                   #
# ---------------------------------------------------------------------------- #


def _power_series(z):
    k = np.arange(_SERIES_TERMS)
    signs = (-1.0) ** k
    kfact = factorial(k)
    x = (0.5 * z)[:, None] ** (2 * k)[None, :]

    j0 = (x * signs / kfact ** 2).sum(axis=1)
    j1 = 0.5 * z * (x * signs / (kfact * factorial(k + 1))).sum(axis=1)
    return j0, j1


def _miller(z):
    if not z.size:
        return z.copy(), z.copy()

    upper = np.zeros_like(z)  # J_{k+1}
    current = np.full_like(z, 1e-30)  # J_k
    even_sum = np.zeros_like(z)
    j0 = j1 = None

    for k in range(_MILLER_START, 0, -1):
        lower = 2 * k / z * current - upper  # J_{k-1}
        upper, current = current, lower
        if (k - 1) % 2 == 0 and k - 1 > 0:
            even_sum += current
        if k - 1 == 1:
            j1 = current.copy()

        large = np.abs(current) > _RESCALE
        if np.any(large):
            upper[large] /= _RESCALE
            current[large] /= _RESCALE
            even_sum[large] /= _RESCALE
            if j1 is not None:
                j1[large] /= _RESCALE

    j0 = current
    norm = j0 + 2 * even_sum
    return j0 / norm, j1 / norm


def _hankel(z):
    """
        J_n(z) ~ sqrt(2/(pi z)) (P cos(chi) - Q sin(chi)),
        chi = z - (n/2 + 1/4) pi
    """

    def pq(order):
        mu = 4 * order ** 2
        P, Q = np.ones_like(z), np.zeros_like(z)
        term = np.ones_like(z)
        for k in range(1, 2 * _ASYMPTOTIC_TERMS):
            term = term * (mu - (2 * k - 1) ** 2) / (k * 8 * z)
            if k % 2:
                Q += (-1) ** ((k - 1) // 2) * term
            else:
                P += (-1) ** (k // 2) * term
        return P, Q

    amplitude = np.sqrt(2 / (np.pi * z))
    values = []
    for order in (0, 1):
        P, Q = pq(order)
        chi = z - (order / 2 + 0.25) * np.pi
        values.append(amplitude * (P * np.cos(chi) - Q * np.sin(chi)))
    return values
