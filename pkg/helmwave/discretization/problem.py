import numpy as np

from helmwave.fixtures import GAMMA_E
from helmwave.discretization._bessel import bessel_j0_j1

GAUSSIAN_CENTER = (-0.25, -0.25)


# ---------------------------------------------------------------------------- #
#                                 wave numbers                                 #
# ---------------------------------------------------------------------------- #


class ConstantKappa:
    def __init__(self, value):
        if value < 0:
            raise ValueError(f"Wave number must be non-negative, not {value}")
        self.value = float(value)
        self.max = self.value

    def __repr__(self):
        return f"kappa={self.value:g}"

    def __call__(self, points):
        return np.full(np.shape(points)[:-1], self.value)


class QuadrantKappa:
    def __init__(self, kappa1, q):
        """
            κ1 on (-0.5, 0) x (0, 0.5) and (0, 0.5) x (-0.5, 0),
            κ2 = q κ1 on the two other quadrants.
        """
        if kappa1 <= 0:
            raise ValueError(f"kappa1 must be positive, not {kappa1}")
        if q <= 1:
            raise ValueError(f"Wave number ratio q must be > 1, not {q}")
        self.kappa1 = float(kappa1)
        self.kappa2 = q * self.kappa1
        self.q = q
        self.max = self.kappa2

    def __repr__(self):
        return f"kappa1={self.kappa1:g} kappa2={self.kappa2:g}"

    def __call__(self, points):
        points = np.asarray(points)
        low_contrast = points[..., 0] * points[..., 1] < 0
        return np.where(low_contrast, self.kappa1, self.kappa2)


# ---------------------------------------------------------------------------- #
#                                   examples                                   #
# ---------------------------------------------------------------------------- #


def bessel_coefficient(kappa):
    j0, j1 = bessel_j0_j1(np.array([kappa]))
    return (np.cos(kappa) + 1j * np.sin(kappa)) / (
        kappa * (j0[0] + 1j * j1[0])
    )


def bessel_exact_solution(kappa, point):
    """
        u = cos(κr)/κ - C J0(κr), C = e^{iκ} / (κ (J0(κ) + i J1(κ)))
        solving -Δu - κ²u = sin(κr)/r with the matching Robin data.

        Arguments:
            kappa: float
            point: np.ndarray (..., 2)

        Returns:
            u: complex np.ndarray (...)
    """
    r = np.linalg.norm(np.asarray(point, dtype=float), axis=-1)
    j0, _ = bessel_j0_j1(kappa * r)
    return np.cos(kappa * r) / kappa - bessel_coefficient(kappa) * j0


def bessel_gradient(kappa, point):
    point = np.asarray(point, dtype=float)
    r = np.linalg.norm(point, axis=-1)
    _, j1 = bessel_j0_j1(kappa * r)
    radial = -np.sin(kappa * r) + bessel_coefficient(kappa) * kappa * j1

    safe_r = np.where(r > 0, r, 1.0)
    return (radial / safe_r)[..., None] * point


def bessel_source(kappa, point):
    """ f = sin(κr)/r, extended by continuity with f(0) = κ """
    r = np.linalg.norm(np.asarray(point, dtype=float), axis=-1)
    safe_r = np.where(r > 0, r, 1.0)
    return np.where(r > 0, np.sin(kappa * r) / safe_r, kappa)


def gaussian_source(point, center=GAUSSIAN_CENTER, kappa_local=1.0):
    """
        Narrow gaussian f = exp(-(4κ/π)² |x - r|²)
    """
    distance = np.asarray(point, dtype=float) - np.asarray(center)
    width = (4 * kappa_local / np.pi) ** 2
    return np.exp(-width * np.sum(distance ** 2, axis=-1))


# ---------------------------------------------------------------------------- #
#                                    problem                                   #
# ---------------------------------------------------------------------------- #


class HelmholtzProblem:
    def __init__(
        self,
        kappa,
        sigma=0.0,
        source=None,
        boundary_data=None,
        boundary="robin",
        name="custom",
        exact=None,
    ):
        """
            -Δu - κ²u = f with Robin (∂u/∂n + iκu = g) or homogeneous
            Dirichlet boundary conditions.

            Arguments:
                kappa: float or callable. Wave-number field
                sigma: complex. Penalty weight σ = iγ_e on the interior jumps
                source: callable (points) -> f values. Defaults to zero
                boundary_data: callable (points, normals) -> g values
                boundary: str. 'robin' or 'dirichlet'
                name: str. Label used in logs and tables
                exact: callable (points) -> u values, when known
        """
        if boundary not in ("robin", "dirichlet"):
            raise ValueError(f"Unknown boundary condition: {boundary}")

        self.kappa = (
            kappa if callable(kappa) else ConstantKappa(float(kappa))
        )
        self.sigma = complex(sigma)
        self.source = source
        self.boundary_data = boundary_data
        self.boundary = boundary
        self.name = name
        self.exact = exact

    def __repr__(self):
        return (
            f"{self.name} problem | {self.kappa} | sigma={self.sigma:.4g} "
            f"| {self.boundary} boundary"
        )

    @property
    def kappa_max(self):
        return self.kappa.max

    def f(self, points):
        if self.source is None:
            return np.zeros(np.shape(points)[:-1])
        return self.source(points)

    def g(self, points, normals):
        if self.boundary_data is None:
            return np.zeros(np.shape(points)[:-1])
        return self.boundary_data(points, normals)

    def with_sigma(self, sigma):
        """ copy of the problem with a different penalty weight """
        return HelmholtzProblem(
            self.kappa,
            sigma=sigma,
            source=self.source,
            boundary_data=self.boundary_data,
            boundary=self.boundary,
            name=self.name,
            exact=self.exact,
        )

    # ------------------------------- factories ------------------------------ #
    @classmethod
    def bessel(cls, kappa, gamma_e=None, p=1):
        """
            Plane problem on the unit square centered at the origin whose
            exact solution is radial and written with Bessel functions.
        """
        gamma_e = GAMMA_E[p] if gamma_e is None else gamma_e

        def g(points, normals):
            grad = bessel_gradient(kappa, points)
            return np.sum(grad * normals, axis=-1) + 1j * kappa * (
                bessel_exact_solution(kappa, points)
            )

        return cls(
            kappa,
            sigma=1j * gamma_e,
            source=lambda points: bessel_source(kappa, points),
            boundary_data=g,
            name="bessel",
            exact=lambda points: bessel_exact_solution(kappa, points),
        )

    @classmethod
    def gaussian(cls, kappa1, q, gamma_e=None, p=1, center=GAUSSIAN_CENTER):
        """
            Piecewise constant wave number on the quadrants with a narrow
            gaussian source and g = 0.
        """
        gamma_e = GAMMA_E[p] if gamma_e is None else gamma_e
        field = QuadrantKappa(kappa1, q)
        kappa_center = float(field(np.asarray(center)))

        return cls(
            field,
            sigma=1j * gamma_e,
            source=lambda points: gaussian_source(
                points, center=center, kappa_local=kappa_center
            ),
            name="gaussian",
        )
