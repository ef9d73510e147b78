class StencilCoefficients:
    def __init__(self, t, sigma=0.0, beta=0.0):
        """
            Coefficients of the 1D P1 stencil (1/h)[σ, R, 2S, R, σ] of the
            CIP operator, t = κh and σ = iγ the penalty weight.
            A nonzero beta scales the κ² term by (1 + iβ), giving the
            shifted-Laplacian stencil when σ = 0.
        """
        self.t = t
        self.sigma = complex(sigma)
        self.beta = beta

        shift = (1 + 1j * beta) * t ** 2
        self.R = -1 - 4 * self.sigma - shift / 6
        self.S = 1 + 3 * self.sigma - shift / 3

    def __repr__(self):
        return (
            f"stencil | t={self.t:.4g} sigma={self.sigma:.4g} "
            f"R={self.R:.4g} S={self.S:.4g}"
        )

    @property
    def diagonals(self):
        """ stencil entries at offsets -2 ... 2, without the 1/h factor """
        return (self.sigma, self.R, 2 * self.S, self.R, self.sigma)
