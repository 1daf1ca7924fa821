"""Complex special-function primitives.

The library needs the principal branch of log-Gamma on the right half-plane
(and on vertical lines through it) plus digamma for derivative formulas.
scipy's implementations are used behind a thin facade; the contracts that
matter here (recurrence and reflection residuals below 1e-12) are pinned by
tests rather than by the choice of algorithm.
"""

import numpy as np
import scipy.special as sc


def log_gamma(z):
    """Principal branch of log Gamma(z), vectorized over complex input."""
    return sc.loggamma(z)


def gamma_fn(z):
    """Gamma(z) evaluated as exp(log_gamma), safe for moderate |z|."""
    return np.exp(sc.loggamma(z))


def digamma(z):
    """Digamma function, complex capable."""
    return sc.digamma(z)


def gauss_legendre(n):
    """Nodes and weights on [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w
