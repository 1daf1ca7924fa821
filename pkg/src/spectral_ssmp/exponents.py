"""Levy-Khintchine exponents: quadruplets and Wiener-Hopf pairs.

An exponent psi can be given directly by its quadruplet
(psi(0), b, sigma^2, mu),

    psi(xi) = psi(0) - i b xi + sigma^2 xi^2
              + integral (1 - e^{i xi y} + i xi y 1_{|y|<=1}) mu(dy),

or through an ordered pair of Bernstein functions (phi_plus, phi_minus),

    psi(xi) = phi_plus(-i xi) * phi_minus(i xi).

No factorization from a quadruplet is attempted: pairs are primary input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bernstein import (
    BernsteinFunction,
    DensityMeasure,
    _density_nodes,
    _tail_consts,
    eval_phi,
)
from .errors import DomainError, QuadratureError

__all__ = [
    "SignedMeasure",
    "LevyQuadruplet",
    "WienerHopfPair",
    "Exponent",
    "eval_psi",
    "conjugate",
    "weak_nonlattice_check",
]


@dataclass(frozen=True)
class SignedMeasure:
    """Levy measure on R minus {0}: atoms plus one tabulated density per side.

    density_pos covers (0, inf); density_neg is the reflected measure of the
    negative side, i.e. a DensityMeasure in the variable |y| for y < 0.
    """

    atoms: tuple = ()
    density_pos: Optional[DensityMeasure] = None
    density_neg: Optional[DensityMeasure] = None

    def __post_init__(self):
        for y, m in self.atoms:
            if y == 0 or m <= 0:
                raise DomainError("atoms need nonzero location, positive mass")

    @property
    def is_empty(self):
        return (not self.atoms and self.density_pos is None
                and self.density_neg is None)

    def reflected(self):
        return SignedMeasure(
            atoms=tuple((-y, m) for y, m in self.atoms),
            density_pos=self.density_neg,
            density_neg=self.density_pos,
        )


@dataclass(frozen=True)
class LevyQuadruplet:
    psi0: float = 0.0
    b: float = 0.0
    sigma2: float = 0.0
    mu: SignedMeasure = SignedMeasure()

    def __post_init__(self):
        if self.psi0 < 0 or self.sigma2 < 0:
            raise DomainError("psi(0) and sigma^2 must be nonnegative")
        # integrability of (y^2 ^ 1) mu(dy): declared near-zero tail exponent
        # must stay below 2 on both sides
        for d in (self.mu.density_pos, self.mu.density_neg):
            if d is not None and d.tail_exponent_zero >= 2.0:
                raise DomainError("near-zero exponent >= 2 violates "
                                  "integral (y^2 ^ 1) mu(dy) < inf")


@dataclass(frozen=True)
class WienerHopfPair:
    phi_plus: BernsteinFunction
    phi_minus: BernsteinFunction


@dataclass(frozen=True)
class Exponent:
    """Exactly one canonical representation, optionally both for cross-checks."""

    quadruplet: Optional[LevyQuadruplet] = None
    pair: Optional[WienerHopfPair] = None

    def __post_init__(self):
        if self.quadruplet is None and self.pair is None:
            raise DomainError("an exponent needs a quadruplet or a pair")

    @property
    def primary(self):
        return self.pair if self.pair is not None else self.quadruplet


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _compensated_kernel(xi, y):
    """(1 - e^{i xi y} + i xi y 1_{|y|<=1}) for xi (..., 1) against y (m,)."""
    ph = np.exp(1j * np.multiply.outer(xi, y))
    comp = np.where(np.abs(y) <= 1.0, y, 0.0)
    return 1.0 - ph + 1j * np.multiply.outer(xi, comp)


def _density_side_integral(dens: DensityMeasure, xi, sign):
    """Jump integral over one side; sign = +1 for y > 0, -1 for y < 0."""
    nodes, wts, rem = _density_nodes(dens)
    xi = np.asarray(xi, dtype=float)
    flat = xi.ravel()
    core = np.empty(flat.shape, dtype=complex)
    chunk = max(64, int(2e6 // max(1, nodes.size)))
    for lo in range(0, flat.size, chunk):
        kern = _compensated_kernel(flat[lo:lo + chunk], sign * nodes)
        core[lo:lo + chunk] = kern @ wts
    core = core.reshape(xi.shape)
    # remainder mass beyond the node span: jumps there are > 1 in size, so
    # the compensator is absent and the kernel contributes ~ 1 * mass
    core = core + rem
    # near-zero analytic piece: kernel ~ -(i xi y)^2/2 - ... on (0, y_min)
    y0, _, a0, _, c0, _ = _tail_consts(dens)
    if c0 > 0.0:
        zy = 1j * xi * (sign * y0)
        if np.max(np.abs(zy)) > 10.0:
            raise QuadratureError("density table does not reach low enough "
                                  "for this frequency; extend y_min")
        total = np.zeros_like(zy)
        term = np.ones_like(zy)
        for k in range(1, 30):
            term = term * zy / k
            if k >= 2:
                total = total - term / (k - a0)
        core = core + c0 * y0 ** (-a0) * total
    return core


def _quad_psi(q: LevyQuadruplet, xi):
    xi = np.asarray(xi, dtype=float)
    out = (q.psi0 - 1j * q.b * xi + q.sigma2 * xi ** 2).astype(complex)
    mu = q.mu
    for y, m in mu.atoms:
        comp = 1j * xi * y if abs(y) <= 1.0 else 0.0
        out = out + m * (1.0 - np.exp(1j * xi * y) + comp)
    if mu.density_pos is not None:
        out = out + _density_side_integral(mu.density_pos, xi, +1)
    if mu.density_neg is not None:
        out = out + _density_side_integral(mu.density_neg, xi, -1)
    return out


def eval_psi(e: Exponent, xi):
    """psi(xi) for real xi, vectorized; prefers the pair representation."""
    xi_arr = np.asarray(xi, dtype=float)
    if e.pair is not None:
        zp = -1j * xi_arr
        zm = 1j * xi_arr
        out = eval_phi(e.pair.phi_plus, zp) * eval_phi(e.pair.phi_minus, zm)
    else:
        out = _quad_psi(e.quadruplet, xi_arr)
    return out if np.ndim(xi) else complex(out)


def conjugate(e: Exponent) -> Exponent:
    """The conjugate exponent: pair factors swap; the quadruplet reflects."""
    pair = None
    quad = None
    if e.pair is not None:
        pair = WienerHopfPair(e.pair.phi_minus, e.pair.phi_plus)
    if e.quadruplet is not None:
        q = e.quadruplet
        quad = LevyQuadruplet(q.psi0, -q.b, q.sigma2, q.mu.reflected())
    return Exponent(quadruplet=quad, pair=pair)


def weak_nonlattice_check(phi: BernsteinFunction, xi_max: float,
                          n_points: int = 256) -> tuple:
    """Fit the decay rate kappa of |phi(i xi)| (|phi| ~ |xi|^{-kappa}) and
    report whether |xi|^kappa |phi(i xi)| stays bounded below.

    Lattice-type oscillation (|phi(i xi)| dipping to near zero along the
    grid) returns ok = False.
    """
    if xi_max <= 10:
        raise DomainError("xi_max must exceed 10")
    xi = np.exp(np.linspace(np.log(1.0), np.log(xi_max), n_points))
    mags = np.abs(eval_phi(phi, 1j * xi))
    if np.any(mags == 0.0):
        return float("nan"), False
    # least-squares slope of log|phi| against log xi on the upper half
    half = xi >= np.sqrt(xi_max)
    lx, lm = np.log(xi[half]), np.log(mags[half])
    slope = float(np.polyfit(lx, lm, 1)[0])
    kappa = -slope
    # zero detection: linear scan (lattice zeros are equally spaced), then
    # a local refinement around the worst dip of the trend-corrected level
    lin = np.linspace(1.0, xi_max, 16 * n_points)
    scaled = np.abs(eval_phi(phi, 1j * lin)) * lin ** kappa
    med = float(np.median(scaled))
    i0 = int(np.argmin(scaled))
    window = np.linspace(lin[max(0, i0 - 1)], lin[min(lin.size - 1, i0 + 1)],
                         512)
    local = np.abs(eval_phi(phi, 1j * window)) * window ** kappa
    ok = bool(min(np.min(scaled), np.min(local)) > 1e-3 * med)
    return kappa, ok
