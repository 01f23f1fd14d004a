"""Husimi and P quasiprobability functions on the sphere.

``H(n) = <n| rho |n>`` is read off the Majorana polynomial: the coherent
state overlap ``<n|psi>`` equals ``p_psi(z1, z2)`` at
``z1 = cos(theta/2)``, ``z2 = -sin(theta/2) e^{-i phi}``, so ``H(n)`` is
``p_rho`` at that point. The P-function is the unique multipole expansion
up to degree ``2s`` with ``rho = int P(n) |n><n| dOmega``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .angular import wigner_D
from .constellation import star_angles
from .polynomial import MajoranaPoly, evaluate, poly_from_operator
from .srep import l_factor
from .trep import block_components

__all__ = [
    "SphereGrid",
    "sphere_grid",
    "spherical_harmonics",
    "husimi",
    "husimi_grid",
    "p_function_prefactor",
    "p_function_coefficients",
    "p_function",
    "p_function_grid",
    "p_reconstruct",
    "grid_rows",
]


@dataclass(frozen=True)
class SphereGrid:
    """Product quadrature: Gauss-Legendre in ``cos(theta)``, uniform in ``phi``.

    ``nodes`` has shape ``(K, 3)`` and ``weights`` sums to ``4 pi``.
    """

    theta: np.ndarray
    phi: np.ndarray
    weights: np.ndarray

    @property
    def nodes(self) -> np.ndarray:
        return np.stack([np.sin(self.theta) * np.cos(self.phi),
                         np.sin(self.theta) * np.sin(self.phi),
                         np.cos(self.theta)], axis=1)

    def __len__(self) -> int:
        return self.theta.size

    def integrate(self, values) -> complex | np.ndarray:
        values = np.asarray(values)
        return np.tensordot(self.weights, values, axes=(0, 0))


def sphere_grid(degree: int) -> SphereGrid:
    """Grid integrating spherical harmonics exactly up to ``degree``."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    n_theta = degree // 2 + 1
    n_phi = degree + 1
    x, wx = np.polynomial.legendre.leggauss(n_theta)
    phi = 2 * np.pi * np.arange(n_phi) / n_phi
    theta = np.arccos(x)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    ww = np.repeat(wx[:, None] * (2 * np.pi / n_phi), n_phi, axis=1)
    return SphereGrid(tt.ravel(), pp.ravel(), ww.ravel())


def spherical_harmonics(sigma: int, theta: float, phi: float) -> np.ndarray:
    """``Y_{sigma mu}(theta, phi)`` for ``mu = sigma .. -sigma`` (Condon-Shortley).

    Uses ``Y_{l m} = sqrt((2l+1)/4pi) conj(D^l_{m 0}(phi, theta, 0))``.
    """
    d = wigner_D(sigma, (phi, theta, 0.0))
    return math.sqrt((2 * sigma + 1) / (4 * math.pi)) * np.conj(d[:, sigma])


def _husimi_point(star) -> tuple[complex, complex]:
    theta, phi = star_angles(star)
    return math.cos(theta / 2), -math.sin(theta / 2) * np.exp(-1j * phi)


def husimi(rho, star) -> float:
    """``<n| rho |n>`` for the unit vector ``star``."""
    p = rho if isinstance(rho, MajoranaPoly) else poly_from_operator(rho)
    z1, z2 = _husimi_point(star)
    return float(evaluate(p, z1, z2).real)


def husimi_grid(rho, grid: SphereGrid) -> np.ndarray:
    p = poly_from_operator(rho)
    return np.array([husimi(p, n) for n in grid.nodes])


def p_function_prefactor(two_s: int, sigma: int) -> float:
    """Weight of ``rho_{sigma mu} Y_{sigma mu}`` in the P-function (``mu``-independent)."""
    return l_factor(two_s, sigma) * math.sqrt(math.factorial(2 * sigma + 1)) / (
        math.sqrt(4 * math.pi) * math.factorial(sigma))


def p_function_coefficients(rho) -> list[np.ndarray]:
    """Multipole coefficients ``P_{sigma mu}`` with ``P(n) = sum P_{sigma mu} Y_{sigma mu}(n)``."""
    comps = block_components(np.asarray(rho, dtype=complex))
    two_s = len(comps) - 1
    return [p_function_prefactor(two_s, sigma) * v for sigma, v in enumerate(comps)]


def _p_from_coefficients(coeffs, star) -> float:
    theta, phi = star_angles(star)
    total = 0j
    for sigma, c in enumerate(coeffs):
        total += c @ spherical_harmonics(sigma, theta, phi)
    return float(total.real)


def p_function(rho, star) -> float:
    """P-function of ``rho`` at the unit vector ``star``."""
    return _p_from_coefficients(p_function_coefficients(rho), star)


def p_function_grid(rho, grid: SphereGrid) -> np.ndarray:
    coeffs = p_function_coefficients(rho)
    return np.array([_p_from_coefficients(coeffs, n) for n in grid.nodes])


def p_reconstruct(rho, grid: SphereGrid | None = None) -> np.ndarray:
    """``int P(n) |n><n| dOmega`` by quadrature; returns ``rho`` when exact."""
    from .states import coherent_state

    rho = np.asarray(rho, dtype=complex)
    two_s = rho.shape[0] - 1
    grid = grid or sphere_grid(4 * two_s + 2)
    values = p_function_grid(rho, grid)
    out = np.zeros_like(rho)
    for n, w, val in zip(grid.nodes, grid.weights, values):
        ket = coherent_state(two_s, n)
        out += w * val * np.outer(ket, ket.conj())
    return out


def grid_rows(grid: SphereGrid, values) -> list[tuple[float, float, float]]:
    """``(theta, phi, value)`` rows for CSV export."""
    return [(float(t), float(p), float(v)) for t, p, v in zip(grid.theta, grid.phi, values)]

