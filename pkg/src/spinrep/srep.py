"""S-representation: projected Pauli products, T-to-S coefficients, ladder commutators.

An index ``nu = (nu0, nu_minus, nu_z, nu_plus)`` with ``sum(nu) = 2s``
labels the operator ``S_nu = P (sigma_0^nu0 sigma_-^nu- sigma_z^nuz
sigma_+^nu+) P`` with ``sigma_+- = sigma_x +- i sigma_y`` and ``P`` the
projector onto the symmetric subspace. Its Majorana polynomial factorises
as ``p_0^nu0 p_-^nu- p_z^nuz p_+^nu+``, which is how it is built here.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .polynomial import (MajoranaPoly, identity_poly, multiply, operator_from_poly,
                         poly_from_operator, trace_product)

__all__ = [
    "NuIndex",
    "compositions",
    "pauli_poly",
    "s_poly",
    "s_operator",
    "srep_coefficients",
    "reduced_srep",
    "l_factor",
    "reduction_factor",
    "embed_lift",
    "t_in_s_expansion",
    "t_from_s_expansion",
    "ladder_commutator",
    "nested_commutator_tensor",
    "srep_to_json",
    "srep_from_json",
]


class NuIndex(NamedTuple):
    nu0: int
    nu_minus: int
    nu_z: int
    nu_plus: int

    @property
    def two_s(self) -> int:
        return self.nu0 + self.nu_minus + self.nu_z + self.nu_plus


def _as_nu(nu) -> NuIndex:
    nu = NuIndex(*(int(x) for x in nu))
    if min(nu) < 0:
        raise ValueError(f"negative entry in nu={tuple(nu)}")
    return nu


def compositions(two_s: int) -> list[NuIndex]:
    """All ``nu`` with ``sum(nu) = two_s``, in lexicographic order."""
    out = []
    for a in range(two_s + 1):
        for b in range(two_s - a + 1):
            for c in range(two_s - a - b + 1):
                out.append(NuIndex(a, b, c, two_s - a - b - c))
    return out


# spin-1/2 polynomials of sigma_0, sigma_-, sigma_z, sigma_+
_PAULI_COEFFS = {
    0: np.array([[1, 0], [0, 1]], dtype=complex),
    1: np.array([[0, -2], [0, 0]], dtype=complex),
    2: np.array([[-1, 0], [0, 1]], dtype=complex),
    3: np.array([[0, 0], [-2, 0]], dtype=complex),
}


def pauli_poly(label: str) -> MajoranaPoly:
    """Polynomial of ``sigma_0``, ``sigma_-``, ``sigma_z`` or ``sigma_+`` (labels ``0 - z +``)."""
    return MajoranaPoly(_PAULI_COEFFS["0-z+".index(label)])


@lru_cache(maxsize=512)
def _s_poly(nu: NuIndex) -> MajoranaPoly:
    p = MajoranaPoly(np.ones((1, 1), dtype=complex))
    for j, count in enumerate(nu):
        for _ in range(count):
            p = multiply(p, MajoranaPoly(_PAULI_COEFFS[j]))
    return p


def s_poly(nu) -> MajoranaPoly:
    """Majorana polynomial of ``S_nu`` as a product of single-spin factors."""
    return _s_poly(_as_nu(nu))


def s_operator(nu) -> np.ndarray:
    """Matrix of ``S_nu`` in the ``|s, m>`` basis (``m`` descending)."""
    return operator_from_poly(s_poly(nu))


def srep_coefficients(rho) -> dict[NuIndex, complex]:
    """``c_nu = Tr(rho S_nu)`` for every ``nu``, computed on polynomials."""
    p = poly_from_operator(rho)
    return {nu: trace_product(p, s_poly(nu)) for nu in compositions(p.two_s)}


def reduced_srep(coeffs: dict, two_s: int, two_k: int) -> dict[NuIndex, complex]:
    """Coefficients of the spin-``k`` reduced state read off the spin-``s`` ones.

    ``c'_(nu0, ...) = c_(nu0 + 2(s - k), ...)``.
    """
    if not 0 <= two_k <= two_s:
        raise ValueError("need 0 <= k <= s")
    shift = two_s - two_k
    return {nu: coeffs[NuIndex(nu.nu0 + shift, *nu[1:])] for nu in compositions(two_k)}


# --------------------------------------------------------------------------
# Constituent-loss factors

def l_factor(two_s: int, sigma: int) -> float:
    """``l(s, sigma) = sqrt((2s+sigma+1)! (2s-sigma)! / (2 sigma+1)!) sigma! / (2s)!``."""
    if not 0 <= sigma <= two_s:
        raise ValueError(f"need 0 <= sigma <= 2s, got sigma={sigma}, two_s={two_s}")
    f = math.factorial
    ratio = Fraction(f(two_s + sigma + 1) * f(two_s - sigma), f(2 * sigma + 1))
    return math.sqrt(ratio) * f(sigma) / f(two_s)


def reduction_factor(two_s: int, sigma: int) -> float:
    """Scale of block ``sigma`` when one constituent is traced out of spin ``s``.

    ``sqrt((2s+sigma+1)(2s-sigma)) / (2s)``; zero for ``sigma = 2s``.
    """
    if two_s < 1:
        raise ValueError("spin 0 has no constituent to trace out")
    if not 0 <= sigma <= two_s:
        raise ValueError(f"need 0 <= sigma <= 2s, got sigma={sigma}, two_s={two_s}")
    return math.sqrt((two_s + sigma + 1) * (two_s - sigma)) / two_s


def embed_lift(p: MajoranaPoly, two_s: int) -> MajoranaPoly:
    """Lift the spin-``sigma/2`` polynomial of ``T_{sigma mu}`` to spin ``s``.

    Multiplies by ``(z^a z_a)^(2s - sigma) / l(s, sigma)`` with
    ``sigma = p.two_s``.
    """
    sigma = p.two_s
    if two_s < sigma:
        raise ValueError(f"cannot lift degree {sigma} to degree {two_s}")
    return multiply(identity_poly(two_s - sigma), p) * (1.0 / l_factor(two_s, sigma))


# --------------------------------------------------------------------------
# T <-> S connection

def t_in_s_expansion(two_s: int, sigma: int, mu: int) -> list[tuple[NuIndex, float]]:
    """Expansion ``T_{sigma mu} = sum A_k S_nu(k)`` at spin ``s``.

    ``nu(k) = (2s - sigma, k - mu, sigma + mu - 2k, k)`` for
    ``k = max(0, mu) .. floor((sigma + mu) / 2)``.
    """
    if not 0 <= sigma <= two_s:
        raise ValueError(f"need 0 <= sigma <= 2s, got sigma={sigma}, two_s={two_s}")
    if abs(mu) > sigma:
        raise ValueError(f"|mu| > sigma: mu={mu}, sigma={sigma}")
    f = math.factorial
    pref = math.sqrt(Fraction(f(sigma + mu) * f(sigma - mu), f(2 * sigma))) / l_factor(two_s, sigma)
    terms = []
    for k in range(max(0, mu), (sigma + mu) // 2 + 1):
        comb = Fraction(f(sigma), f(k) * f(k - mu) * f(sigma + mu - 2 * k))
        a = pref * (-1) ** k * float(Fraction(2) ** (mu - 2 * k) * comb)
        terms.append((NuIndex(two_s - sigma, k - mu, sigma + mu - 2 * k, k), a))
    return terms


def t_from_s_expansion(two_s: int, sigma: int, mu: int) -> np.ndarray:
    """Matrix ``sum_k A_k S_nu(k)``; should equal ``tensor_operator(two_s, sigma, mu)``."""
    n = two_s + 1
    out = np.zeros((n, n), dtype=complex)
    for nu, a in t_in_s_expansion(two_s, sigma, mu):
        out += a * s_operator(nu)
    return out


def ladder_commutator(nu) -> dict[NuIndex, float]:
    """``[S_-, S_nu]`` with ``S_- = (N/2) S_(N-1,1,0,0)``, as ``{nu': coefficient}``.

    Equals ``nu_z S_(nu0, nu- + 1, nu_z - 1, nu+) - 2 nu+ S_(nu0, nu-, nu_z + 1, nu+ - 1)``.
    """
    nu = _as_nu(nu)
    out: dict[NuIndex, float] = {}
    if nu.nu_z:
        out[NuIndex(nu.nu0, nu.nu_minus + 1, nu.nu_z - 1, nu.nu_plus)] = float(nu.nu_z)
    if nu.nu_plus:
        key = NuIndex(nu.nu0, nu.nu_minus, nu.nu_z + 1, nu.nu_plus - 1)
        out[key] = out.get(key, 0.0) - 2.0 * nu.nu_plus
    return out


def nested_commutator_tensor(tau: int, mu: int) -> dict[NuIndex, float]:
    """``T^(tau/2)_{tau mu}`` in S-rep coefficients via repeated ladder commutators.

    Starts from ``T_{tau tau} = (-2)^(-tau) S_(0,0,0,tau)``, applies
    ``[S_-, .]`` ``tau - mu`` times and rescales by
    ``sqrt((tau + mu)! / ((2 tau)! (tau - mu)!))``.
    """
    if abs(mu) > tau:
        raise ValueError(f"|mu| > tau: mu={mu}, tau={tau}")
    current: dict[NuIndex, float] = {NuIndex(0, 0, 0, tau): (-2.0) ** (-tau)}
    for _ in range(tau - mu):
        nxt: dict[NuIndex, float] = {}
        for nu, coef in current.items():
            for key, c in ladder_commutator(nu).items():
                nxt[key] = nxt.get(key, 0.0) + coef * c
        current = {k: v for k, v in nxt.items() if v != 0.0}
    f = math.factorial
    scale = math.sqrt(Fraction(f(tau + mu), f(2 * tau) * f(tau - mu)))
    return {nu: scale * c for nu, c in current.items()}


def srep_to_json(coeffs: dict) -> list[dict]:
    return [{"nu": list(map(int, nu)), "re": float(complex(c).real), "im": float(complex(c).imag)}
            for nu, c in sorted(coeffs.items())]


def srep_from_json(entries) -> dict[NuIndex, complex]:
    return {_as_nu(e["nu"]): complex(e["re"], e["im"]) for e in entries}
