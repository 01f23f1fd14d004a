"""Majorana polynomials of spin operators.

An operator ``C`` on spin ``s`` (``N = 2s``) is mapped to the bihomogeneous
polynomial ``p_C(z, zbar) = <-n_B| C |-n_B>`` in ``(z1, z2, zbar1, zbar2)``.
It is stored as an ``(N+1, N+1)`` coefficient array ``c`` where ``c[a, g]``
multiplies ``z1^a z2^(N-a) zbar1^g zbar2^(N-g)``.

Every differential operator of the algebra (partial trace, trace, operator
product, trace of a product, star-directional derivatives) acts on ``c`` as
a banded contraction with integer combinatorial weights, so no symbolic
differentiation happens at runtime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.signal import convolve2d

__all__ = [
    "MajoranaPoly",
    "PureMajoranaPoly",
    "bsc_weights",
    "poly_from_operator",
    "operator_from_poly",
    "identity_poly",
    "pure_poly",
    "ket_from_pure_poly",
    "poly_of_pure_density",
    "multiply",
    "adjoint",
    "evaluate",
    "partial_trace_L",
    "trace",
    "product",
    "trace_product",
    "directional_derivative",
    "expectation",
    "is_pure_poly",
    "anticoherence_residuals",
    "anticoherence_order",
    "poly_to_json",
    "poly_from_json",
]


def _frozen(arr) -> np.ndarray:
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class MajoranaPoly:
    """Coefficients of a degree-(N, N) polynomial in ``(z_a, z^a)``."""

    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = _frozen(self.coeffs)
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise ValueError(f"coefficient array must be square, got {c.shape}")
        object.__setattr__(self, "coeffs", c)

    @property
    def two_s(self) -> int:
        return self.coeffs.shape[0] - 1

    def __add__(self, other):
        return MajoranaPoly(self.coeffs + other.coeffs)

    def __sub__(self, other):
        return MajoranaPoly(self.coeffs - other.coeffs)

    def __mul__(self, scalar):
        return MajoranaPoly(self.coeffs * scalar)

    __rmul__ = __mul__

    def __repr__(self):
        return f"MajoranaPoly(two_s={self.two_s})"


@dataclass(frozen=True)
class PureMajoranaPoly:
    """Coefficients ``p[a]`` of ``z1^a z2^(N-a)`` for a ket."""

    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = _frozen(self.coeffs)
        if c.ndim != 1:
            raise ValueError("pure polynomial coefficients must be a vector")
        if not np.any(c):
            raise ValueError("pure polynomial must not vanish identically")
        object.__setattr__(self, "coeffs", c)

    @property
    def two_s(self) -> int:
        return self.coeffs.size - 1

    def __repr__(self):
        return f"PureMajoranaPoly(two_s={self.two_s})"


@lru_cache(maxsize=128)
def _bsc(n: int) -> np.ndarray:
    w = np.array([(-1) ** (n - a) * math.sqrt(math.comb(n, a)) for a in range(n + 1)])
    w.setflags(write=False)
    return w


def bsc_weights(n: int) -> np.ndarray:
    """Weights ``(-1)^(s-m) sqrt(C(2s, s-m))`` indexed by the power ``a = s + m`` of z1."""
    return _bsc(int(n))


@lru_cache(maxsize=128)
def _inv_binom(n: int) -> np.ndarray:
    w = np.array([1.0 / math.comb(n, a) for a in range(n + 1)])
    w.setflags(write=False)
    return w


def poly_from_operator(op) -> MajoranaPoly:
    """Majorana polynomial ``<-n_B| op |-n_B>`` of any square matrix."""
    op = np.asarray(op, dtype=complex)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise ValueError("operator must be a square matrix")
    b = _bsc(op.shape[0] - 1)
    # c[s+m, s+m'] = b b' op[m, m']; rows of op run over descending m
    return MajoranaPoly(b[:, None] * op[::-1, ::-1] * b[None, :])


def operator_from_poly(p: MajoranaPoly) -> np.ndarray:
    """Inverse of :func:`poly_from_operator`."""
    b = _bsc(p.two_s)
    return (p.coeffs / (b[:, None] * b[None, :]))[::-1, ::-1].copy()


def identity_poly(two_s: int) -> MajoranaPoly:
    """``(z^a z_a)^N``, the polynomial of the identity."""
    n = int(two_s)
    return MajoranaPoly(np.diag([float(math.comb(n, a)) for a in range(n + 1)]))


def pure_poly(psi) -> PureMajoranaPoly:
    """``p_psi(z1, z2) = sum_m (-1)^(s-m) sqrt(C(2s, s-m)) psi_m z1^(s+m) z2^(s-m)``."""
    psi = np.asarray(psi, dtype=complex)
    return PureMajoranaPoly(_bsc(psi.size - 1) * psi[::-1])


def ket_from_pure_poly(p) -> np.ndarray:
    """Ket whose Majorana polynomial is ``p`` (not normalised)."""
    coeffs = p.coeffs if isinstance(p, PureMajoranaPoly) else np.asarray(p, dtype=complex)
    return (coeffs / _bsc(coeffs.size - 1))[::-1].copy()


def poly_of_pure_density(psi) -> MajoranaPoly:
    """``p_psi(z_a) * conj-coefficients p_psi(z^a)``."""
    p = pure_poly(psi).coeffs
    return MajoranaPoly(np.outer(p, p.conj()))


def multiply(p: MajoranaPoly, q: MajoranaPoly) -> MajoranaPoly:
    """Ordinary product of polynomials; degrees add."""
    return MajoranaPoly(convolve2d(p.coeffs, q.coeffs))


def adjoint(p: MajoranaPoly) -> MajoranaPoly:
    """Polynomial of ``A^dagger``: swap ``z_a <-> z^a`` and conjugate coefficients."""
    return MajoranaPoly(p.coeffs.conj().T)


def evaluate(p: MajoranaPoly, z1, z2, w1=None, w2=None) -> complex:
    """Evaluate at ``(z1, z2, w1, w2)``; ``w`` defaults to ``conj(z)``."""
    if w1 is None:
        w1 = np.conj(z1)
    if w2 is None:
        w2 = np.conj(z2)
    n = p.two_s
    a = np.arange(n + 1)
    hol = z1 ** a * z2 ** (n - a)
    anti = w1 ** a * w2 ** (n - a)
    return complex(hol @ p.coeffs @ anti)


# --------------------------------------------------------------------------
# differential operators on coefficient arrays

def _d_hol(c: np.ndarray, x1: complex, x2: complex) -> np.ndarray:
    """``(x1 d/dz1 + x2 d/dz2)`` acting on the holomorphic (row) variables."""
    n = c.shape[0] - 1
    a = np.arange(n)[:, None]
    return x1 * (a + 1) * c[1:, :] + x2 * (n - a) * c[:-1, :]


def _d_anti(c: np.ndarray, x1: complex, x2: complex) -> np.ndarray:
    """``(x1 d/dzbar1 + x2 d/dzbar2)`` acting on the antiholomorphic (column) variables."""
    return _d_hol(c.T, x1, x2).T


def partial_trace_L(p: MajoranaPoly) -> MajoranaPoly:
    """``L p = N^-2 (d_1 d^1 + d_2 d^2) p``: trace out one spin-1/2 constituent."""
    n = p.two_s
    if n < 1:
        raise ValueError("cannot trace out a constituent of a spin-0 operator")
    c = p.coeffs
    a = np.arange(n)
    out = (np.outer(a + 1, a + 1) * c[1:, 1:] + np.outer(n - a, n - a) * c[:-1, :-1])
    return MajoranaPoly(out / n ** 2)


def trace(p: MajoranaPoly) -> complex:
    """``(N!)^-2 (d_a d^a)^N p``, which reduces to ``sum_a c[a, a] / C(N, a)``."""
    return complex(np.diagonal(p.coeffs) @ _inv_binom(p.two_s))


def product(pD: MajoranaPoly, pE: MajoranaPoly) -> MajoranaPoly:
    """Polynomial of the operator product ``D E``.

    ``(N!)^-1 p_D(z_a, d_a) p_E(z_a, z^a)`` contracts the antiholomorphic
    index of ``D`` with the holomorphic index of ``E`` with weight
    ``1 / C(N, g)``.
    """
    if pD.two_s != pE.two_s:
        raise ValueError(f"degree mismatch: {pD.two_s} vs {pE.two_s}")
    return MajoranaPoly((pD.coeffs * _inv_binom(pD.two_s)) @ pE.coeffs)


def trace_product(pC: MajoranaPoly, pD: MajoranaPoly) -> complex:
    """``Tr(C D) = (N!)^-2 p_C(d^a, d_a) p_D(z_a, z^a)``."""
    if pC.two_s != pD.two_s:
        raise ValueError(f"degree mismatch: {pC.two_s} vs {pD.two_s}")
    w = _inv_binom(pC.two_s)
    return complex(np.sum((w[:, None] * pC.coeffs * w[None, :]) * pD.coeffs.T))


def _spinor(star) -> tuple[complex, complex]:
    """``(cos(theta/2), sin(theta/2) e^{i phi})`` for a unit 3-vector."""
    x, y, z = (float(v) for v in star)
    # half-angle formulas stay accurate near both poles
    cz = math.sqrt(max(0.0, (1 + z) / 2))
    sz = math.sqrt(max(0.0, (1 - z) / 2))
    rho = math.hypot(x, y)
    phase = complex(x, y) / rho if rho > 0 else 1.0
    return cz, sz * phase


def directional_derivative(p: PureMajoranaPoly, star) -> PureMajoranaPoly:
    """``(cos(theta/2) d_z1 - sin(theta/2) e^{-i phi} d_z2) p``.

    This is the Majorana polynomial of ``(<m| (x) 1) |psi>``, the state
    left after contracting one constituent with the spin-1/2 state ``|m>``.
    """
    alpha, beta = _spinor(star)
    c = p.coeffs
    n = c.size - 1
    if n < 1:
        raise ValueError("cannot differentiate a degree-0 polynomial")
    a = np.arange(n)
    out = np.conj(alpha) * (a + 1) * c[1:] - np.conj(beta) * (n - a) * c[:-1]
    return PureMajoranaPoly(out)


def expectation(psi, pC: MajoranaPoly) -> complex:
    """``<psi| C |psi>`` from the stars of ``psi`` acting as derivatives on ``p_C``.

    Applies ``d^{n_N} ... d^{n_1} d_{n_N} ... d_{n_1}`` and divides by
    ``(N!)^2``. The product of unit-spinor linear forms describes an
    unnormalised ket, so the result is rescaled by its squared norm.
    """
    from .constellation import constellation_of_ket

    if isinstance(psi, PureMajoranaPoly):
        psi = ket_from_pure_poly(psi)
    psi = np.asarray(psi, dtype=complex)
    n = psi.size - 1
    if pC.two_s != n:
        raise ValueError(f"degree mismatch: state two_s={n}, operator two_s={pC.two_s}")
    psi = psi / np.linalg.norm(psi)
    stars = constellation_of_ket(psi)
    c = pC.coeffs
    lin = np.ones(1, dtype=complex)
    for star in stars:
        alpha, beta = _spinor(star)
        c = _d_hol(c, np.conj(alpha), -np.conj(beta))
        c = _d_anti(c, alpha, -beta)
        lin = np.convolve(lin, [-beta, alpha])
    unnormalised = ket_from_pure_poly(lin)
    return complex(c[0, 0]) / math.factorial(n) ** 2 / np.vdot(unnormalised, unnormalised).real


def is_pure_poly(p: MajoranaPoly, tol: float = 1e-8) -> bool:
    """True iff ``p`` is the polynomial of a pure density matrix.

    Tested as: Hermitian, rank-one coefficient array and unit trace.
    """
    c = p.coeffs
    scale = np.abs(c).max()
    if scale == 0:
        return False
    if np.abs(c - c.conj().T).max() > tol * scale:
        return False
    sv = np.linalg.svd(c, compute_uv=False)
    if sv.size > 1 and sv[1] > tol * sv[0]:
        return False
    return abs(trace(p) - 1) <= tol


def anticoherence_residuals(p: MajoranaPoly) -> list[float]:
    """Hilbert-Schmidt norm of the traceless part of ``L^(2s-t) p`` for ``t = 0..2s``."""
    n = p.two_s
    reduced = [p]
    for _ in range(n):
        reduced.append(partial_trace_L(reduced[-1]))
    out = []
    for t in range(n + 1):
        q = reduced[n - t]
        ident = identity_poly(t)
        r = q - ident * (trace(q) / (t + 1))
        out.append(math.sqrt(max(0.0, trace_product(adjoint(r), r).real)))
    return out


def anticoherence_order(p: MajoranaPoly, tol: float = 1e-9) -> int:
    """Largest ``t`` with ``L^(2s-t'') p`` proportional to ``(z^a z_a)^t''`` for all ``t'' <= t``."""
    order = 0
    for t, res in enumerate(anticoherence_residuals(p)):
        if t == 0:
            continue
        if res > tol:
            break
        order = t
    return order


def poly_to_json(p: MajoranaPoly) -> list[dict]:
    """Nonzero coefficients as ``[{alpha, gamma, re, im}, ...]``."""
    out = []
    for (a, g), v in np.ndenumerate(p.coeffs):
        if v != 0:
            out.append({"alpha": int(a), "gamma": int(g),
                        "re": float(v.real), "im": float(v.imag)})
    return out


def poly_from_json(entries, two_s: int) -> MajoranaPoly:
    c = np.zeros((two_s + 1, two_s + 1), dtype=complex)
    for e in entries:
        c[e["alpha"], e["gamma"]] = complex(e["re"], e["im"])
    return MajoranaPoly(c)
