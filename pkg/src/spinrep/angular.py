"""Angular-momentum kernel.

Clebsch-Gordan coefficients, SU(2) rotation matrices, irreducible tensor
operators, symmetric (Dicke) projections and the antipodal map.

Conventions used throughout the package:

* spins are passed as ``two_s = 2s`` so half-integers stay exact;
* kets and matrices are indexed with ``m`` descending, i.e. row ``i``
  holds ``m = s - i``;
* Condon-Shortley phases.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

__all__ = [
    "parse_spin",
    "format_spin",
    "m_values",
    "basis_ket",
    "spin_matrices",
    "clebsch_gordan",
    "tensor_operator",
    "tensor_basis",
    "su2_from_euler",
    "su2_from_axis_angle",
    "as_su2",
    "so3_from_su2",
    "spin_rotation",
    "rotation_matrix",
    "wigner_D",
    "rotate_operator",
    "symmetric_product",
    "symmetric_projector_apply",
    "antipodal_map",
    "antipodal_operator",
]


def parse_spin(text) -> int:
    """Return ``2s`` for a spin given as ``"3/2"``, ``"1"``, ``1.5`` or ``Fraction``."""
    if isinstance(text, str):
        value = Fraction(text.strip())
    else:
        value = Fraction(text).limit_denominator(2)
    two_s = 2 * value
    if two_s.denominator != 1 or two_s < 0:
        raise ValueError(f"not a valid spin: {text!r}")
    return int(two_s)


def format_spin(two_s: int) -> str:
    return str(two_s // 2) if two_s % 2 == 0 else f"{two_s}/2"


def _check_two_s(two_s: int) -> int:
    if int(two_s) != two_s or two_s < 0:
        raise ValueError(f"two_s must be a nonnegative integer, got {two_s!r}")
    return int(two_s)


def m_values(two_s: int) -> np.ndarray:
    """Magnetic quantum numbers ``s, s-1, ..., -s``."""
    two_s = _check_two_s(two_s)
    return (two_s - 2 * np.arange(two_s + 1)) / 2


def basis_ket(two_s: int, two_m: int) -> np.ndarray:
    """The Dicke / S_z eigenstate ``|s, m>`` as a complex vector."""
    two_s = _check_two_s(two_s)
    if abs(two_m) > two_s or (two_s - two_m) % 2:
        raise ValueError(f"invalid m for two_s={two_s}: two_m={two_m}")
    ket = np.zeros(two_s + 1, dtype=complex)
    ket[(two_s - two_m) // 2] = 1.0
    return ket


@lru_cache(maxsize=64)
def _spin_matrices(two_s: int):
    s = two_s / 2
    m = m_values(two_s)
    # <m+1|S+|m> sits on the superdiagonal because m is descending
    sp = np.diag(np.sqrt(s * (s + 1) - m[1:] * (m[1:] + 1)), 1).astype(complex)
    sm = sp.conj().T
    sx = (sp + sm) / 2
    sy = (sp - sm) / 2j
    sz = np.diag(m).astype(complex)
    for a in (sx, sy, sz, sp, sm):
        a.setflags(write=False)
    return sx, sy, sz, sp, sm


def spin_matrices(two_s: int):
    """Return ``(Sx, Sy, Sz, S+, S-)`` for spin ``two_s/2`` (hbar = 1)."""
    return _spin_matrices(_check_two_s(two_s))


@lru_cache(maxsize=None)
def clebsch_gordan(two_j1: int, two_m1: int, two_j2: int, two_m2: int,
                   two_j: int, two_m: int) -> float:
    """Clebsch-Gordan coefficient ``C^{j m}_{j1 m1, j2 m2}`` (Condon-Shortley).

    All arguments are doubled quantum numbers. The Racah sum is evaluated
    in exact rational arithmetic and only the final square root is taken in
    floating point. Returns 0 whenever a selection rule fails.

    Raises
    ------
    ValueError
        If any of ``two_j1, two_j2, two_j`` is negative.
    """
    if min(two_j1, two_j2, two_j) < 0:
        raise ValueError("angular momenta must be nonnegative")
    if two_m != two_m1 + two_m2:
        return 0.0
    if not (abs(two_j1 - two_j2) <= two_j <= two_j1 + two_j2):
        return 0.0
    if (two_j1 + two_j2 + two_j) % 2:
        return 0.0
    for tj, tm in ((two_j1, two_m1), (two_j2, two_m2), (two_j, two_m)):
        if abs(tm) > tj or (tj + tm) % 2:
            return 0.0

    f = math.factorial
    a = (two_j1 + two_j2 - two_j) // 2
    b = (two_j1 - two_m1) // 2
    c = (two_j2 + two_m2) // 2
    d = (two_j - two_j2 + two_m1) // 2
    e = (two_j - two_j1 - two_m2) // 2

    pref = Fraction(
        (two_j + 1)
        * f((two_j + two_j1 - two_j2) // 2)
        * f((two_j - two_j1 + two_j2) // 2)
        * f(a),
        f((two_j1 + two_j2 + two_j) // 2 + 1),
    )
    pref *= (
        f((two_j + two_m) // 2) * f((two_j - two_m) // 2)
        * f((two_j1 - two_m1) // 2) * f((two_j1 + two_m1) // 2)
        * f((two_j2 - two_m2) // 2) * f((two_j2 + two_m2) // 2)
    )

    total = Fraction(0)
    for k in range(max(0, -d, -e), min(a, b, c) + 1):
        den = f(k) * f(a - k) * f(b - k) * f(c - k) * f(d + k) * f(e + k)
        total += Fraction((-1) ** k, den)
    if total == 0:
        return 0.0
    return math.copysign(math.sqrt(pref * total * total), total)


@lru_cache(maxsize=256)
def _tensor_operator(two_s: int, sigma: int, mu: int) -> np.ndarray:
    n = two_s + 1
    out = np.zeros((n, n), dtype=complex)
    for i in range(n):
        two_m = two_s - 2 * i
        for j in range(n):
            two_mp = two_s - 2 * j
            cg = clebsch_gordan(two_s, two_m, two_s, -two_mp, 2 * sigma, 2 * mu)
            if cg:
                out[i, j] = (-1) ** ((two_s - two_mp) // 2) * cg
    out.setflags(write=False)
    return out


def tensor_operator(two_s: int, sigma: int, mu: int) -> np.ndarray:
    """Irreducible tensor operator ``T^{(s)}_{sigma mu}``.

    Entry ``(m, m')`` is ``(-1)^{s-m'} C^{sigma mu}_{s m, s -m'}``. The set
    is orthonormal under ``Tr(A^dagger B)``. The returned array is read-only
    (it is cached); copy it before mutating.
    """
    two_s = _check_two_s(two_s)
    if not (0 <= sigma <= two_s) or abs(mu) > sigma:
        raise ValueError(f"need 0 <= sigma <= 2s and |mu| <= sigma, got "
                         f"sigma={sigma}, mu={mu}, two_s={two_s}")
    return _tensor_operator(two_s, int(sigma), int(mu))


@lru_cache(maxsize=32)
def _tensor_basis(two_s: int) -> np.ndarray:
    n = two_s + 1
    basis = np.zeros((n, 2 * n - 1, n, n), dtype=complex)
    for sigma in range(n):
        for mu in range(-sigma, sigma + 1):
            basis[sigma, sigma - mu] = _tensor_operator(two_s, sigma, mu)
    basis.setflags(write=False)
    return basis


def tensor_basis(two_s: int) -> np.ndarray:
    """All tensor operators stacked as ``B[sigma, sigma - mu]`` (unused slots zero)."""
    return _tensor_basis(_check_two_s(two_s))


# --------------------------------------------------------------------------
# rotations

def su2_from_euler(euler: Sequence[float]) -> np.ndarray:
    """``exp(-i a sz/2) exp(-i b sy/2) exp(-i g sz/2)`` for Euler angles (a, b, g)."""
    a, b, g = (float(x) for x in euler)
    c, s = math.cos(b / 2), math.sin(b / 2)
    return np.array([
        [np.exp(-0.5j * (a + g)) * c, -np.exp(-0.5j * (a - g)) * s],
        [np.exp(0.5j * (a - g)) * s, np.exp(0.5j * (a + g)) * c],
    ])


def su2_from_axis_angle(axis, eta: float) -> np.ndarray:
    """``exp(-i eta e.sigma/2)`` for a unit axis ``e`` given as a 3-vector.

    In Cayley-Klein form the result is ``[[a, -b*], [b, a*]]`` with
    ``a = cos(eta/2) - i sin(eta/2) cos(Theta)`` and
    ``b = -i sin(eta/2) sin(Theta) e^{i Phi}``.
    """
    e = np.asarray(axis, dtype=float)
    e = e / np.linalg.norm(e)
    c, s = math.cos(eta / 2), math.sin(eta / 2)
    a = c - 1j * s * e[2]
    b = -1j * s * (e[0] + 1j * e[1])
    return np.array([[a, -np.conj(b)], [b, np.conj(a)]])


def as_su2(rotation) -> np.ndarray:
    """Accept Euler angles or an explicit 2x2 SU(2) matrix."""
    arr = np.asarray(rotation)
    if arr.shape == (2, 2):
        return arr.astype(complex)
    if arr.shape == (3,):
        return su2_from_euler(arr)
    raise ValueError("rotation must be Euler angles (3,) or a 2x2 SU(2) matrix")


_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]]),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def so3_from_su2(u) -> np.ndarray:
    """The 3x3 rotation ``R`` with ``U sigma_j U^dagger = sum_i R_ij sigma_i``."""
    u = as_su2(u)
    r = np.empty((3, 3))
    for i, si in enumerate(_PAULI):
        for j, sj in enumerate(_PAULI):
            r[i, j] = 0.5 * np.trace(si @ u @ sj @ u.conj().T).real
    return r


def spin_rotation(two_j: int, u) -> np.ndarray:
    """Spin-j representation of an SU(2) element.

    Built from the symmetric tensor power: ``D_{m'm} = <j m'| U^{(x)2j} |j m>``.
    Works for any ``two_j`` and any 2x2 matrix (not only unitary ones).
    """
    two_j = _check_two_s(two_j)
    u = as_su2(u)
    u00, u01, u10, u11 = u[0, 0], u[0, 1], u[1, 0], u[1, 1]
    n = two_j + 1
    out = np.zeros((n, n), dtype=complex)
    fact = [math.factorial(k) for k in range(n)]
    for col in range(n):
        up = two_j - col          # j + m  (number of up spins in |j m>)
        down = col                # j - m
        for row in range(n):
            up_p = two_j - row    # j + m'
            acc = 0j
            for k in range(max(0, up_p - down), min(up, up_p) + 1):
                l = up_p - k
                acc += (math.comb(up, k) * math.comb(down, l)
                        * u00 ** k * u10 ** (up - k) * u01 ** l * u11 ** (down - l))
            out[row, col] = acc * math.sqrt(fact[up_p] * fact[two_j - up_p]
                                            / (fact[up] * fact[down]))
    return out


def rotation_matrix(two_s: int, rotation) -> np.ndarray:
    """Unitary ``U(R)`` on spin ``two_s/2`` for Euler angles or an SU(2) matrix."""
    return spin_rotation(two_s, as_su2(rotation))


def wigner_D(sigma: int, euler) -> np.ndarray:
    """Wigner matrix ``D^{(sigma)}_{mu' mu}(alpha, beta, gamma)`` for integer rank."""
    if int(sigma) != sigma or sigma < 0:
        raise ValueError("sigma must be a nonnegative integer")
    return spin_rotation(2 * int(sigma), as_su2(euler))


def rotate_operator(op, rotation) -> np.ndarray:
    """``U(R) op U(R)^dagger``."""
    op = np.asarray(op, dtype=complex)
    u = rotation_matrix(op.shape[0] - 1, rotation)
    return u @ op @ u.conj().T


# --------------------------------------------------------------------------
# symmetric subspace

def symmetric_product(a, b) -> np.ndarray:
    """Component of ``|a> (x) |b>`` in the maximal-spin (fully symmetric) sector.

    ``a`` and ``b`` are spin-j1 and spin-j2 kets viewed as symmetric states
    of ``2 j1`` and ``2 j2`` qubits. Returns ``<j1+j2, M| P (|a>|b>)`` for all
    ``M``, using the Dicke overlap
    ``sqrt(C(n1,k1) C(n2,k2) / C(n1+n2, k1+k2))`` with ``k`` counting down spins.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    n1, n2 = a.size - 1, b.size - 1
    n = n1 + n2
    wa = a * np.sqrt([math.comb(n1, k) for k in range(n1 + 1)])
    wb = b * np.sqrt([math.comb(n2, k) for k in range(n2 + 1)])
    return np.convolve(wa, wb) / np.sqrt([math.comb(n, k) for k in range(n + 1)])


def symmetric_projector_apply(states) -> np.ndarray:
    """Apply the symmetric projector to a product of spin-1/2 kets.

    Returns the ``(len(states)+1)``-vector ``<sigma, mu| P (|n_1>...|n_N>)``
    with ``sigma = N/2`` and ``mu`` descending. Computed through elementary
    symmetric functions, so no ``2^N`` tensor is formed.
    """
    states = [np.asarray(s, dtype=complex) for s in states]
    if not states:
        raise ValueError("need at least one spin-1/2 state")
    out = states[0]
    for st in states[1:]:
        if st.shape != (2,):
            raise ValueError("inputs must be spin-1/2 kets")
        out = symmetric_product(out, st)
    return out


def antipodal_map(psi) -> np.ndarray:
    """Time-reversal ``A``: component m of the output is ``(-1)^{s+m} conj(psi_{-m})``."""
    psi = np.asarray(psi, dtype=complex)
    n = psi.size - 1
    signs = (-1.0) ** (n - np.arange(n + 1))
    return signs * np.conj(psi[::-1])


def antipodal_operator(op) -> np.ndarray:
    """``A op A^dagger`` for the antiunitary antipodal map."""
    op = np.asarray(op, dtype=complex)
    n = op.shape[0] - 1
    signs = (-1.0) ** (n - np.arange(n + 1))
    return np.outer(signs, signs) * np.conj(op[::-1, ::-1])
