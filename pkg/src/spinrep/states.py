"""Named spin states and the brute-force multiqubit oracle.

The oracle functions embed spin-s objects into ``(C^2)^(x)N`` through the
Dicke isometry and do plain dense linear algebra there. They are slow and
capped at ``N = 2s <= 12``; the rest of the package never calls them and
uses them only as an independent reference.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np

from .angular import basis_ket, symmetric_projector_apply

__all__ = [
    "ORACLE_MAX_TWO_S",
    "spinor",
    "coherent_state",
    "pure_from_stars",
    "named_state",
    "STATE_NAMES",
    "random_pure_state",
    "random_density_matrix",
    "random_hermitian",
    "dicke_isometry",
    "oracle_partial_trace",
    "oracle_contract",
    "oracle_s_operator",
    "oracle_matrix_product",
    "oracle_trace",
    "oracle_expectation",
]

ORACLE_MAX_TWO_S = 12


def spinor(star) -> np.ndarray:
    """Spin-1/2 ket ``cos(theta/2)|up> + sin(theta/2) e^{i phi}|down>`` along a unit vector."""
    x, y, z = (float(v) for v in star)
    c = math.sqrt(max(0.0, (1 + z) / 2))
    s = math.sqrt(max(0.0, (1 - z) / 2))
    rho = math.hypot(x, y)
    phase = complex(x, y) / rho if rho > 0 else 1.0
    return np.array([c, s * phase], dtype=complex)


def _fix_phase(psi: np.ndarray) -> np.ndarray:
    mags = np.abs(psi)
    first = int(np.argmax(mags > 1e-10 * mags.max()))
    return psi * (np.conj(psi[first]) / mags[first])


def coherent_state(two_s: int, star) -> np.ndarray:
    """Spin coherent state ``|n>`` (all stars along ``n``)."""
    if two_s == 0:
        return np.ones(1, dtype=complex)
    return symmetric_projector_apply([spinor(star)] * two_s)


def pure_from_stars(stars) -> np.ndarray:
    """Normalised symmetrisation of ``|n_1> ... |n_N>``.

    Global phase: the first nonzero amplitude (m descending) is made real
    and positive. Repeated stars are allowed.
    """
    stars = np.atleast_2d(np.asarray(stars, dtype=float))
    if stars.shape[0] == 0 or stars.shape[1] != 3:
        raise ValueError("need a nonempty (N, 3) array of unit vectors")
    psi = symmetric_projector_apply([spinor(n) for n in stars])
    psi = psi / np.linalg.norm(psi)
    return _fix_phase(psi)


STATE_NAMES = ("sc", "dicke", "ghz", "w", "cat_q", "cat_c", "maximally_mixed")


def named_state(name: str, two_s: int, *, two_m: int | None = None,
                direction=(0.0, 0.0, 1.0)) -> np.ndarray:
    """Density matrix of a named family.

    ``sc``: coherent state along ``direction``; ``dicke``: ``|s, m>`` with
    ``two_m = 2m``; ``w``: ``|s, s-1>``; ``ghz`` / ``cat_q``:
    ``(|s,s> + |s,-s>)/sqrt 2``; ``cat_c``: the equal mixture of ``|s,+-s>``;
    ``maximally_mixed``: ``1/(2s+1)``.
    """
    name = name.lower().replace("-", "_")
    n = two_s + 1
    if name == "sc":
        psi = coherent_state(two_s, direction)
    elif name == "dicke":
        if two_m is None:
            raise ValueError("dicke state needs two_m")
        psi = basis_ket(two_s, two_m)
    elif name == "w":
        if two_s < 2:
            raise ValueError("W state needs s >= 1")
        psi = basis_ket(two_s, two_s - 2)
    elif name in ("ghz", "cat_q"):
        if two_s < 1:
            raise ValueError(f"{name} needs s >= 1/2")
        psi = (basis_ket(two_s, two_s) + basis_ket(two_s, -two_s)) / math.sqrt(2)
    elif name == "cat_c":
        if two_s < 1:
            raise ValueError("cat_c needs s >= 1/2")
        up, down = basis_ket(two_s, two_s), basis_ket(two_s, -two_s)
        return (np.outer(up, up) + np.outer(down, down)) / 2
    elif name in ("maximally_mixed", "mixed"):
        return np.eye(n, dtype=complex) / n
    else:
        raise ValueError(f"unknown state {name!r}; choose from {STATE_NAMES}")
    return np.outer(psi, psi.conj())


def random_pure_state(two_s: int, rng: np.random.Generator) -> np.ndarray:
    psi = rng.normal(size=two_s + 1) + 1j * rng.normal(size=two_s + 1)
    return psi / np.linalg.norm(psi)


def random_density_matrix(two_s: int, rng: np.random.Generator,
                          rank: int | None = None) -> np.ndarray:
    """Ginibre-distributed density matrix of the given rank (full by default)."""
    n = two_s + 1
    g = rng.normal(size=(n, rank or n)) + 1j * rng.normal(size=(n, rank or n))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_hermitian(two_s: int, rng: np.random.Generator) -> np.ndarray:
    n = two_s + 1
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (g + g.conj().T) / 2


# --------------------------------------------------------------------------
# oracle

def _check_oracle(two_s: int):
    if two_s > ORACLE_MAX_TWO_S:
        raise ValueError(f"oracle limited to 2s <= {ORACLE_MAX_TWO_S}, got {two_s}")


@lru_cache(maxsize=16)
def _dicke_isometry(n: int) -> np.ndarray:
    v = np.zeros((2 ** n, n + 1))
    for bits in itertools.product((0, 1), repeat=n):
        k = sum(bits)                     # number of down spins, m = s - k
        idx = int("".join(map(str, bits)) or "0", 2)
        v[idx, k] = 1.0 / math.sqrt(math.comb(n, k))
    v.setflags(write=False)
    return v


def dicke_isometry(n: int) -> np.ndarray:
    """Columns are the Dicke states ``|n/2, n/2 - k>`` in ``(C^2)^(x)n`` (bit 1 = down)."""
    _check_oracle(n)
    return _dicke_isometry(int(n))


def oracle_partial_trace(rho, k: int) -> np.ndarray:
    """Trace ``k`` spin-1/2 constituents out of a symmetric spin-s operator.

    ``rho`` is embedded with the Dicke isometry, the first ``k`` qubits are
    traced and the result is expressed in the spin-``(s - k/2)`` Dicke basis.
    """
    rho = np.asarray(rho, dtype=complex)
    n = rho.shape[0] - 1
    _check_oracle(n)
    if not 0 <= k <= n:
        raise ValueError(f"cannot trace {k} constituents out of spin {n}/2")
    v = dicke_isometry(n)
    w = dicke_isometry(n - k)
    # A_m[a, i]: amplitude of |a>_traced |i>_kept in the m-th Dicke state
    amps = v.T.reshape(n + 1, 2 ** k, 2 ** (n - k))
    x = np.einsum("pi,map->mia", w, amps)
    return np.einsum("mn,mia,nja->ij", rho, x, x.conj())


def oracle_contract(psi, star) -> np.ndarray:
    """``(<m| (x) 1) |psi>`` in the spin-``(s - 1/2)`` Dicke basis."""
    psi = np.asarray(psi, dtype=complex)
    n = psi.size - 1
    _check_oracle(n)
    full = (dicke_isometry(n) @ psi).reshape(2, 2 ** (n - 1))
    rest = spinor(star).conj() @ full
    return dicke_isometry(n - 1).T @ rest


_SIGMA = {
    "0": np.eye(2, dtype=complex),
    "-": np.array([[0, 0], [2, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
    "+": np.array([[0, 2], [0, 0]], dtype=complex),
}


def oracle_s_operator(nu) -> np.ndarray:
    """``P (sigma_0^nu0 sigma_-^nu- sigma_z^nuz sigma_+^nu+) P`` via explicit Kronecker products."""
    nu = tuple(int(x) for x in nu)
    n = sum(nu)
    _check_oracle(n)
    big = np.ones((1, 1), dtype=complex)
    for label, count in zip("0-z+", nu):
        for _ in range(count):
            big = np.kron(big, _SIGMA[label])
    v = dicke_isometry(n)
    return v.T @ big @ v


def _check_square_pair(a, b):
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != 2 or a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a, b


def oracle_matrix_product(a, b) -> np.ndarray:
    a, b = _check_square_pair(a, b)
    return a @ b


def oracle_trace(a) -> complex:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got {a.shape}")
    return complex(np.trace(a))


def oracle_expectation(psi, op) -> complex:
    psi = np.asarray(psi, dtype=complex)
    op = np.asarray(op, dtype=complex)
    if op.shape != (psi.size, psi.size):
        raise ValueError(f"dimension mismatch: ket {psi.size}, operator {op.shape}")
    return complex(np.vdot(psi, op @ psi) / np.vdot(psi, psi))
