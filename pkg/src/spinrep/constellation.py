"""Stars on the sphere: roots, stereographic maps, antipodal classes.

Points of the extended plane are complex numbers, with the point at
infinity stored as ``complex(inf, 0)``. Stereographic projection sends the
north pole ``(0, 0, 1)`` to ``0`` and the south pole to infinity, so a star
with angles ``(theta, phi)`` sits at ``zeta = tan(theta/2) e^{i phi}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .angular import antipodal_map, su2_from_axis_angle, symmetric_product
from .errors import ClassExtractionError, PairingError
from .polynomial import pure_poly
from .states import pure_from_stars

__all__ = [
    "INF",
    "is_infinite",
    "stereographic",
    "inverse_stereographic",
    "star_from_angles",
    "star_angles",
    "antipode",
    "angles_between",
    "polynomial_roots",
    "block_roots",
    "constellation_of_ket",
    "match_stars",
    "mobius_su2",
    "mobius_rotate",
    "rotate_stars",
    "antipodal_pairing",
    "canonical_orientation",
    "class_vector",
    "SubconstellationClass",
    "extract_class",
]

INF = complex(math.inf, 0.0)

ROOT_DEFLATION = 1e-12
MERGE_ANGLE = 0.05
PAIRING_TOL = 1e-6
OVERLAP_TOL = 1e-6


def is_infinite(z) -> bool:
    return not math.isfinite(abs(complex(z)))


def stereographic(zeta) -> np.ndarray:
    """Unit vector(s) for point(s) of the extended plane."""
    zeta = np.atleast_1d(np.asarray(zeta, dtype=complex))
    out = np.empty((zeta.size, 3))
    for i, z in enumerate(zeta):
        if is_infinite(z):
            out[i] = (0.0, 0.0, -1.0)
            continue
        if abs(z) <= 1:
            r2 = abs(z) ** 2
            out[i] = (2 * z.real / (1 + r2), 2 * z.imag / (1 + r2), (1 - r2) / (1 + r2))
        else:
            # written in w = 1/z to avoid overflow near the south pole
            w = 1 / z
            r2 = abs(w) ** 2
            out[i] = (2 * w.real / (1 + r2), -2 * w.imag / (1 + r2), (r2 - 1) / (1 + r2))
    return out


def inverse_stereographic(stars) -> np.ndarray:
    """Points of the extended plane for unit vector(s); the south pole maps to ``INF``."""
    stars = np.atleast_2d(np.asarray(stars, dtype=float))
    out = np.empty(stars.shape[0], dtype=complex)
    for i, (x, y, z) in enumerate(stars):
        if z <= -1 + 1e-15 and math.hypot(x, y) < 1e-7:
            out[i] = INF
        else:
            out[i] = complex(x, y) / (1 + z)
    return out


def star_from_angles(theta: float, phi: float) -> np.ndarray:
    return np.array([math.sin(theta) * math.cos(phi),
                     math.sin(theta) * math.sin(phi),
                     math.cos(theta)])


def star_angles(star) -> tuple[float, float]:
    """``(theta, phi)`` with ``theta`` in ``[0, pi]`` and ``phi`` in ``(-pi, pi]``."""
    x, y, z = (float(v) for v in star)
    return math.atan2(math.hypot(x, y), z), math.atan2(y, x)


def antipode(zeta) -> complex:
    """``-1 / conj(zeta)``, extended to ``0 <-> INF``."""
    zeta = complex(zeta)
    if is_infinite(zeta):
        return 0j
    if zeta == 0:
        return INF
    return -1 / zeta.conjugate()


def _normalise_rows(x: np.ndarray) -> np.ndarray:
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def angles_between(a, b) -> np.ndarray:
    """Matrix of angles between rows of ``a`` and rows of ``b`` (stable near 0 and pi)."""
    a = np.atleast_2d(np.asarray(a, dtype=float))
    b = np.atleast_2d(np.asarray(b, dtype=float))
    dot = a @ b.T
    cross = np.linalg.norm(np.cross(a[:, None, :], b[None, :, :]), axis=-1)
    return np.arctan2(cross, dot)


# --------------------------------------------------------------------------
# roots

def polynomial_roots(coeffs, deflation: float = ROOT_DEFLATION) -> np.ndarray:
    """Roots in the extended plane of ``sum_a coeffs[a] zeta^a`` of formal degree ``len - 1``.

    Leading (trailing) coefficients below ``deflation * max|c|`` are
    stripped and become roots at infinity (zero); the rest goes to the
    balanced companion-matrix solver.
    """
    c = np.asarray(coeffs, dtype=complex)
    mags = np.abs(c)
    if mags.max() == 0:
        raise ValueError("zero polynomial has no well-defined roots")
    keep = np.nonzero(mags > deflation * mags.max())[0]
    lo, hi = keep[0], keep[-1]
    core = c[lo:hi + 1]
    finite = np.roots(core[::-1]) if core.size > 1 else np.empty(0, dtype=complex)
    return np.concatenate([np.zeros(lo, dtype=complex), finite,
                           np.full(c.size - 1 - hi, INF, dtype=complex)])


def _reconstruction_residual(stars, target) -> float:
    u = pure_from_stars(stars)
    ov = np.vdot(u, target)
    phase = ov / abs(ov) if abs(ov) > 0 else 1.0
    return float(np.linalg.norm(u * phase - target))


def _clusters(stars: np.ndarray, angle: float) -> list[list[int]]:
    n = len(stars)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    ang = angles_between(stars, stars)
    for i in range(n):
        for j in range(i + 1, n):
            if ang[i, j] < angle:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _refine_multiple_root(coeffs: np.ndarray, star: np.ndarray, k: int) -> np.ndarray:
    """Polish the centre of a ``k``-fold root as a simple root of the ``(k-1)``-th derivative.

    Works in ``zeta`` or ``1/zeta``, whichever keeps the point inside the unit disc.
    """
    poly = np.polynomial.polynomial
    zeta = inverse_stereographic(star)[0]
    flipped = is_infinite(zeta) or abs(zeta) > 1
    c = coeffs[::-1] if flipped else coeffs
    x = 0j if is_infinite(zeta) else (1 / zeta if flipped else zeta)
    d = poly.polyder(c, k - 1)
    dd = poly.polyder(d)
    for _ in range(20):
        slope = poly.polyval(x, dd)
        if slope == 0:
            break
        step = poly.polyval(x, d) / slope
        x -= step
        if abs(step) <= 1e-16 * max(1.0, abs(x)):
            break
    if not flipped:
        return stereographic(x)[0]
    return stereographic(INF if x == 0 else 1 / x)[0]


def _merge_multiple_roots(stars: np.ndarray, target: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """Snap numerically split multiple roots to one refined direction.

    A cluster is merged only if the reconstructed state stays as close to
    ``target`` as the unmerged stars (within a factor of ten).
    """
    base = _reconstruction_residual(stars, target)
    limit = max(1e-10, 10 * base)
    stars = stars.copy()
    for group in _clusters(stars, MERGE_ANGLE):
        if len(group) < 2:
            continue
        mean = stars[group].sum(axis=0)
        if np.linalg.norm(mean) < 1e-12:
            continue
        centre = _refine_multiple_root(coeffs, mean / np.linalg.norm(mean), len(group))
        if not np.all(np.isfinite(centre)) or angles_between(centre[None], mean[None])[0, 0] > MERGE_ANGLE:
            continue
        trial = stars.copy()
        trial[group] = centre
        if _reconstruction_residual(trial, target) <= limit:
            stars = trial
    return stars


def block_roots(v) -> np.ndarray:
    """Stars of a vector indexed ``mu = sigma .. -sigma`` (or any ket), as an ``(N, 3)`` array.

    ``v`` is read as a spin-``N/2`` ket; its stars are the stereographic
    images of the roots of its Majorana polynomial in ``zeta = z1 / z2``.
    """
    v = np.asarray(v, dtype=complex)
    if v.ndim != 1 or v.size < 2:
        raise ValueError("need a vector of length >= 2")
    norm = np.linalg.norm(v)
    if norm == 0:
        raise ValueError("zero vector has no constellation")
    v = v / norm
    coeffs = np.asarray(pure_poly(v).coeffs, dtype=complex)
    stars = _normalise_rows(stereographic(polynomial_roots(coeffs)))
    return _merge_multiple_roots(stars, _fix_phase_like(v, stars), coeffs)


def _fix_phase_like(v: np.ndarray, stars: np.ndarray) -> np.ndarray:
    u = pure_from_stars(stars)
    ov = np.vdot(v, u)
    return v * (ov / abs(ov)) if abs(ov) > 0 else v


def constellation_of_ket(psi) -> np.ndarray:
    """Majorana constellation of a spin ket as an ``(2s, 3)`` array of unit vectors."""
    psi = np.asarray(psi, dtype=complex)
    if psi.size == 1:
        return np.empty((0, 3))
    return block_roots(psi)


def match_stars(a, b) -> tuple[float, np.ndarray]:
    """Optimal matching of two star multisets.

    Returns the largest angle between matched stars and ``perm`` with
    ``a[i] <-> b[perm[i]]``.
    """
    a = np.atleast_2d(np.asarray(a, dtype=float))
    b = np.atleast_2d(np.asarray(b, dtype=float))
    if a.shape != b.shape:
        raise ValueError(f"star sets differ in size: {a.shape} vs {b.shape}")
    ang = angles_between(a, b)
    rows, cols = linear_sum_assignment(ang)
    perm = np.empty(len(a), dtype=int)
    perm[rows] = cols
    return float(ang[rows, cols].max()), perm


# --------------------------------------------------------------------------
# rotations

def mobius_su2(zeta, u) -> complex:
    """Image of a root under the active rotation ``u`` acting on the state.

    If ``psi`` has a root at ``zeta``, then the rotated state ``D(u) psi``
    has a root at ``(u10 + u11 zeta) / (u00 + u01 zeta)``.
    """
    u = np.asarray(u, dtype=complex)
    zeta = complex(zeta)
    if is_infinite(zeta):
        num, den = u[1, 1], u[0, 1]
    else:
        num, den = u[1, 0] + u[1, 1] * zeta, u[0, 0] + u[0, 1] * zeta
    if abs(den) < 1e-300:
        return INF
    return complex(num / den)


def mobius_rotate(zeta, axis, angle: float) -> complex:
    """Root image under a rotation by ``angle`` about the unit vector ``axis``."""
    return mobius_su2(zeta, su2_from_axis_angle(axis, angle))


def rotate_stars(stars, u) -> np.ndarray:
    """Rotate star vectors by the SO(3) image of ``u``."""
    from .angular import so3_from_su2

    r = so3_from_su2(np.asarray(u, dtype=complex))
    return np.atleast_2d(np.asarray(stars, dtype=float)) @ r.T


# --------------------------------------------------------------------------
# antipodal classes

def antipodal_pairing(stars, tol: float = PAIRING_TOL) -> tuple[list[tuple[int, int]], float]:
    """Greedy minimum-angle pairing of stars with antipodes.

    Returns the index pairs and the largest deviation from exact
    antipodality (radians). Raises :class:`PairingError` above ``tol``.
    """
    stars = np.atleast_2d(np.asarray(stars, dtype=float))
    n = len(stars)
    if n % 2:
        raise PairingError(f"odd number of stars ({n}) cannot be paired")
    dev = angles_between(stars, -stars)
    np.fill_diagonal(dev, np.inf)
    free = set(range(n))
    pairs, worst = [], 0.0
    order = np.dstack(np.unravel_index(np.argsort(dev, axis=None), dev.shape))[0]
    for i, j in order:
        if i < j and i in free and j in free:
            pairs.append((int(i), int(j)))
            worst = max(worst, float(dev[i, j]))
            free -= {i, j}
            if not free:
                break
    if worst > tol:
        raise PairingError(f"stars are not antipodal: worst deviation {worst:.3g} rad > {tol:.3g}")
    return sorted(pairs), worst


def canonical_orientation(star, eps: float = 1e-9) -> bool:
    """True if ``star`` (rather than its antipode) is the canonical pair member.

    Prefers ``z > 0``; on the equator ``x > 0``; then ``y > 0``.
    """
    x, y, z = (float(v) for v in star)
    if abs(z) > eps:
        return z > 0
    if abs(x) > eps:
        return x > 0
    return y > 0


def class_vector(rep_stars) -> np.ndarray:
    """Unit vector ``u_mu`` (``mu`` descending) of the class with representative stars ``rep_stars``.

    With ``phi`` the spin-``sigma/2`` state whose stars are ``rep_stars``,
    ``u`` is proportional to ``<phi| T_{sigma mu}^dagger |A phi>`` with
    ``A`` the antipodal map, i.e. the symmetric product of ``phi`` and
    ``A phi``.
    """
    phi = pure_from_stars(rep_stars)
    u = symmetric_product(phi, antipodal_map(phi))
    norm = np.linalg.norm(u)
    if norm < 1e-14:
        raise ClassExtractionError("representative stars give a vanishing class vector")
    return u / norm


@dataclass(frozen=True)
class SubconstellationClass:
    """Antipodal star pattern of a single tensor block.

    Attributes
    ----------
    sigma : int
        Block rank; there are ``2 sigma`` stars.
    stars : ndarray, shape (2 sigma, 3)
        All stars, exactly antipodal in pairs.
    pairs : tuple of (int, int)
        Index pairs ``(i, j)`` with ``stars[j] = -stars[i]``.
    representative : tuple of int
        One index per pair, chosen by :func:`canonical_orientation`.
    parity : int
        ``+1`` or ``-1``: the block unit vector is ``parity * class_vector``.
    """

    sigma: int
    stars: np.ndarray
    pairs: tuple
    representative: tuple
    parity: int
    pairing_residual: float = field(default=0.0, compare=False)

    @property
    def rep_stars(self) -> np.ndarray:
        return self.stars[list(self.representative)]

    def axes(self, tol: float = 1e-6) -> list[tuple[np.ndarray, int]]:
        """Distinct pair axes (canonical representative) with their multiplicities."""
        rep = self.rep_stars
        out = []
        for group in _clusters(rep, tol):
            axis = rep[group].sum(axis=0)
            out.append((axis / np.linalg.norm(axis), len(group)))
        return out

    def unit_vector(self) -> np.ndarray:
        return self.parity * class_vector(self.rep_stars)

    @classmethod
    def from_representatives(cls, rep_stars, parity: int = 1) -> "SubconstellationClass":
        rep = _normalise_rows(np.atleast_2d(np.asarray(rep_stars, dtype=float)))
        sigma = len(rep)
        stars = np.vstack([rep, -rep])
        pairs = tuple((i, i + sigma) for i in range(sigma))
        return cls(sigma, stars, pairs, tuple(range(sigma)), int(np.sign(parity) or 1))


def _is_block_hermitian(v: np.ndarray, tol: float) -> bool:
    sigma = (v.size - 1) // 2
    mu = sigma - np.arange(v.size)
    mirror = (-1.0) ** (mu % 2) * np.conj(v[::-1])
    return np.linalg.norm(v - mirror) <= tol * np.linalg.norm(v)


def extract_class(v, tol: float = PAIRING_TOL, overlap_tol: float = OVERLAP_TOL) -> SubconstellationClass:
    """Subconstellation class of a block vector ``v_mu`` (``mu = sigma .. -sigma``).

    ``v`` must satisfy ``v_{-mu} = (-1)^mu conj(v_mu)``, as the block of a
    Hermitian operator does. The stars come in antipodal pairs; one star
    from each pair forms the representative, and the sign relating ``v``
    to the representative's class vector is the parity.
    """
    v = np.asarray(v, dtype=complex)
    if v.ndim != 1 or v.size % 2 == 0 or v.size < 3:
        raise ValueError("block vector must have odd length 2 sigma + 1 >= 3")
    norm = np.linalg.norm(v)
    if norm == 0:
        raise ValueError("zero block has no class")
    v = v / norm
    if not _is_block_hermitian(v, 1e-8):
        raise ClassExtractionError("block is not the block of a Hermitian operator")
    sigma = (v.size - 1) // 2
    raw = block_roots(v)
    pairs, worst = antipodal_pairing(raw, tol)
    stars = np.empty_like(raw)
    rep = []
    for i, j in pairs:
        axis = raw[i] - raw[j]
        axis /= np.linalg.norm(axis)
        stars[i], stars[j] = axis, -axis
        rep.append(i if canonical_orientation(axis) else j)
    u = class_vector(stars[rep])
    ov = np.vdot(u, v)
    if abs(abs(ov) - 1) > overlap_tol:
        raise ClassExtractionError(
            f"representative does not reproduce the block: |<u, v>| = {abs(ov):.12f}")
    parity = 1 if ov.real > 0 else -1
    return SubconstellationClass(sigma, stars, tuple(pairs), tuple(rep), parity, worst)
