"""T-representation of spin operators.

A Hermitian operator is expanded over tensor operators,
``rho = sum_{sigma, mu} rho_{sigma mu} T_{sigma mu}``. Each block
``rho_sigma`` (``sigma >= 1``) is stored as its norm ``w_sigma`` and the
subconstellation class of the unit vector ``rho_sigma / w_sigma``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .angular import as_su2, rotation_matrix, tensor_basis
from .constellation import (PAIRING_TOL, SubconstellationClass,
                            extract_class, star_from_angles, star_angles)
from .errors import ValidationError
from .srep import reduction_factor

__all__ = [
    "ABSENT_TOL",
    "HERMITIAN_TOL",
    "Block",
    "TRep",
    "block_components",
    "operator_from_components",
    "decompose",
    "reconstruct",
    "reduce",
    "cat_radii",
    "sc_radii",
    "positivity_checks",
    "antipodal_conjugate",
    "pure_state_classes",
    "recover_majorana",
    "random_trep",
    "trep_to_json",
    "trep_from_json",
    "class_to_json",
    "class_from_json",
]

ABSENT_TOL = 1e-12
HERMITIAN_TOL = 1e-8


@dataclass(frozen=True)
class Block:
    sigma: int
    w: float
    cls: SubconstellationClass

    def components(self) -> np.ndarray:
        """``rho_{sigma mu}`` for ``mu = sigma .. -sigma``."""
        return self.w * self.cls.unit_vector()


@dataclass(frozen=True)
class TRep:
    """Trace component plus one :class:`Block` per nonzero ``sigma >= 1``.

    ``trace_component`` is ``rho_00 = Tr(rho) / sqrt(2s + 1)``.
    """

    two_s: int
    trace_component: float
    blocks: tuple = field(default_factory=tuple)

    def block(self, sigma: int) -> Block | None:
        for b in self.blocks:
            if b.sigma == sigma:
                return b
        return None

    def radii(self) -> np.ndarray:
        """``w_sigma`` for ``sigma = 1 .. 2s`` (zero for absent blocks)."""
        w = np.zeros(self.two_s)
        for b in self.blocks:
            w[b.sigma - 1] = b.w
        return w

    @property
    def trace(self) -> float:
        return self.trace_component * math.sqrt(self.two_s + 1)


def block_components(op) -> list[np.ndarray]:
    """``[rho_sigma for sigma in 0..2s]`` with ``rho_{sigma mu} = Tr(op T_{sigma mu}^dagger)``."""
    op = np.asarray(op, dtype=complex)
    two_s = op.shape[0] - 1
    comps = np.einsum("abij,ij->ab", tensor_basis(two_s).conj(), op)
    return [comps[sigma, :2 * sigma + 1].copy() for sigma in range(two_s + 1)]


def operator_from_components(comps) -> np.ndarray:
    """Inverse of :func:`block_components`."""
    two_s = len(comps) - 1
    basis = tensor_basis(two_s)
    n = two_s + 1
    out = np.zeros((n, n), dtype=complex)
    for sigma, v in enumerate(comps):
        out += np.einsum("a,aij->ij", np.asarray(v, dtype=complex), basis[sigma, :2 * sigma + 1])
    return out


def _check_hermitian(op: np.ndarray, tol: float) -> None:
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {op.shape}")
    scale = max(1.0, float(np.abs(op).max()))
    resid = float(np.abs(op - op.conj().T).max())
    if resid > tol * scale:
        raise ValidationError(f"operator is not Hermitian (residual {resid:.3g})")


def decompose(rho, tol: float = PAIRING_TOL, hermitian_tol: float = HERMITIAN_TOL) -> TRep:
    """T-representation of a Hermitian operator."""
    rho = np.asarray(rho, dtype=complex)
    _check_hermitian(rho, hermitian_tol)
    rho = (rho + rho.conj().T) / 2
    comps = block_components(rho)
    blocks = []
    for sigma in range(1, len(comps)):
        v = comps[sigma]
        w = float(np.linalg.norm(v))
        if w < ABSENT_TOL:
            continue
        blocks.append(Block(sigma, w, extract_class(v / w, tol=tol)))
    return TRep(rho.shape[0] - 1, float(comps[0][0].real), tuple(blocks))


def reconstruct(t: TRep) -> np.ndarray:
    """Hermitian matrix described by ``t``."""
    comps = [np.array([t.trace_component], dtype=complex)]
    comps += [np.zeros(2 * s + 1, dtype=complex) for s in range(1, t.two_s + 1)]
    for b in t.blocks:
        if b.cls.sigma != b.sigma or len(b.cls.pairs) != b.sigma:
            raise ValidationError(f"class for block sigma={b.sigma} has {len(b.cls.pairs)} pairs")
        comps[b.sigma] = b.components()
    op = operator_from_components(comps)
    return (op + op.conj().T) / 2


def reduce(t: TRep, k: int) -> TRep:
    """Trace out ``k`` spin-1/2 constituents directly on the T-rep.

    Each surviving block is rescaled by the product of one-step factors;
    blocks with ``sigma > 2s - k`` vanish and classes are inherited.
    """
    if not 0 <= k <= t.two_s:
        raise ValueError(f"cannot trace {k} constituents out of spin {t.two_s}/2")
    trace_c = t.trace_component
    blocks = list(t.blocks)
    two_s = t.two_s
    for _ in range(k):
        trace_c *= reduction_factor(two_s, 0)
        blocks = [Block(b.sigma, b.w * reduction_factor(two_s, b.sigma), b.cls)
                  for b in blocks if b.sigma < two_s]
        two_s -= 1
    blocks = [b for b in blocks if b.w >= ABSENT_TOL]
    return TRep(two_s, trace_c, tuple(blocks))


def cat_radii(two_s: int) -> tuple[float, float]:
    """Top-block radii ``(w^C, w^Q)`` of the classical and quantum cat states."""
    if two_s < 1:
        raise ValueError("cat states need s >= 1/2")
    if two_s % 2:
        return 0.0, 1 / math.sqrt(2)
    f = math.factorial
    ratio = f(two_s) ** 2 / f(2 * two_s)
    return math.sqrt(ratio), math.sqrt(0.5 + ratio)


def sc_radii(two_s: int) -> np.ndarray:
    """Closed-form radii of any spin coherent state, ``sigma = 1 .. 2s``."""
    f = math.factorial
    return np.array([f(two_s) * math.sqrt((2 * sigma + 1) / (f(two_s + sigma + 1) * f(two_s - sigma)))
                     for sigma in range(1, two_s + 1)])


def positivity_checks(t: TRep, tol: float = 1e-10) -> dict:
    """Purity bound, Mehta-ball membership and an eigenvalue test.

    For non-state inputs (trace not 1) all entries are ``None``.
    """
    if abs(t.trace - 1) > 1e-8:
        return {"purity_bound_ok": None, "mehta_ball": None, "eigen_positive": None}
    n = t.two_s
    total = float(np.sum(t.radii() ** 2))
    purity_ok = total <= n / (n + 1) + tol
    mehta = True if n == 0 else total <= 1 / (n * (n + 1)) + tol
    eig_ok = bool(np.linalg.eigvalsh(reconstruct(t)).min() >= -tol)
    return {"purity_bound_ok": bool(purity_ok), "mehta_ball": bool(mehta), "eigen_positive": eig_ok}


def antipodal_conjugate(t: TRep) -> TRep:
    """T-rep of ``A rho A^dagger``: odd blocks flip parity, even blocks are unchanged."""
    blocks = []
    for b in t.blocks:
        cls = b.cls
        if b.sigma % 2:
            cls = SubconstellationClass(cls.sigma, cls.stars, cls.pairs, cls.representative,
                                        -cls.parity, cls.pairing_residual)
        blocks.append(Block(b.sigma, b.w, cls))
    return TRep(t.two_s, t.trace_component, tuple(blocks))


def pure_state_classes(psi, tol: float = PAIRING_TOL) -> TRep:
    """T-rep of ``|psi><psi|``."""
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return decompose(np.outer(psi, psi.conj()), tol=tol)


def _align_to_z(axis) -> np.ndarray:
    """Rotation (SU(2)) taking ``axis`` to ``+z``."""
    theta, phi = star_angles(axis)
    return as_su2((0.0, -theta, -phi))


def recover_majorana(t: TRep, zero_tol: float = 1e-9) -> np.ndarray:
    """Majorana constellation of a pure state from its T-rep.

    The top block's stars come in pairs ``+-n``; the state's own star on
    each axis is decided by where the Husimi function vanishes. For an
    axis carried by ``k`` pairs, rotate it to ``+z``: the number of
    vanishing populations counted up from ``m = -s`` is how many of the
    ``k`` stars sit at ``+n``; the rest sit at ``-n``.
    """
    top = t.block(t.two_s)
    if top is None:
        raise ValidationError("top block is absent: not a pure state")
    rho = reconstruct(t)
    out = []
    for axis, mult in top.cls.axes():
        d = rotation_matrix(t.two_s, _align_to_z(axis))
        pops = np.real(np.diag(d @ rho @ d.conj().T))
        up = 0
        while up < mult and abs(pops[t.two_s - up]) < zero_tol:
            up += 1
        out.extend([axis] * up + [-axis] * (mult - up))
    return np.array(out)


def random_trep(two_s: int, rng: np.random.Generator, total_sq: float) -> TRep:
    """Unit-trace T-rep with random classes and ``sum w^2 = total_sq``."""
    blocks = []
    weights = np.abs(rng.normal(size=two_s))
    weights *= math.sqrt(total_sq) / np.linalg.norm(weights) if two_s else 0.0
    for sigma in range(1, two_s + 1):
        w = float(weights[sigma - 1])
        if w < ABSENT_TOL:
            continue
        rep = rng.normal(size=(sigma, 3))
        parity = 1 if rng.random() < 0.5 else -1
        blocks.append(Block(sigma, w, SubconstellationClass.from_representatives(rep, parity)))
    return TRep(two_s, 1 / math.sqrt(two_s + 1), tuple(blocks))


# --------------------------------------------------------------------------
# JSON

def class_to_json(cls: SubconstellationClass) -> dict:
    stars = [dict(zip(("theta", "phi"), star_angles(n))) for n in cls.stars]
    return {
        "sigma": int(cls.sigma),
        "stars": stars,
        "pairs": [list(map(int, p)) for p in cls.pairs],
        "representative": list(map(int, cls.representative)),
        "parity": int(cls.parity),
    }


def class_from_json(obj: dict) -> SubconstellationClass:
    stars = np.array([star_from_angles(s["theta"], s["phi"]) for s in obj["stars"]])
    sigma = int(obj["sigma"])
    pairs = tuple(tuple(int(i) for i in p) for p in obj["pairs"])
    rep = tuple(int(i) for i in obj["representative"])
    parity = int(obj["parity"])
    if len(stars) != 2 * sigma or len(pairs) != sigma or len(rep) != sigma or parity not in (1, -1):
        raise ValidationError(f"inconsistent constellation object for sigma={sigma}")
    return SubconstellationClass(sigma, stars, pairs, rep, parity)


def trep_to_json(t: TRep) -> dict:
    return {
        "two_s": int(t.two_s),
        "trace_component": float(t.trace_component),
        "blocks": [{"sigma": b.sigma, "w": float(b.w), "constellation": class_to_json(b.cls)}
                   for b in t.blocks],
    }


def trep_from_json(obj: dict) -> TRep:
    blocks = tuple(Block(int(b["sigma"]), float(b["w"]), class_from_json(b["constellation"]))
                   for b in obj["blocks"])
    return TRep(int(obj["two_s"]), float(obj["trace_component"]), blocks)
