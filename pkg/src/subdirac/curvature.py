"""Pointwise curvature data and its scalar invariants.

Index conventions (0-based arrays, ambient frame ``e_1..e_m`` with
``e_i = f_i`` for ``i <= 2p`` and ``e_{2p+s} = h_s``):

``riemann[i, j, k, l]``
    ``R_{ijkl}``.  The scalar curvature is ``r_M = -R_{ijij}``, so a round
    sphere of sectional curvature ``kappa`` has
    ``R_{ijkl} = kappa (d_il d_jk - d_ik d_jl)`` and ``r_M = m(m-1) kappa``.
``rfperp[a, b, s, t]``
    ``<R^{F_perp}(e_a, e_b) h_t, h_s>``, antisymmetric in ``(a, b)`` and in
    ``(s, t)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace

import numpy as np

from .clifford import Dims


class InputError(ValueError):
    """Malformed or incomplete curvature input."""


def _perm_sign(perm) -> int:
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


def project_riemann_symmetries(t: np.ndarray) -> np.ndarray:
    """Orthogonal projection onto algebraic curvature tensors.

    Antisymmetrize in each pair, symmetrize under pair exchange, then remove
    the totally antisymmetric part (which is exactly what violates the first
    Bianchi identity once the pair symmetries hold).
    """
    t = np.asarray(t, dtype=float)
    a = 0.5 * (t - t.transpose(1, 0, 2, 3))
    a = 0.5 * (a - a.transpose(0, 1, 3, 2))
    a = 0.5 * (a + a.transpose(2, 3, 0, 1))
    alt = np.zeros_like(a)
    for perm in itertools.permutations(range(4)):
        alt += _perm_sign(perm) * a.transpose(perm)
    return a - alt / 24.0


def riemann_symmetry_defects(r: np.ndarray) -> dict[str, float]:
    """Max-abs violation of each algebraic curvature symmetry."""
    return {
        "antisym_12": float(np.abs(r + r.transpose(1, 0, 2, 3)).max(initial=0.0)),
        "antisym_34": float(np.abs(r + r.transpose(0, 1, 3, 2)).max(initial=0.0)),
        "pair_swap": float(np.abs(r - r.transpose(2, 3, 0, 1)).max(initial=0.0)),
        # R_ijkl + R_iklj + R_iljk
        "bianchi": float(np.abs(r + r.transpose(0, 2, 3, 1)
                                + r.transpose(0, 3, 1, 2)).max(initial=0.0)),
    }


def antisymmetrize_rfperp(t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    a = 0.5 * (t - t.transpose(1, 0, 2, 3))
    return 0.5 * (a - a.transpose(0, 1, 3, 2))


@dataclass(frozen=True)
class CurvatureInvariants:
    r_M: float
    rsq_pair: float   # R_ijij R_klkl
    ric_sq: float     # R_ijik R_ljlk
    riem_sq: float    # R_ijkl R_ijkl
    rfperp_norm_sq: float


@dataclass(frozen=True, eq=False)
class CurvaturePoint:
    """Curvature at a single point of the foliated manifold.

    ``scalar_laplacian`` is the optional value of ``r_M;kk``; it is only
    consumed when total-derivative terms are requested.
    """

    dims: Dims
    riemann: np.ndarray
    rfperp: np.ndarray
    scalar_curv: float | None = None
    scalar_laplacian: float | None = None

    def __post_init__(self):
        m, q = self.dims.m, self.dims.q
        riemann = np.asarray(self.riemann, dtype=float)
        rfperp = np.asarray(self.rfperp, dtype=float)
        if riemann.shape != (m,) * 4:
            raise InputError(f"riemann must have shape {(m,) * 4}, got {riemann.shape}")
        if rfperp.shape != (m, m, q, q):
            raise InputError(f"rfperp must have shape {(m, m, q, q)}, got {rfperp.shape}")
        object.__setattr__(self, "riemann", riemann)
        object.__setattr__(self, "rfperp", rfperp)
        if self.scalar_curv is None:
            object.__setattr__(self, "scalar_curv", -ricci_contraction(riemann))

    @property
    def r_M(self) -> float:
        return float(self.scalar_curv)

    def symmetric(self, tol: float = 1e-12) -> bool:
        defects = riemann_symmetry_defects(self.riemann)
        r = self.rfperp
        defects["rfperp_ab"] = float(np.abs(r + r.transpose(1, 0, 2, 3)).max(initial=0.0))
        defects["rfperp_st"] = float(np.abs(r + r.transpose(0, 1, 3, 2)).max(initial=0.0))
        return all(v <= tol for v in defects.values())


def ricci_contraction(riemann: np.ndarray) -> float:
    """``R_{ijij}``, summed."""
    return float(np.einsum("ijij->", riemann))


def rfperp_norm_sq(c: CurvaturePoint) -> float:
    """Squared norm of the normal-bundle curvature.

    Sums the leaf-leaf and normal-normal argument blocks once and the mixed
    leaf-normal block twice.
    """
    lp = 2 * c.dims.p
    r = c.rfperp
    mixed = float(np.sum(r[:lp, lp:] ** 2))
    leaf = float(np.sum(r[:lp, :lp] ** 2))
    normal = float(np.sum(r[lp:, lp:] ** 2))
    return 2.0 * mixed + leaf + normal


def invariants(c: CurvaturePoint) -> CurvatureInvariants:
    R = c.riemann
    x = ricci_contraction(R)
    ric = np.einsum("ijik->jk", R)
    return CurvatureInvariants(
        r_M=c.r_M,
        rsq_pair=x * x,
        ric_sq=float(np.sum(ric * ric)),
        riem_sq=float(np.sum(R * R)),
        rfperp_norm_sq=rfperp_norm_sq(c),
    )


def constant_curvature(kappa: float, d: Dims) -> CurvaturePoint:
    """Space form of sectional curvature ``kappa`` with flat normal bundle."""
    m = d.m
    delta = np.eye(m)
    riemann = kappa * (np.einsum("il,jk->ijkl", delta, delta)
                       - np.einsum("ik,jl->ijkl", delta, delta))
    return CurvaturePoint(d, riemann, np.zeros((m, m, d.q, d.q)))


def flat_point(d: Dims) -> CurvaturePoint:
    return constant_curvature(0.0, d)


def random_point(seed, d: Dims, scale: float = 1.0) -> CurvaturePoint:
    """Random curvature point, deterministic in ``seed``."""
    rng = np.random.default_rng(seed)
    m, q = d.m, d.q
    riemann = project_riemann_symmetries(scale * rng.standard_normal((m,) * 4))
    rfperp = antisymmetrize_rfperp(scale * rng.standard_normal((m, m, q, q)))
    lap = float(rng.standard_normal())
    return CurvaturePoint(d, riemann, rfperp, scalar_laplacian=lap)


@dataclass(frozen=True, eq=False)
class BoundaryPoint:
    """Curvature and extrinsic data at a boundary point.

    The inward unit normal is the last ambient frame vector ``N = e_m``;
    boundary indices ``a, b, ...`` run over the first ``m - 1`` frame vectors.
    """

    interior: CurvaturePoint
    L: np.ndarray
    r_normal: float | None = None       # r_M;N
    L_trace_lap: float | None = None    # L_aa;bb

    def __post_init__(self):
        L = np.asarray(self.L, dtype=float)
        n = self.interior.dims.m - 1
        if L.shape != (n, n):
            raise InputError(f"L must have shape {(n, n)}, got {L.shape}")
        if not np.allclose(L, L.T, atol=1e-12, rtol=0):
            raise InputError("second fundamental form L must be symmetric")
        object.__setattr__(self, "L", L)

    @property
    def dims(self) -> Dims:
        return self.interior.dims

    @property
    def _n(self) -> int:
        return self.dims.m - 1

    @property
    def L_trace(self) -> float:
        return float(np.trace(self.L))

    @property
    def R_aNaN(self) -> float:
        n, R = self._n, self.interior.riemann
        return float(sum(R[a, n, a, n] for a in range(n)))

    @property
    def R_aNbN_L_ab(self) -> float:
        n = self._n
        return float(np.einsum("ab,ab->", self.interior.riemann[:n, n, :n, n], self.L))

    @property
    def R_abcb_L_ac(self) -> float:
        n = self._n
        R = self.interior.riemann[:n, :n, :n, :n]
        return float(np.einsum("abcb,ac->", R, self.L))

    def L_cubics(self) -> tuple[float, float, float]:
        """``(L_aa L_bb L_cc, L_ab L_ab L_cc, L_ab L_bc L_ac)``."""
        L = self.L
        tr = np.trace(L)
        return float(tr ** 3), float(np.sum(L * L) * tr), float(np.trace(L @ L @ L))


def random_boundary_point(seed, d: Dims, scale: float = 1.0) -> BoundaryPoint:
    rng = np.random.default_rng([seed, 1])
    interior = random_point(seed, d, scale)
    n = d.m - 1
    raw = scale * rng.standard_normal((n, n))
    return BoundaryPoint(
        interior=interior,
        L=0.5 * (raw + raw.T),
        r_normal=float(rng.standard_normal()),
        L_trace_lap=float(rng.standard_normal()),
    )


def with_scalar_curvature(c: CurvaturePoint, r: float) -> CurvaturePoint:
    return replace(c, scalar_curv=r)
