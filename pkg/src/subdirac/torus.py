"""Flat-torus benchmark with an exactly known spectrum.

On ``T^4 = R^4 / (L_1 Z x ... x L_4 Z)`` with the trivial foliation (leaves
spanned by the first ``2p`` coordinates) the connection correction vanishes
and the normal bundle is flat, so ``D_F^2`` is the flat Laplacian tensored
with the identity on the ``2^(p+q)``-dimensional fibre.  Eigenvalues are
``4 pi^2 sum_i (k_i / L_i)^2`` over integer vectors ``k``.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .clifford import Dims, DimensionError
from .oracle import ResourceError

MAX_LATTICE_POINTS = 10 ** 8


@dataclass(frozen=True)
class TorusSpec:
    dims: Dims = Dims(1, 2)
    periods: tuple = (1.0, 1.0, 1.0, 1.0)
    cut: float = 50.0   # bound on |D_F| eigenvalues

    def __post_init__(self):
        if self.dims.m != 4:
            raise DimensionError(f"torus benchmark needs m = 4, got {self.dims.m}")
        periods = tuple(float(x) for x in self.periods)
        if len(periods) != 4 or any(x <= 0 for x in periods):
            raise ValueError("periods must be four positive reals")
        if self.cut <= 0:
            raise ValueError("cut must be positive")
        object.__setattr__(self, "periods", periods)

    @property
    def volume(self) -> float:
        return float(np.prod(self.periods))


@dataclass(frozen=True)
class SpectrumSlice:
    """Distinct eigenvalues of ``D_F^2`` up to the cut, with multiplicities.

    ``keys`` are the exact values of ``eigenvalue / (4 pi^2)``.
    """

    keys: tuple
    eigenvalues: np.ndarray
    multiplicities: np.ndarray

    @property
    def total(self) -> int:
        return int(self.multiplicities.sum())


def estimated_lattice_points(t: TorusSpec, cut: float | None = None) -> float:
    """Volume of the 4-ball of frequencies below the cut, plus a shell margin."""
    cut = t.cut if cut is None else cut
    radii = [cut * L / (2 * math.pi) + 1.0 for L in t.periods]
    return math.pi ** 2 / 2 * float(np.prod(radii))


def torus_eigenvalues(t: TorusSpec, cut: float | None = None) -> SpectrumSlice:
    cut = t.cut if cut is None else cut
    if estimated_lattice_points(t, cut) > MAX_LATTICE_POINTS:
        raise ResourceError(f"lattice enumeration for cut {cut} exceeds {MAX_LATTICE_POINTS} points")
    bound = Fraction(cut * cut / (4 * math.pi ** 2))
    # exact integer-vector walk, one axis at a time, keyed by sum k_i^2 / L_i^2
    acc = {Fraction(0): 1}
    for L in t.periods:
        w = 1 / Fraction(L) ** 2
        kmax = math.isqrt(int(bound / w)) + 1
        steps = [(Fraction(k * k) * w, 1 if k == 0 else 2) for k in range(kmax + 1)]
        new = defaultdict(int)
        for key, cnt in acc.items():
            for inc, mult in steps:
                nk = key + inc
                if nk > bound:
                    break
                new[nk] += cnt * mult
        acc = new
    keys = tuple(sorted(acc))
    rank = t.dims.rank
    eig = np.array([4 * math.pi ** 2 * float(k) for k in keys])
    mult = np.array([acc[k] * rank for k in keys], dtype=np.int64)
    return SpectrumSlice(keys, eig, mult)


def _theta(time: float, L: float) -> float:
    # sum_k exp(-time 4 pi^2 k^2 / L^2); stop once a term drops below 1e-18
    # of the running sum, the remaining tail is then geometrically smaller
    a = time * 4 * math.pi ** 2 / (L * L)
    total, k = 1.0, 1
    while True:
        term = 2.0 * math.exp(-a * k * k)
        total += term
        if term < 1e-18 * total:
            return total
        k += 1


def torus_heat_trace(t: TorusSpec, time: float) -> float:
    """``tr exp(-time D_F^2)``, factorized over the four lattice directions."""
    if time <= 0:
        raise ValueError("time must be positive")
    return t.dims.rank * float(np.prod([_theta(time, L) for L in t.periods]))


def heat_trace_from_spectrum(s: SpectrumSlice, time: float) -> float:
    return float(np.sum(s.multiplicities * np.exp(-time * s.eigenvalues)))


def torus_count_action(t: TorusSpec, cutoff_scale: float) -> int:
    """Number of eigenvalues of ``D_F`` in ``[-Lambda, Lambda]`` (with multiplicity)."""
    return torus_eigenvalues(t, cut=cutoff_scale).total


def torus_a0(t: TorusSpec) -> float:
    """Leading heat coefficient ``(4 pi)^(-2) 2^(p+q) vol``."""
    return t.dims.rank * t.volume / (16 * math.pi ** 2)
