"""Dense matrix representation of the Clifford generators.

The leaf factor S(F) carries 2p anti-Hermitian gamma matrices built from
Pauli strings on ``2**p`` components.  The normal factor is the exterior
algebra of ``R^q`` with basis labelled by subsets of ``{1..q}`` (bit
strings); ``c(h) = wedge - contraction`` and ``chat(h) = wedge +
contraction``.  Normal operators are composed with the leaf chirality so
that all generators anticommute in the graded tensor product.

This module is deliberately independent of the symbolic reduction rules in
:mod:`subdirac.clifford`; it only uses the generator labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .clifford import AlgebraElement, Dims, DimensionError, Generator, Kind, word_of

DEFAULT_CAP = 2 ** 14

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
# lowering operator |1> -> |0> in the occupation basis (0 = empty)
_LOWER = np.array([[0, 1], [0, 0]], dtype=complex)


class ResourceError(RuntimeError):
    """Raised when a requested representation exceeds the size cap."""


def _kron(*ms):
    return reduce(np.kron, ms, np.eye(1, dtype=complex))


def leaf_gammas(p: int) -> tuple[list[np.ndarray], np.ndarray]:
    """Anti-Hermitian gammas ``g_1..g_2p`` on ``2**p`` and their chirality."""
    gammas = []
    for k in range(p):
        left = [_Z] * k
        right = [_I2] * (p - k - 1)
        gammas.append(1j * _kron(*left, _X, *right))
        gammas.append(1j * _kron(*left, _Y, *right))
    chirality = _kron(*([_Z] * p))
    return gammas, chirality


def exterior_operators(q: int) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Exterior multiplication and interior contraction on ``Lambda(R^q)``.

    Jordan-Wigner ordering: ``h_s^* wedge`` acting on a basis form
    ``h_{s_1}^* ^ ... ^ h_{s_k}^*`` picks up ``(-1)`` for every ``s_j < s``.
    """
    wedges, contractions = [], []
    for s in range(q):
        a = _kron(*([_Z] * s), _LOWER, *([_I2] * (q - s - 1)))
        contractions.append(a)
        wedges.append(a.conj().T)
    return wedges, contractions


@dataclass
class MatrixRep:
    dims: Dims
    rep: dict
    grading: np.ndarray
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def size(self) -> int:
        return self.grading.shape[0]

    def word_matrix(self, mask: int) -> np.ndarray:
        """Matrix of the canonical word with bitmask ``mask``."""
        m = self._cache.get(mask)
        if m is None:
            m = np.eye(self.size, dtype=complex)
            for g in word_of(self.dims, mask):
                m = m @ self.rep[g]
            self._cache[mask] = m
        return m

    def __getitem__(self, g: Generator) -> np.ndarray:
        return self.rep[g]


def build_rep(d: Dims, cap: int = DEFAULT_CAP) -> MatrixRep:
    """Concrete ``2**(p+q)``-dimensional representation for ``d``."""
    if d.rank > cap:
        raise ResourceError(f"representation size {d.rank} exceeds cap {cap}")
    gammas, chirality = leaf_gammas(d.p)
    wedges, contractions = exterior_operators(d.q)
    normal_id = np.eye(2 ** d.q, dtype=complex)
    rep = {}
    for i, g in enumerate(gammas, start=1):
        rep[Generator(Kind.LEAF_C, i)] = np.kron(g, normal_id)
    for s, (w, a) in enumerate(zip(wedges, contractions), start=1):
        rep[Generator(Kind.NORMAL_C, s)] = np.kron(chirality, w - a)
        rep[Generator(Kind.NORMAL_HAT, s)] = np.kron(chirality, w + a)
    grading = np.kron(chirality, normal_id)
    return MatrixRep(dims=d, rep=rep, grading=grading)


def rep_of(e: AlgebraElement, r: MatrixRep) -> np.ndarray:
    """Image of an algebra element under the representation."""
    if e.dims != r.dims:
        raise DimensionError(f"dims mismatch: {e.dims} vs {r.dims}")
    out = np.zeros((r.size, r.size), dtype=complex)
    for mask, coeff in e.masks.items():
        out += complex(coeff) * r.word_matrix(mask)
    return out


def oracle_trace(e: AlgebraElement, r: MatrixRep) -> complex:
    return complex(np.trace(rep_of(e, r)))


def sequence_matrix(r: MatrixRep, word) -> np.ndarray:
    """Plain matrix product of an arbitrary (non-canonical) generator list."""
    m = np.eye(r.size, dtype=complex)
    for g in word:
        m = m @ r.rep[g]
    return m
