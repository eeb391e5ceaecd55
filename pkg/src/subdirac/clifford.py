"""
Exact Clifford word algebra for S(F) (x) Lambda(F_perp^*).

Three families of generators act on the graded tensor product:

* ``c(f_i)``, i = 1..2p   -- leafwise Clifford action, squares to -1
* ``c(h_s)``, s = 1..q    -- ``h_s^* wedge - i_{h_s}``, squares to -1
* ``chat(h_s)``, s = 1..q -- ``h_s^* wedge + i_{h_s}``, squares to +1

and any two distinct generators anticommute.  Elements are finite linear
combinations of canonical words with exact Gaussian-rational coefficients
(floats are accepted too, for curvature-derived elements).

A canonical word is stored as a bitmask over the fixed generator order
``c(f_1) < ... < c(f_2p) < c(h_1) < ... < c(h_q) < chat(h_1) < ... < chat(h_q)``.
"""

from __future__ import annotations

import enum
import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class DimensionError(ValueError):
    """Raised for invalid or mismatched (p, q)."""


# ---------------------------------------------------------------------------
# Gaussian rationals


class Gaussian:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(other):
        if isinstance(other, Gaussian):
            return other
        if isinstance(other, (int, Fraction)):
            return Gaussian(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            if not isinstance(other, numbers.Complex):
                return NotImplemented
            return complex(self) + other
        return Gaussian(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, numbers.Complex) and not isinstance(other, Gaussian):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            if not isinstance(other, numbers.Complex):
                return NotImplemented
            return complex(self) * other
        return Gaussian(self.re * o.re - self.im * o.im,
                        self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            if not isinstance(other, numbers.Complex):
                return NotImplemented
            return complex(self) / other
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("Gaussian division by zero")
        num = self * o.conjugate()
        return Gaussian(num.re / den, num.im / den)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        out = Gaussian(1)
        for _ in range(n):
            out = out * self
        return out

    def conjugate(self):
        return Gaussian(self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, Gaussian):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, numbers.Complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __float__(self):
        if self.im != 0:
            raise TypeError("Gaussian with nonzero imaginary part")
        return float(self.re)

    def __repr__(self):
        if self.im == 0:
            return f"Gaussian({self.re})"
        return f"Gaussian({self.re}, {self.im})"


I = Gaussian(0, 1)


# ---------------------------------------------------------------------------
# Dimensions and generators


@dataclass(frozen=True)
class Dims:
    """Leaf dimension ``2p`` and normal dimension ``q`` (both even)."""

    p: int
    q: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 1:
            raise DimensionError(f"p must be a positive integer, got {self.p!r}")
        if not isinstance(self.q, int) or self.q < 2 or self.q % 2:
            raise DimensionError(f"q must be an even integer >= 2, got {self.q!r}")

    @property
    def m(self) -> int:
        return 2 * self.p + self.q

    @property
    def n_generators(self) -> int:
        return 2 * self.p + 2 * self.q

    @property
    def rank(self) -> int:
        """Dimension of the spinor module, ``2**(p+q)``."""
        return 2 ** (self.p + self.q)

    @property
    def _minus_mask(self) -> int:
        return (1 << (2 * self.p + self.q)) - 1


class Kind(enum.IntEnum):
    LEAF_C = 0
    NORMAL_C = 1
    NORMAL_HAT = 2


@dataclass(frozen=True)
class Generator:
    kind: Kind
    index: int

    @property
    def square(self) -> int:
        return 1 if self.kind is Kind.NORMAL_HAT else -1

    def position(self, d: Dims) -> int:
        """Bit position of this generator in the canonical order."""
        if self.kind is Kind.LEAF_C:
            if not 1 <= self.index <= 2 * d.p:
                raise DimensionError(f"leaf index {self.index} out of range for {d}")
            return self.index - 1
        if not 1 <= self.index <= d.q:
            raise DimensionError(f"normal index {self.index} out of range for {d}")
        if self.kind is Kind.NORMAL_C:
            return 2 * d.p + self.index - 1
        return 2 * d.p + d.q + self.index - 1

    def __repr__(self):
        name = {Kind.LEAF_C: "c(f{})", Kind.NORMAL_C: "c(h{})",
                Kind.NORMAL_HAT: "chat(h{})"}[self.kind]
        return name.format(self.index)


def cf(i: int) -> Generator:
    return Generator(Kind.LEAF_C, i)


def ch(s: int) -> Generator:
    return Generator(Kind.NORMAL_C, s)


def chat(s: int) -> Generator:
    return Generator(Kind.NORMAL_HAT, s)


def ambient(d: Dims, i: int) -> Generator:
    """Clifford generator for ambient frame vector ``e_i`` (1-based).

    ``e_i = f_i`` for ``i <= 2p`` and ``e_{2p+s} = h_s``.
    """
    if not 1 <= i <= d.m:
        raise DimensionError(f"ambient index {i} out of range for m={d.m}")
    if i <= 2 * d.p:
        return cf(i)
    return ch(i - 2 * d.p)


def generator_at(d: Dims, pos: int) -> Generator:
    if pos < 2 * d.p:
        return cf(pos + 1)
    pos -= 2 * d.p
    if pos < d.q:
        return ch(pos + 1)
    return chat(pos - d.q + 1)


Word = tuple  # tuple[Generator, ...]


# ---------------------------------------------------------------------------
# Blade arithmetic on bitmasks


def _reorder_parity(a: int, b: int) -> int:
    # number of pairs (i in a, j in b) with i > j, mod 2
    a >>= 1
    n = 0
    while a:
        n += (a & b).bit_count()
        a >>= 1
    return n & 1


def blade_sign(d: Dims, a: int, b: int) -> int:
    """Sign ``s`` with ``word(a) * word(b) = s * word(a ^ b)``."""
    parity = _reorder_parity(a, b) + (a & b & d._minus_mask).bit_count()
    return -1 if parity & 1 else 1


def mask_of(d: Dims, word: Sequence[Generator]) -> tuple[int, int]:
    """Reduce a generator sequence to ``(mask, sign)``."""
    mask, sign = 0, 1
    for g in word:
        bit = 1 << g.position(d)
        sign *= blade_sign(d, mask, bit)
        mask ^= bit
    return mask, sign


def word_of(d: Dims, mask: int) -> Word:
    out = []
    pos = 0
    while mask:
        if mask & 1:
            out.append(generator_at(d, pos))
        mask >>= 1
        pos += 1
    return tuple(out)


def canonicalize(d: Dims, word: Sequence[Generator], coeff=1):
    """Sorted, repetition-free form of ``coeff * word``.

    Returns ``(canonical_word, coefficient)`` where the coefficient picks up
    a sign for every transposition of distinct generators and the square of
    every contracted pair.
    """
    mask, sign = mask_of(d, word)
    return word_of(d, mask), coeff * sign


# ---------------------------------------------------------------------------
# Algebra elements


def _is_zero(c) -> bool:
    return c == 0


class AlgebraElement:
    """Linear combination of canonical words over fixed :class:`Dims`.

    Instances are treated as immutable.  ``terms`` maps bitmask to
    coefficient; zero coefficients are never stored.
    """

    __slots__ = ("dims", "_terms")

    def __init__(self, dims: Dims, terms: Mapping[int, object] | None = None):
        self.dims = dims
        self._terms = {k: v for k, v in (terms or {}).items() if not _is_zero(v)}

    # construction ---------------------------------------------------------

    @classmethod
    def scalar(cls, d: Dims, c=1) -> "AlgebraElement":
        return cls(d, {0: c})

    @classmethod
    def identity(cls, d: Dims) -> "AlgebraElement":
        return cls(d, {0: 1})

    @classmethod
    def zero(cls, d: Dims) -> "AlgebraElement":
        return cls(d)

    @classmethod
    def from_word(cls, d: Dims, word: Sequence[Generator], coeff=1):
        mask, sign = mask_of(d, word)
        return cls(d, {mask: coeff * sign})

    @classmethod
    def from_terms(cls, d: Dims, items: Iterable[tuple[object, Sequence[Generator]]]):
        """Sum of ``coeff * word`` over ``(coeff, word)`` pairs."""
        acc: dict[int, object] = {}
        for coeff, word in items:
            if _is_zero(coeff):
                continue
            mask, sign = mask_of(d, word)
            acc[mask] = acc.get(mask, 0) + coeff * sign
        return cls(d, acc)

    # inspection -----------------------------------------------------------

    @property
    def masks(self) -> dict[int, object]:
        return dict(self._terms)

    @property
    def terms(self) -> dict[Word, object]:
        return {word_of(self.dims, k): v for k, v in self._terms.items()}

    def coefficient(self, word: Sequence[Generator] = ()):
        mask, sign = mask_of(self.dims, word)
        return sign * self._terms.get(mask, 0)

    def scalar_part(self):
        return self._terms.get(0, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    # arithmetic -----------------------------------------------------------

    def _check(self, other: "AlgebraElement"):
        if other.dims != self.dims:
            raise DimensionError(f"dims mismatch: {self.dims} vs {other.dims}")

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            other = AlgebraElement.scalar(self.dims, other)
        self._check(other)
        acc = dict(self._terms)
        for k, v in other._terms.items():
            acc[k] = acc.get(k, 0) + v
        return AlgebraElement(self.dims, acc)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.dims, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return mul(self, other)
        return AlgebraElement(self.dims, {k: v * other for k, v in self._terms.items()})

    def __rmul__(self, other):
        return AlgebraElement(self.dims, {k: other * v for k, v in self._terms.items()})

    def __truediv__(self, other):
        return AlgebraElement(self.dims, {k: v / other for k, v in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.dims == other.dims and self._terms == other._terms

    __hash__ = None

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms):
            w = word_of(self.dims, k)
            parts.append(f"{self._terms[k]!r}*{'.'.join(map(repr, w)) or 'Id'}")
        return " + ".join(parts)


def mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Product in the Clifford algebra, reduced to canonical words."""
    if a.dims != b.dims:
        raise DimensionError(f"dims mismatch: {a.dims} vs {b.dims}")
    d = a.dims
    acc: dict[int, object] = {}
    for ka, va in a._terms.items():
        for kb, vb in b._terms.items():
            k = ka ^ kb
            v = va * vb
            if blade_sign(d, ka, kb) < 0:
                v = -v
            acc[k] = acc.get(k, 0) + v
    return AlgebraElement(d, acc)


def trace(e: AlgebraElement, d: Dims | None = None):
    """Trace on the ``2**(p+q)``-dimensional module.

    Every non-empty canonical word is traceless, so the trace is the rank
    times the coefficient of the identity.
    """
    if d is not None and d != e.dims:
        raise DimensionError(f"dims mismatch: {e.dims} vs {d}")
    return e.dims.rank * e.scalar_part()


def trace_product(a: AlgebraElement, b: AlgebraElement):
    """``trace(a*b)`` without forming the full product."""
    if a.dims != b.dims:
        raise DimensionError(f"dims mismatch: {a.dims} vs {b.dims}")
    d = a.dims
    total = 0
    for k, va in a._terms.items():
        vb = b._terms.get(k)
        if vb is None:
            continue
        v = va * vb
        total = total - v if blade_sign(d, k, k) < 0 else total + v
    return d.rank * total


def generator(d: Dims, g: Generator, coeff=1) -> AlgebraElement:
    return AlgebraElement(d, {1 << g.position(d): coeff})


def volume_element(d: Dims) -> AlgebraElement:
    """Normal chirality ``tau = (-i)**(q(q+1)/2) c(h_1)...c(h_q)``."""
    prefactor = (-I) ** (d.q * (d.q + 1) // 2)
    return AlgebraElement.from_word(d, [ch(s) for s in range(1, d.q + 1)], prefactor)


def gamma5(d: Dims) -> AlgebraElement:
    """Ambient volume element ``c(e_1)c(e_2)c(e_3)c(e_4)`` (``m = 4`` only)."""
    if d.m != 4:
        raise DimensionError(f"gamma5 needs m = 4, got m = {d.m}")
    return AlgebraElement.from_word(d, [ambient(d, i) for i in range(1, 5)])


def all_generators(d: Dims) -> list[Generator]:
    return [generator_at(d, k) for k in range(d.n_generators)]
