"""Exact arithmetic layer: rationals, square roots of rationals, roots, determinants.

Everything here works on Python ints and :class:`fractions.Fraction`; nothing
touches floating point except explicit ``__float__`` conversions meant for
diagnostics.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence, Union

RationalLike = Union[int, Fraction, str]


def to_fraction(value: RationalLike) -> Fraction:
    """Parse an int, Fraction or a ``"p/q"`` string into a Fraction.

    Floats are rejected: a float has already lost the exact value.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def format_fraction(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of a nonnegative integer."""
    if n < 0:
        raise ValueError("iroot of a negative number")
    if k == 1 or n < 2:
        return n
    if k == 2:
        return math.isqrt(n)
    # Newton iteration from an upper bound
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def exact_root(q: Fraction, k: int) -> Fraction | None:
    """Return q**(1/k) if it is rational, else None."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("root of a negative rational")
    a, b = q.numerator, q.denominator
    ra, rb = iroot(a, k), iroot(b, k)
    if ra**k == a and rb**k == b:
        return Fraction(ra, rb)
    return None


def root_enclosure(q: Fraction, k: int, rel: Fraction = Fraction(1, 10**12)) -> tuple[Fraction, Fraction]:
    """Certified rational interval ``lo <= q**(1/k) <= hi``.

    The interval is a point when the root is rational; otherwise
    ``hi - lo <= rel * lo``.
    """
    q = Fraction(q)
    if k < 1:
        raise ValueError("root order must be positive")
    if q == 0:
        return Fraction(0), Fraction(0)
    r = exact_root(q, k)
    if r is not None:
        return r, r
    bits = 8
    while True:
        scale = 1 << bits
        n = (q.numerator * scale**k) // q.denominator
        s = iroot(n, k)
        # s**k <= q*scale**k < (s+1)**k
        if s > 0 and Fraction(1, s) <= rel:
            return Fraction(s, scale), Fraction(s + 1, scale)
        bits *= 2


def floor_sqrt(q: Fraction) -> int:
    """Largest integer m with m*m <= q (q >= 0)."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("floor_sqrt of a negative rational")
    return math.isqrt(q.numerator // q.denominator)


class GaugeKind(enum.Enum):
    RATIONAL = "rational"
    SQRT_RATIONAL = "sqrt_rational"


@total_ordering
class GaugeValue:
    """A nonnegative real that is either rational or the square root of one.

    ``value`` is the number itself for :attr:`GaugeKind.RATIONAL` and its
    square for :attr:`GaugeKind.SQRT_RATIONAL`.  Comparisons go through the
    squares, which is exact because every value is nonnegative.
    """

    __slots__ = ("kind", "value")

    def __init__(self, kind: GaugeKind, value: RationalLike):
        value = to_fraction(value)
        if value < 0:
            raise ValueError("gauge values are nonnegative")
        self.kind = kind
        self.value = value

    @classmethod
    def rational(cls, q: RationalLike) -> GaugeValue:
        return cls(GaugeKind.RATIONAL, q)

    @classmethod
    def sqrt(cls, square: RationalLike) -> GaugeValue:
        return cls(GaugeKind.SQRT_RATIONAL, square)

    @property
    def square(self) -> Fraction:
        if self.kind is GaugeKind.RATIONAL:
            return self.value * self.value
        return self.value

    def as_fraction(self) -> Fraction | None:
        """The exact rational value, or None if it is irrational."""
        if self.kind is GaugeKind.RATIONAL:
            return self.value
        return exact_root(self.value, 2)

    def enclosure(self, rel: Fraction = Fraction(1, 10**12)) -> tuple[Fraction, Fraction]:
        if self.kind is GaugeKind.RATIONAL:
            return self.value, self.value
        return root_enclosure(self.value, 2, rel)

    def scale(self, t: RationalLike) -> GaugeValue:
        t = abs(to_fraction(t))
        if self.kind is GaugeKind.RATIONAL:
            return GaugeValue(self.kind, self.value * t)
        return GaugeValue(self.kind, self.value * t * t)

    def __mul__(self, other: GaugeValue) -> GaugeValue:
        if not isinstance(other, GaugeValue):
            return self.scale(other)
        if self.kind is GaugeKind.RATIONAL and other.kind is GaugeKind.RATIONAL:
            return GaugeValue.rational(self.value * other.value)
        return GaugeValue.sqrt(self.square * other.square)

    __rmul__ = __mul__

    @staticmethod
    def _square_of(other) -> Fraction:
        if isinstance(other, GaugeValue):
            return other.square
        q = to_fraction(other)
        if q < 0:
            return -(q * q)  # below every gauge value
        return q * q

    def __eq__(self, other) -> bool:
        try:
            return self.square == self._square_of(other)
        except TypeError:
            return NotImplemented

    def __lt__(self, other) -> bool:
        try:
            return self.square < self._square_of(other)
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash(self.square)

    def __float__(self) -> float:
        if self.kind is GaugeKind.RATIONAL:
            return float(self.value)
        return math.sqrt(float(self.value))

    def __str__(self) -> str:
        q = self.as_fraction()
        if q is not None:
            return format_fraction(q)
        return f"sqrt({format_fraction(self.value)})"

    def __repr__(self) -> str:
        return f"GaugeValue({self.kind.name}, {format_fraction(self.value)})"

    @classmethod
    def parse(cls, text: str) -> GaugeValue:
        text = text.strip()
        if text.startswith("sqrt(") and text.endswith(")"):
            return cls.sqrt(text[5:-1])
        return cls.rational(text)


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (fraction-free elimination)."""
    m = [list(map(int, r)) for r in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("matrix is not square")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def det_mod(rows: Sequence[Sequence[int]], p: int) -> int:
    """Determinant modulo a prime p."""
    m = [[x % p for x in r] for r in rows]
    n = len(m)
    det = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det = det * m[k][k] % p
        inv = pow(m[k][k], -1, p)
        for i in range(k + 1, n):
            if m[i][k]:
                f = m[i][k] * inv % p
                for j in range(k, n):
                    m[i][j] = (m[i][j] - f * m[k][j]) % p
    return det % p


class EchelonBasis:
    """Incrementally maintained row-echelon basis over the rationals.

    ``add(v)`` inserts v if it is independent of what is already stored and
    reports whether it was.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self._rows: list[tuple[int, list[Fraction]]] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reduce(self, v: Iterable) -> list[Fraction]:
        w = [Fraction(x) for x in v]
        for pivot, row in self._rows:
            c = w[pivot]
            if c:
                for j in range(self.dim):
                    w[j] -= c * row[j]
        return w

    def is_independent(self, v: Iterable) -> bool:
        return any(self._reduce(v))

    def add(self, v: Iterable) -> bool:
        w = self._reduce(v)
        pivot = next((j for j, x in enumerate(w) if x), None)
        if pivot is None:
            return False
        p = w[pivot]
        w = [x / p for x in w]
        # keep earlier rows reduced against the new pivot column
        for _, row in self._rows:
            c = row[pivot]
            if c:
                for j in range(self.dim):
                    row[j] -= c * w[j]
        self._rows.append((pivot, w))
        return True


def rank(vectors: Iterable[Sequence]) -> int:
    vectors = list(vectors)
    if not vectors:
        return 0
    basis = EchelonBasis(len(vectors[0]))
    for v in vectors:
        basis.add(v)
    return basis.rank


def gcd_vector(v: Iterable[int]) -> int:
    return math.gcd(*(int(x) for x in v))


def lcm_all(values: Iterable[int]) -> int:
    out = 1
    for x in values:
        out = math.lcm(out, int(x))
    return out
