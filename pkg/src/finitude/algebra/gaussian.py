"""Exact Gaussian-rational arithmetic.

A :class:`GaussianRational` is a complex number ``re + im*i`` with both parts
arbitrary-precision rationals (``fractions.Fraction``).  These are the scalars
for every exact computation in the package: polynomial coefficients,
resultants, tower coefficients, residues.  The field operations are closed and
conjugation is an involution, so Q(i) behaves as an honest exact field.
"""

from __future__ import annotations

import math
from fractions import Fraction


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    raise TypeError(f"cannot build a Fraction from {value!r}")


class GaussianRational:
    """Element of Q(i), stored as exact real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _to_fraction(re))
        object.__setattr__(self, "im", _to_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # --- constructors ----------

    @staticmethod
    def coerce(value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(value)
        if isinstance(value, complex):
            return GaussianRational(Fraction(value.real), Fraction(value.imag))
        if isinstance(value, float):
            return GaussianRational(Fraction(value))
        raise TypeError(f"cannot coerce {value!r} to GaussianRational")

    # --- predicates ----------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_one(self) -> bool:
        return self.re == 1 and not self.im

    def is_real(self) -> bool:
        return not self.im

    def is_integer(self) -> bool:
        return not self.im and self.re.denominator == 1

    # --- ring / field operations ----------

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return GaussianRational.coerce(other) + (-self)

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero GaussianRational")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("exponent must be an integer")
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Field norm re^2 + im^2 (an exact nonnegative rational)."""
        return self.re * self.re + self.im * self.im

    # --- comparisons / hashing ----------

    def __eq__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # --- conversions ----------

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __abs__(self) -> float:
        return math.hypot(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            if self.im == 1:
                return "i"
            if self.im == -1:
                return "-i"
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        imag = "i" if mag == 1 else f"{mag}*i"
        return f"({self.re}{sign}{imag})"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def _fraction_nth_root(q: Fraction, n: int) -> Fraction | None:
    """Exact n-th root of a nonnegative rational, or None if irrational."""
    if q < 0:
        return None
    if q == 0:
        return Fraction(0)

    def iroot(m: int) -> int | None:
        r = round(m ** (1.0 / n))
        for c in (r - 1, r, r + 1):
            if c >= 0 and c ** n == m:
                return c
        return None

    num = iroot(q.numerator)
    den = iroot(q.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def exact_nth_root(z: GaussianRational, n: int) -> GaussianRational | None:
    """Some exact n-th root of ``z`` in Q(i), or None if none exists.

    Candidates come from a floating approximation; every candidate is verified
    exactly, so the answer is certified even though the search is numeric.
    """
    if z.is_zero():
        return ZERO
    if n == 1:
        return z
    w = complex(z) ** (1.0 / n)
    for k in range(n):
        rot = complex(math.cos(2 * math.pi * k / n), math.sin(2 * math.pi * k / n))
        cand = w * rot
        fr = Fraction(cand.real).limit_denominator(10**12)
        fi = Fraction(cand.imag).limit_denominator(10**12)
        g = GaussianRational(fr, fi)
        if g ** n == z:
            return g
    # Purely real radicand with a rational real root is the common exact case;
    # the loop above can miss it when limit_denominator rounds badly.
    if z.is_real():
        root = _fraction_nth_root(abs(z.re), n)
        if root is not None:
            if z.re >= 0:
                g = GaussianRational(root)
                if g ** n == z:
                    return g
            else:
                for g in (GaussianRational(-root), GaussianRational(0, root),
                          GaussianRational(0, -root)):
                    if g ** n == z:
                        return g
    return None


def rationalize(value: float, max_denominator: int = 10**12) -> Fraction:
    """Nearest small-denominator rational to a float (caller must verify)."""
    return Fraction(value).limit_denominator(max_denominator)


def rationalize_complex(value: complex,
                        max_denominator: int = 10**12) -> GaussianRational:
    return GaussianRational(rationalize(value.real, max_denominator),
                            rationalize(value.imag, max_denominator))
