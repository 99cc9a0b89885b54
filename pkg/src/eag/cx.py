"""Exact Gaussian-rational arithmetic and the projective line.

The curve constructions run over two backends: exact rationals (complex
numbers with Fraction parts) whenever the input data is rational, and
floating complex with an explicit tolerance otherwise.  Points at infinity
are honest projective pairs, never sentinel floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class GaussianRational:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    @staticmethod
    def of(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(Fraction(x))
        raise PreconditionError(f"cannot coerce {x!r} to an exact complex number")

    def __add__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.of(other))

    def __rsub__(self, other):
        return GaussianRational.of(other) + (-self)

    def __mul__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.of(other)
        n2 = o.norm2()
        if n2 == 0:
            raise ZeroDivisionError("division by exact zero")
        return self * GaussianRational(o.re / n2, -o.im / n2)

    def __rtruediv__(self, other):
        return GaussianRational.of(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise PreconditionError("only non-negative integer powers are exact")
        out = GaussianRational(Fraction(1))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        try:
            o = GaussianRational.of(other)
        except PreconditionError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def magnitude_l1(self) -> Fraction:
        return abs(self.re) + abs(self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


def is_exact_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, GaussianRational))


def exactify(x):
    return GaussianRational.of(x) if not isinstance(x, GaussianRational) else x


def scalar_is_zero(x, tol: float, scale: float = 1.0) -> bool:
    if isinstance(x, GaussianRational):
        return x.is_zero()
    if isinstance(x, (int, Fraction)):
        return x == 0
    return abs(x) <= tol * max(scale, 1.0)


def scalar_abs(x) -> float:
    if isinstance(x, GaussianRational):
        return abs(complex(x))
    return abs(complex(x))


@dataclass(frozen=True)
class ProjPoint:
    """Point of the projective line as a homogeneous pair (num : den)."""

    num: object
    den: object

    @staticmethod
    def finite(x) -> "ProjPoint":
        if is_exact_scalar(x):
            return ProjPoint(exactify(x), exactify(1))
        return ProjPoint(complex(x), complex(1))

    @staticmethod
    def infinity(exact: bool = True) -> "ProjPoint":
        if exact:
            return ProjPoint(exactify(1), exactify(0))
        return ProjPoint(complex(1), complex(0))

    @property
    def exact(self) -> bool:
        return is_exact_scalar(self.num)

    def is_infinity(self, tol: float = DEFAULT_TOL) -> bool:
        if self.exact:
            return exactify(self.den).is_zero()
        scale = max(abs(self.num), abs(self.den), 1e-300)
        return abs(self.den) <= tol * scale

    def value(self):
        """The affine value; undefined at infinity."""
        if self.is_infinity():
            raise PreconditionError("point at infinity has no affine value")
        return self.num / self.den

    def same_point(self, other: "ProjPoint", tol: float = DEFAULT_TOL) -> bool:
        cross = self.num * other.den - self.den * other.num
        if self.exact and other.exact:
            return exactify(cross).is_zero()
        scale = (max(abs(complex(self.num)), abs(complex(self.den)))
                 * max(abs(complex(other.num)), abs(complex(other.den))))
        return abs(complex(cross)) <= tol * max(scale, 1e-300)

    def to_json(self):
        if self.is_infinity():
            return "inf"
        v = complex(self.value())
        return [v.real, v.imag]

    def __str__(self) -> str:
        if self.is_infinity():
            return "inf"
        v = self.value()
        if isinstance(v, GaussianRational):
            return str(v.re) if v.im == 0 else repr(v)
        return f"{complex(v):.6g}"


def cross_det(u: ProjPoint, v: ProjPoint):
    return u.num * v.den - u.den * v.num


@dataclass(frozen=True)
class Mobius:
    """Fractional linear map as an invertible 2x2 matrix acting on pairs."""

    a: object
    b: object
    c: object
    d: object

    def apply(self, pt: ProjPoint) -> ProjPoint:
        return ProjPoint(self.a * pt.num + self.b * pt.den,
                         self.c * pt.num + self.d * pt.den)

    def inverse(self) -> "Mobius":
        return Mobius(self.d, -1 * self.b, -1 * self.c, self.a)

    def compose(self, other: "Mobius") -> "Mobius":
        return Mobius(self.a * other.a + self.b * other.c,
                      self.a * other.b + self.b * other.d,
                      self.c * other.a + self.d * other.c,
                      self.c * other.b + self.d * other.d)

    @staticmethod
    def to_standard(p0: ProjPoint, p1: ProjPoint, p2: ProjPoint,
                    tol: float = DEFAULT_TOL) -> "Mobius":
        """The map sending (p0, p1, p2) to (0, 1, infinity)."""
        d12 = cross_det(p1, p2)
        d10 = cross_det(p1, p0)
        m = Mobius(p0.den * d12, -1 * p0.num * d12,
                   p2.den * d10, -1 * p2.num * d10)
        if scalar_is_zero(m.a * m.d - m.b * m.c, tol,
                          _mobius_scale(m)):
            raise PreconditionError("degenerate point triple for a fractional linear map")
        return m

    @staticmethod
    def through(src, dst, tol: float = DEFAULT_TOL) -> "Mobius":
        """The unique map carrying the source triple onto the target triple."""
        fwd = Mobius.to_standard(*src, tol=tol)
        back = Mobius.to_standard(*dst, tol=tol).inverse()
        return back.compose(fwd)


def _mobius_scale(m: Mobius) -> float:
    if is_exact_scalar(m.a):
        return 1.0
    return max(abs(complex(m.a)), abs(complex(m.b)),
               abs(complex(m.c)), abs(complex(m.d)), 1e-300) ** 2


def cross_ratio(p: ProjPoint, q: ProjPoint, r: ProjPoint, s: ProjPoint) -> ProjPoint:
    """(p, q; r, s) as a projective value, infinity included."""
    return ProjPoint(cross_det(p, r) * cross_det(q, s),
                     cross_det(p, s) * cross_det(q, r))
