"""Dual-mode scalar arithmetic.

Every numeric kernel in the toolkit is generic over an arithmetic *mode*:

* :class:`RationalMode` -- exact ``fractions.Fraction`` arithmetic.  Needed
  because Hankel and recurrence computations on moment scales like ``2**(k*k)``
  are hopelessly ill-conditioned in any fixed precision.
* :class:`FloatMode` -- binary floats at a configurable precision, backed by a
  private ``mpmath`` context, so two float modes with different precisions are
  distinct modes.

A "scalar" is a plain ``Fraction`` or an ``mpf`` of the mode's own context;
the mode object is the factory, validator and serializer for its values.
Modes are never mixed implicitly: sequence-level operations compare modes and
raise :class:`~momentkit.errors.ModeMismatch`, and ``RationalMode.convert``
rejects binary floats outright rather than guessing an intended rational.

Rational mode admits two controlled approximations, both opt-in and
documented at the call sites: ``sqrt`` (exact when the radicand is a perfect
square, otherwise correct to ``bits``) and ``pi``.  They never contaminate
exact results: quantities that are exactly zero stay exactly zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union

from mpmath.ctx_mp import MPContext

from .errors import InvalidParameter, ModeMismatch

#: bits used for the controlled approximations available in rational mode
RATIONAL_APPROX_BITS = 256

def _isqrt_scaled(x: Fraction, bits: int) -> Fraction:
    """sqrt(x) as a Fraction, exact for perfect squares, else within 2**-bits."""
    if x < 0:
        raise InvalidParameter("square root of a negative value")
    if x == 0:
        return Fraction(0)
    p, q = x.numerator, x.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    # scale so the integer square root carries >= bits fractional bits
    shift = 2 * bits + max(0, -(p.bit_length() - q.bit_length()))
    scaled = (p << shift) // q
    return Fraction(math.isqrt(scaled), 1 << (shift // 2))


class RationalMode:
    """Exact rational arithmetic; all instances are interchangeable."""

    kind = "rational"

    def __repr__(self) -> str:
        return "RationalMode()"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalMode)

    def __hash__(self) -> int:
        return hash("rational")

    def is_value(self, v: Any) -> bool:
        return isinstance(v, (int, Fraction)) and not isinstance(v, bool)

    def convert(self, v: Any) -> Fraction:
        if isinstance(v, bool):
            raise ModeMismatch("bool is not a scalar")
        if isinstance(v, (int, Fraction)):
            return Fraction(v)
        if isinstance(v, str):
            return Fraction(v)
        raise ModeMismatch(
            f"rational mode does not accept {type(v).__name__}; "
            "floats are rejected, not coerced"
        )

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def sqrt(self, v: Fraction, bits: int = RATIONAL_APPROX_BITS) -> Fraction:
        return _isqrt_scaled(Fraction(v), bits)

    def pi(self, bits: int = RATIONAL_APPROX_BITS) -> Fraction:
        ctx = MPContext()
        ctx.prec = bits
        return exact_fraction(+ctx.pi)

    def to_float(self, v: Fraction) -> float:
        try:
            return float(v)
        except OverflowError:
            return math.inf if v > 0 else -math.inf

    def to_string(self, v: Fraction) -> str:
        v = Fraction(v)
        return f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator)

    def from_string(self, s: str) -> Fraction:
        return Fraction(s)


class FloatMode:
    """Binary floats at ``precision_bits`` of mantissa, in a private context."""

    kind = "float"

    def __init__(self, precision_bits: int):
        if precision_bits < 8:
            raise InvalidParameter("float precision must be at least 8 bits")
        self.precision_bits = int(precision_bits)
        self.ctx = MPContext()
        self.ctx.prec = self.precision_bits

    def __repr__(self) -> str:
        return f"FloatMode({self.precision_bits})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FloatMode) and other.precision_bits == self.precision_bits

    def __hash__(self) -> int:
        return hash(("float", self.precision_bits))

    def is_value(self, v: Any) -> bool:
        return isinstance(v, self.ctx.mpf)

    def convert(self, v: Any):
        if isinstance(v, bool):
            raise ModeMismatch("bool is not a scalar")
        if isinstance(v, self.ctx.mpf):
            return v
        if isinstance(v, (int, float)):
            return self.ctx.mpf(v)
        if isinstance(v, Fraction):
            return self.ctx.mpf(v.numerator) / self.ctx.mpf(v.denominator)
        if isinstance(v, str):
            return self.from_string(v)
        raise ModeMismatch(
            f"float:{self.precision_bits} mode does not accept {type(v).__name__} "
            "(values from a different precision context are a different mode)"
        )

    def zero(self):
        return self.ctx.mpf(0)

    def one(self):
        return self.ctx.mpf(1)

    def sqrt(self, v, bits: int | None = None):
        return self.ctx.sqrt(self.convert(v))

    def pi(self, bits: int | None = None):
        return +self.ctx.pi

    def to_float(self, v) -> float:
        return float(v)

    def to_string(self, v) -> str:
        """Hex mantissa/exponent form; round-trips bit-exactly at this precision."""
        sign, man, exp, _bc = self.convert(v)._mpf_
        if man == 0:
            return "0x0p+0"
        return f"{'-' if sign else ''}0x{int(man):x}p{exp:+d}"

    def from_string(self, s: str):
        s = s.strip()
        neg = s.startswith("-")
        body = s[1:] if neg else s
        if body.lower().startswith("0x"):
            man_s, exp_s = body[2:].split("p")
            v = self.ctx.ldexp(self.ctx.mpf(int(man_s, 16)), int(exp_s))
        elif "/" in body:
            p, q = body.split("/")
            v = self.ctx.mpf(int(p)) / self.ctx.mpf(int(q))
        else:
            v = self.ctx.mpf(body)
        return -v if neg else v


Mode = Union[RationalMode, FloatMode]


def default_float_bits(max_degree: int) -> int:
    """Default precision 64 + 4*N**2: Hankel conditioning for the built-in
    measures grows super-exponentially in the degree N, and the oracle
    agreement tests validate this empirically."""
    return 64 + 4 * max_degree * max_degree


def mode_from_string(s: str) -> Mode:
    if s == "rational":
        return RationalMode()
    if s.startswith("float:"):
        return FloatMode(int(s.split(":", 1)[1]))
    raise InvalidParameter(f"unknown mode {s!r}; expected 'rational' or 'float:<bits>'")


def mode_to_string(mode: Mode) -> str:
    return "rational" if isinstance(mode, RationalMode) else f"float:{mode.precision_bits}"


def exact_fraction(v) -> Fraction:
    """Exact Fraction equal to an mpf value (mpf -> rational is always exact)."""
    sign, man, exp, _bc = v._mpf_
    if man == 0:
        return Fraction(0)
    f = Fraction(int(man)) * (Fraction(2) ** exp)
    return -f if sign else f


@dataclass(frozen=True)
class ComplexScalar:
    """Complex number with mode-scalar real and imaginary parts.

    One representation serves both modes; ``fractions.Fraction`` has no
    complex counterpart and keeping mpf pairs here avoids a second code path.
    """

    re: Any
    im: Any

    def __add__(self, other: "ComplexScalar") -> "ComplexScalar":
        return ComplexScalar(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ComplexScalar") -> "ComplexScalar":
        return ComplexScalar(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "ComplexScalar":
        return ComplexScalar(-self.re, -self.im)

    def __mul__(self, other: "ComplexScalar") -> "ComplexScalar":
        return ComplexScalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: "ComplexScalar") -> "ComplexScalar":
        d = other.re * other.re + other.im * other.im
        return ComplexScalar(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def scale(self, c) -> "ComplexScalar":
        return ComplexScalar(self.re * c, self.im * c)

    def conj(self) -> "ComplexScalar":
        return ComplexScalar(self.re, -self.im)

    def abs2(self):
        """|z|^2, staying inside the mode (no square roots)."""
        return self.re * self.re + self.im * self.im

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))


def complex_scalar(mode: Mode, re, im=0) -> ComplexScalar:
    return ComplexScalar(mode.convert(re), mode.convert(im))
