"""Exact scalars: Gaussian rationals, the deformation parameter and Pochhammer symbols."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

__all__ = [
    "GaussianRational",
    "AlphaParam",
    "NaturalAlphaError",
    "I",
    "ONE",
    "ZERO",
    "as_scalar",
    "parse_rational",
    "pochhammer",
    "sign",
]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts.

    Instances are immutable and hashable; an instance with zero imaginary part
    compares and hashes equal to the corresponding ``int``/``Fraction``.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # construction helpers -------------------------------------------------
    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse ``"p/q"``, ``"p/q i"``, ``"p/q+r/s i"`` or ``"p/q-r/s i"``."""
        s = text.replace(" ", "").replace("*", "")
        if not s:
            raise ValueError("empty scalar")
        if not s.endswith("i"):
            return cls(Fraction(s))
        body = s[:-1]
        # split at the last sign that is not the leading one
        cut = max(body.rfind("+"), body.rfind("-"))
        if cut <= 0:
            imag = body if body not in ("", "+", "-") else body + "1"
            return cls(0, Fraction(imag))
        real, imag = body[:cut], body[cut:]
        if imag in ("+", "-"):
            imag += "1"
        return cls(Fraction(real), Fraction(imag))

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = as_scalar(other) if not isinstance(other, GaussianRational) else other
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __sub__(self, other):
        o = as_scalar(other) if not isinstance(other, GaussianRational) else other
        return GaussianRational._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return GaussianRational._raw(a * c, b)
            return GaussianRational._raw(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return GaussianRational._raw(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = as_scalar(other) if not isinstance(other, GaussianRational) else other
        if not o:
            raise ZeroDivisionError("division by zero Gaussian rational")
        n = o.re * o.re + o.im * o.im
        return GaussianRational._raw(
            (self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n
        )

    def __rtruediv__(self, other):
        return as_scalar(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return ONE / (self ** (-k))
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    conj = conjugate

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # comparison / conversion ---------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        if isinstance(other, complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    @property
    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im} i"
        sgn = "+" if self.im > 0 else "-"
        return f"{self.re}{sgn}{abs(self.im)} i"


ZERO = GaussianRational._raw(Fraction(0), Fraction(0))
ONE = GaussianRational._raw(Fraction(1), Fraction(0))
I = GaussianRational._raw(Fraction(0), Fraction(1))


def as_scalar(x) -> GaussianRational:
    """Coerce ints, Fractions, rational strings and Gaussian rationals."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, complex):
        raise TypeError("floating complex values are not exact; use GaussianRational")
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or a 'p/q' string")
    if isinstance(x, str):
        return GaussianRational.parse(x)
    return GaussianRational._raw(_frac(x), Fraction(0))


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def sign(x) -> int:
    x = x.re if isinstance(x, GaussianRational) else x
    return (x > 0) - (x < 0)


def pochhammer(a, k: int):
    """Rising factorial ``a (a+1) ... (a+k-1)``; ``(a)_0 = 1``.

    Returns a ``Fraction`` for rational ``a`` and a ``GaussianRational`` otherwise.
    """
    if k < 0:
        raise ValueError("Pochhammer index must be non-negative")
    if isinstance(a, GaussianRational):
        out = ONE
        for j in range(k):
            out = out * (a + j)
        return out
    a = _frac(a)
    out = Fraction(1)
    for j in range(k):
        out *= a + j
    return out


class NaturalAlphaError(ValueError):
    """Raised when alpha is a natural number, where the model degenerates."""


@dataclass(frozen=True)
class AlphaParam:
    """The deformation parameter alpha, a rational outside {0, 1, 2, ...}.

    ``allow_natural`` exists only so that the degeneracy at natural alpha can
    be exhibited; nothing else should set it.
    """

    value: Fraction
    allow_natural: bool = False

    def __post_init__(self):
        object.__setattr__(self, "value", _frac(self.value))
        v = self.value
        if not self.allow_natural and v.denominator == 1 and v >= 0:
            raise NaturalAlphaError(f"alpha must not be a natural number, got {v}")

    @classmethod
    def parse(cls, text: str, allow_natural: bool = False) -> "AlphaParam":
        return cls(Fraction(text.strip()), allow_natural)

    @property
    def lam(self) -> Fraction:
        # the Fock model is taken with lambda = alpha throughout
        return self.value

    @property
    def sigmas(self) -> tuple[Fraction, Fraction, Fraction]:
        a = self.value
        return ((1 + a) / 2, Fraction(-1, 2), -a / 2)

    def __str__(self):
        return str(self.value)
