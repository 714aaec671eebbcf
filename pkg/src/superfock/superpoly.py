"""Superpolynomials in two even variables z1, z2 and two odd variables z3, z4.

Monomials are stored in the canonical order ``z1^a z2^b z3^c z4^d`` with
``c, d`` in {0, 1}.  Odd variables anticommute, so reordering them into this
order costs a sign and repeated odd factors vanish.

Derivatives are left derivatives: ``d/dz_i`` is moved in from the left of a
monomial, picking up ``(-1)^{|z_i||z_j|}`` for every ``z_j`` it passes.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Mapping, NamedTuple

from .scalars import ONE, GaussianRational, as_scalar

__all__ = [
    "SuperMonomial",
    "SuperPolynomial",
    "PolyOp",
    "multiply",
    "partial",
    "variable",
    "ODD_DERIVATIVE_SIGN",
]

# Global sign attached to derivatives in odd variables.  Left derivatives with
# the Koszul rule reproduce the Bessel-Fischer table with +1.
ODD_DERIVATIVE_SIGN = 1


class SuperMonomial(NamedTuple):
    a: int = 0
    b: int = 0
    c: int = 0
    d: int = 0

    @property
    def parity(self) -> int:
        return (self.c + self.d) & 1

    @property
    def degree(self) -> int:
        return self.a + self.b + self.c + self.d

    def __str__(self):
        parts = []
        for name, e in (("z1", self.a), ("z2", self.b), ("z3", self.c), ("z4", self.d)):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"


def _mono_mul(m: SuperMonomial, n: SuperMonomial):
    """Product of two monomials as ``(sign, monomial)``; ``sign == 0`` means zero."""
    if (m.c and n.c) or (m.d and n.d):
        return 0, None
    # z3^c z4^d * z1^a' z2^b' z3^c' z4^d': even factors move freely, z4^d past z3^c' costs a sign
    s = -1 if (m.d and n.c) else 1
    return s, SuperMonomial(m.a + n.a, m.b + n.b, m.c + n.c, m.d + n.d)


def _mono_partial(i: int, m: SuperMonomial):
    """Left derivative of a monomial as ``(factor, monomial)``; factor 0 means zero."""
    if i == 1:
        return (m.a, m._replace(a=m.a - 1)) if m.a else (0, None)
    if i == 2:
        return (m.b, m._replace(b=m.b - 1)) if m.b else (0, None)
    if i == 3:
        return (ODD_DERIVATIVE_SIGN, m._replace(c=0)) if m.c else (0, None)
    if i == 4:
        if not m.d:
            return 0, None
        # pass over z3 if present
        return ((-1 if m.c else 1) * ODD_DERIVATIVE_SIGN, m._replace(d=0))
    raise ValueError(f"variable index must be 1..4, got {i}")


class SuperPolynomial:
    """Finite linear combination of supermonomials with Gaussian-rational coefficients.

    Zero coefficients are never stored, so equality is equality of term maps.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[SuperMonomial, GaussianRational] = {}
        for mono, coeff in items:
            mono = mono if isinstance(mono, SuperMonomial) else SuperMonomial(*mono)
            if mono.c > 1 or mono.d > 1:
                continue
            coeff = as_scalar(coeff)
            acc[mono] = acc[mono] + coeff if mono in acc else coeff
        self._terms = {m: c for m, c in acc.items() if c}

    @classmethod
    def _from_clean(cls, terms: dict) -> "SuperPolynomial":
        obj = object.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def monomial(cls, a=0, b=0, c=0, d=0, coeff=ONE) -> "SuperPolynomial":
        return cls({SuperMonomial(a, b, c, d): coeff})

    @property
    def terms(self) -> Mapping[SuperMonomial, GaussianRational]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self) -> Iterator[SuperMonomial]:
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coeff(self, mono) -> GaussianRational:
        mono = mono if isinstance(mono, SuperMonomial) else SuperMonomial(*mono)
        return self._terms.get(mono, GaussianRational())

    def __eq__(self, other):
        if isinstance(other, SuperPolynomial):
            return self._terms == other._terms
        if isinstance(other, int) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out[m] + c if m in out else c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return SuperPolynomial._from_clean(out)

    def __neg__(self):
        return SuperPolynomial._from_clean({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "SuperPolynomial":
        s = as_scalar(s)
        if not s:
            return SuperPolynomial()
        return SuperPolynomial._from_clean({m: c * s for m, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, SuperPolynomial):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def conjugate(self) -> "SuperPolynomial":
        """Conjugate every coefficient (the map q -> q-bar)."""
        return SuperPolynomial._from_clean({m: c.conjugate() for m, c in self._terms.items()})

    @property
    def parity(self) -> int | None:
        """0 or 1 for homogeneous polynomials, ``None`` for mixed ones (zero is even)."""
        ps = {m.parity for m in self._terms}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    @property
    def degree(self) -> int:
        return max((m.degree for m in self._terms), default=-1)

    def __repr__(self):
        return f"SuperPolynomial({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        key = lambda m: (m.degree, -m.a, m.b, m.c, m.d)
        return " + ".join(f"({c})*{m}" for m, c in sorted(self._terms.items(), key=lambda t: key(t[0])))


def variable(i: int) -> SuperPolynomial:
    exps = [0, 0, 0, 0]
    exps[i - 1] = 1
    return SuperPolynomial.monomial(*exps)


def multiply(p: SuperPolynomial, q: SuperPolynomial) -> SuperPolynomial:
    out: dict[SuperMonomial, GaussianRational] = {}
    for m, c in p.items():
        for n, e in q.items():
            s, mn = _mono_mul(m, n)
            if not s:
                continue
            v = c * e if s > 0 else -(c * e)
            if mn in out:
                v = out[mn] + v
            if v:
                out[mn] = v
            else:
                out.pop(mn, None)
    return SuperPolynomial._from_clean(out)


def partial(i: int, p: SuperPolynomial) -> SuperPolynomial:
    """Left partial derivative with respect to ``z_i``."""
    out: dict[SuperMonomial, GaussianRational] = {}
    for m, c in p.items():
        f, dm = _mono_partial(i, m)
        if not f:
            continue
        v = c * f
        if dm in out:
            v = out[dm] + v
        if v:
            out[dm] = v
        else:
            out.pop(dm, None)
    return SuperPolynomial._from_clean(out)


def _mul_var(i: int, p: SuperPolynomial) -> SuperPolynomial:
    """Left multiplication by the variable ``z_i``."""
    return multiply(variable(i), p)


class PolyOp:
    """Linear operator on superpolynomials with a definite parity.

    Built from the generators ``PolyOp.z(i)``, ``PolyOp.d(i)`` and scalars by
    sums, scalar multiples and composition ``A @ B`` (apply ``B`` first).
    """

    __slots__ = ("_fn", "parity")

    def __init__(self, fn: Callable[[SuperPolynomial], SuperPolynomial], parity: int):
        self._fn = fn
        self.parity = parity & 1

    def __call__(self, p: SuperPolynomial) -> SuperPolynomial:
        return self._fn(p)

    @classmethod
    def z(cls, i: int) -> "PolyOp":
        return cls(lambda p, i=i: _mul_var(i, p), 1 if i > 2 else 0)

    @classmethod
    def d(cls, i: int) -> "PolyOp":
        return cls(lambda p, i=i: partial(i, p), 1 if i > 2 else 0)

    @classmethod
    def scalar(cls, s) -> "PolyOp":
        s = as_scalar(s)
        return cls(lambda p: p.scale(s), 0)

    @classmethod
    def identity(cls) -> "PolyOp":
        return cls(lambda p: p, 0)

    @classmethod
    def zero(cls, parity: int = 0) -> "PolyOp":
        return cls(lambda p: SuperPolynomial(), parity)

    def __add__(self, other: "PolyOp") -> "PolyOp":
        if not isinstance(other, PolyOp):
            other = PolyOp.scalar(other)
        if other.parity != self.parity:
            raise ValueError("cannot add operators of different parity")
        f, g = self._fn, other._fn
        return PolyOp(lambda p: f(p) + g(p), self.parity)

    __radd__ = __add__

    def __neg__(self):
        f = self._fn
        return PolyOp(lambda p: -f(p), self.parity)

    def __sub__(self, other):
        return self + (-other if isinstance(other, PolyOp) else -as_scalar(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, s) -> "PolyOp":
        if isinstance(s, PolyOp):
            return self @ s
        s = as_scalar(s)
        f = self._fn
        return PolyOp(lambda p: f(p).scale(s), self.parity)

    __rmul__ = __mul__

    def __matmul__(self, other: "PolyOp") -> "PolyOp":
        f, g = self._fn, other._fn
        return PolyOp(lambda p: f(g(p)), self.parity + other.parity)
