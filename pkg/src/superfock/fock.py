"""The polynomial Fock space F_alpha and the operators acting on it.

F_alpha is the quotient of the superpolynomials in z1, z2 | z3, z4 by the
ideal generated by ``2 z1 z2 + z3 z4``, ``z2^2``, ``z2 z3`` and ``z2 z4``.
Normal forms are spanned by ``z1^k``, ``z1^(k-1) z2``, ``z1^(k-1) z3`` and
``z1^(k-1) z4``; the coefficient of these is written ``f[1,k]``, ``f[2,k]``,
``f[3,k]``, ``f[4,k]`` (so the second index is the total degree).

Operators are differential operators on superpolynomials; on F_alpha they act
by applying the operator to the normal-form lift and reducing the result.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Iterable, Iterator, Mapping

import numpy as np

from .algebra import BASIS, StructureConstants, build_structure_constants, parity
from .report import VerificationReport
from .scalars import I, ONE, ZERO, AlphaParam, GaussianRational, as_scalar, pochhammer, sign
from .superpoly import PolyOp, SuperMonomial, SuperPolynomial

__all__ = [
    "FockVector",
    "FockOperator",
    "TruncatedMatrix",
    "basis_keys",
    "basis_label",
    "basis_index",
    "reduce",
    "lift",
    "bessel",
    "rho",
    "rho_table",
    "bessel_fischer",
    "gram_formula",
    "gram_matrix",
    "fundamental_symmetry_S",
    "inner_S",
    "norm_S",
    "norm_S_squared",
    "to_matrix",
    "homomorphism_defect",
    "skew_supersymmetry_defect",
]

Key = tuple[int, int]


def basis_keys(N: int) -> list[Key]:
    """Ordered normal-form basis of degree <= N: 1, then (z1^k, z1^(k-1) z2, z1^(k-1) z3, z1^(k-1) z4)."""
    keys = [(1, 0)]
    for k in range(1, N + 1):
        keys.extend((i, k) for i in (1, 2, 3, 4))
    return keys


def basis_index(key: Key) -> int:
    i, k = key
    return 0 if k == 0 else 4 * k + i - 4


def basis_label(key: Key) -> str:
    i, k = key
    return str(_key_to_mono(key))


def _key_to_mono(key: Key) -> SuperMonomial:
    i, k = key
    if i == 1:
        return SuperMonomial(k, 0, 0, 0)
    if k < 1:
        raise KeyError(f"no normal-form monomial {key}")
    return SuperMonomial(k - 1, *((1, 0, 0), (0, 1, 0), (0, 0, 1))[i - 2])


def key_parity(key: Key) -> int:
    return 1 if key[0] >= 3 else 0


class FockVector:
    """Element of F_alpha in normal form, keyed by ``(family, degree)``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[Key, object] | Iterable = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        out: dict[Key, GaussianRational] = {}
        for key, v in items:
            key = (int(key[0]), int(key[1]))
            _key_to_mono(key)  # validates
            v = as_scalar(v)
            out[key] = out.get(key, ZERO) + v
        self._c = {k: v for k, v in out.items() if v}

    @classmethod
    def _clean(cls, d: dict) -> "FockVector":
        obj = object.__new__(cls)
        obj._c = d
        return obj

    @classmethod
    def basis(cls, i: int, k: int) -> "FockVector":
        return cls({(i, k): ONE})

    @classmethod
    def from_families(cls, f10=0, f1=(), f2=(), f3=(), f4=()) -> "FockVector":
        """Build from ``f10`` and the lists ``f_i[k-1] = f[i,k]`` for k = 1, 2, ..."""
        d = {(1, 0): f10}
        for i, fam in enumerate((f1, f2, f3, f4), start=1):
            for k, v in enumerate(fam, start=1):
                d[(i, k)] = v
        return cls(d)

    def __getitem__(self, key: Key) -> GaussianRational:
        return self._c.get(key, ZERO)

    def items(self):
        return sorted(self._c.items(), key=lambda kv: basis_index(kv[0]))

    def keys(self):
        return self._c.keys()

    def __iter__(self) -> Iterator[Key]:
        return iter(self._c)

    def __len__(self):
        return len(self._c)

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, FockVector):
            return self._c == other._c
        if isinstance(other, int) and other == 0:
            return not self._c
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other: "FockVector") -> "FockVector":
        out = dict(self._c)
        for k, v in other._c.items():
            w = out[k] + v if k in out else v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return FockVector._clean(out)

    def __neg__(self):
        return FockVector._clean({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "FockVector":
        s = as_scalar(s)
        if not s:
            return FockVector()
        return FockVector._clean({k: v * s for k, v in self._c.items()})

    __mul__ = scale
    __rmul__ = scale

    def conjugate(self) -> "FockVector":
        return FockVector._clean({k: v.conjugate() for k, v in self._c.items()})

    @property
    def degree(self) -> int:
        return max((k[1] for k in self._c), default=-1)

    @property
    def parity(self) -> int | None:
        ps = {key_parity(k) for k in self._c}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def even_part(self) -> "FockVector":
        return FockVector._clean({k: v for k, v in self._c.items() if not key_parity(k)})

    def odd_part(self) -> "FockVector":
        return FockVector._clean({k: v for k, v in self._c.items() if key_parity(k)})

    def truncate(self, N: int) -> "FockVector":
        return FockVector._clean({k: v for k, v in self._c.items() if k[1] <= N})

    def __repr__(self):
        return f"FockVector({self})"

    def __str__(self):
        if not self._c:
            return "0"
        return " + ".join(f"({v})*{basis_label(k)}" for k, v in self.items())


def _mono_normal_form(m: SuperMonomial):
    """Normal form of a single monomial as ``(scalar, key)`` or ``None`` when it lies in the ideal."""
    a, b, c, d = m
    if c and d:
        # z3 z4 -> -2 z1 z2
        return (-2, (2, a + 2)) if b == 0 else None
    if b >= 2 or (b == 1 and (c or d)):
        return None
    if b == 1:
        return 1, (2, a + 1)
    if c:
        return 1, (3, a + 1)
    if d:
        return 1, (4, a + 1)
    return 1, (1, a)


def reduce(p: SuperPolynomial, alpha: AlphaParam | None = None) -> FockVector:
    """Normal form of ``p`` in F_alpha (the ideal does not depend on alpha)."""
    out: dict[Key, GaussianRational] = {}
    for m, c in p.items():
        nf = _mono_normal_form(m)
        if nf is None:
            continue
        s, key = nf
        v = c * s
        if key in out:
            v = out[key] + v
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return FockVector._clean(out)


def lift(v: FockVector) -> SuperPolynomial:
    return SuperPolynomial({_key_to_mono(k): c for k, c in v._c.items()})


class FockOperator:
    """A linear operator on F_alpha of definite parity.

    ``degree_shift`` bounds how far the operator moves total degree; it is
    used to mark which rows of a truncated matrix are exact.
    """

    def __init__(self, op: PolyOp | None, parity: int, degree_shift=(-1, 1), name: str = "",
                 basis_action: Callable[[Key], FockVector] | None = None):
        self._op = op
        self.parity = parity & 1
        self.degree_shift = tuple(degree_shift)
        self.name = name
        self._basis_action = basis_action
        self._cache: dict[Key, FockVector] = {}

    def on_basis(self, key: Key) -> FockVector:
        hit = self._cache.get(key)
        if hit is None:
            if self._basis_action is not None:
                hit = self._basis_action(key)
            else:
                hit = reduce(self._op(SuperPolynomial._from_clean({_key_to_mono(key): ONE})))
            self._cache[key] = hit
        return hit

    def __call__(self, v: FockVector) -> FockVector:
        out: dict[Key, GaussianRational] = {}
        for key, c in v._c.items():
            for k2, w in self.on_basis(key)._c.items():
                x = out[k2] + c * w if k2 in out else c * w
                if x:
                    out[k2] = x
                else:
                    out.pop(k2, None)
        return FockVector._clean(out)

    def apply_polynomial(self, p: SuperPolynomial) -> FockVector:
        """Apply to an arbitrary lift (not necessarily in normal form) and reduce."""
        if self._op is None:
            return self(reduce(p))
        return reduce(self._op(p))

    # algebra of operators ------------------------------------------------
    def _combine(self, other: "FockOperator", fn, parity, shift, name):
        return FockOperator(None, parity, shift, name, basis_action=fn)

    def __add__(self, other: "FockOperator") -> "FockOperator":
        if other.parity != self.parity:
            raise ValueError("cannot add operators of different parity")
        lo = min(self.degree_shift[0], other.degree_shift[0])
        hi = max(self.degree_shift[1], other.degree_shift[1])
        return self._combine(other, lambda k: self.on_basis(k) + other.on_basis(k), self.parity, (lo, hi),
                             f"({self.name}+{other.name})")

    def __sub__(self, other: "FockOperator") -> "FockOperator":
        return self + other.scaled(-1)

    def scaled(self, s) -> "FockOperator":
        s = as_scalar(s)
        return FockOperator(None, self.parity, self.degree_shift, f"{s}*{self.name}",
                            basis_action=lambda k: self.on_basis(k).scale(s))

    def __matmul__(self, other: "FockOperator") -> "FockOperator":
        lo = self.degree_shift[0] + other.degree_shift[0]
        hi = self.degree_shift[1] + other.degree_shift[1]
        return FockOperator(None, self.parity + other.parity, (lo, hi), f"{self.name}.{other.name}",
                            basis_action=lambda k: self(other.on_basis(k)))

    def supercommutator(self, other: "FockOperator") -> "FockOperator":
        """``[A, B} = AB - (-1)^{|A||B|} BA``."""
        ab, ba = self @ other, other @ self
        return ab + ba if (self.parity and other.parity) else ab - ba

    @classmethod
    def identity(cls) -> "FockOperator":
        return cls(None, 0, (0, 0), "id", basis_action=lambda k: FockVector.basis(*k))

    def __repr__(self):
        return f"FockOperator({self.name or '?'}, parity={self.parity})"


# -- Bessel operators and the representation table --------------------------

def _z(i):
    return PolyOp.z(i)


def _d(i):
    return PolyOp.d(i)


def _bessel_polyop(i: int, alpha: AlphaParam) -> PolyOp:
    a = alpha.value
    lam = alpha.lam
    one = PolyOp.identity()
    z1, z2, z3, z4 = (_z(j) for j in (1, 2, 3, 4))
    d1, d2, d3, d4 = (_d(j) for j in (1, 2, 3, 4))
    if i == 1:
        return (one * (-lam) + z1 @ d1 + z3 @ d3 + z4 @ d4) @ d1 - (z2 @ d3 @ d4) * (2 * a)
    if i == 2:
        # lambda / alpha is identically 1 for lambda = alpha
        return (one * (-1) + z2 @ d2 + z3 @ d3 + z4 @ d4) @ d2 - (z1 @ d3 @ d4) * 2
    if i == 3:
        return (one * (-2 * lam) + (z1 @ d1) * 2 + (z2 @ d2) * (2 * a) + (z3 @ d3) * (2 * (1 + a))) @ d4 + z3 @ d1 @ d2
    if i == 4:
        return (one * (2 * lam) - (z1 @ d1) * 2 - (z2 @ d2) * (2 * a) - (z4 @ d4) * (2 * (1 + a))) @ d3 + z4 @ d1 @ d2
    raise ValueError(f"variable index must be 1..4, got {i}")


@lru_cache(maxsize=None)
def _bessel_cached(i: int, alpha: AlphaParam) -> FockOperator:
    return FockOperator(_bessel_polyop(i, alpha), 1 if i > 2 else 0, (-1, -1), f"B(z{i})")


def bessel(i: int, alpha: AlphaParam) -> FockOperator:
    """The Bessel operator of ``z_i`` (with lambda = alpha), acting on F_alpha."""
    return _bessel_cached(i, alpha)


def _rho_polyops(alpha: AlphaParam) -> dict[str, PolyOp]:
    a = alpha.value
    lam = alpha.lam
    one = PolyOp.identity()
    z1, z2, z3, z4 = (_z(j) for j in (1, 2, 3, 4))
    d1, d2, d3, d4 = (_d(j) for j in (1, 2, 3, 4))
    B1, B2, B3, B4 = (_bessel_polyop(j, alpha) for j in (1, 2, 3, 4))
    i = I
    half, quarter = Fraction(1, 2), Fraction(1, 4)

    euler2 = one * (-lam) + (z1 @ d1) * 2 + z3 @ d3 + z4 @ d4
    euler3 = one * (-1) + (z2 @ d2) * 2 + z3 @ d3 + z4 @ d4
    mix3 = z3 @ d1 + (z2 @ d4) * (2 * a) + z3 @ d2 + (z1 @ d4) * 2
    mix4 = z4 @ d1 - (z2 @ d3) * (2 * a) + z4 @ d2 - (z1 @ d3) * 2

    ops = {
        "F2": (z1 + B1) * (-i * half) - euler2 * (i * half),
        "F3": (z2 + B2) * (-i * half) - euler3 * (i * half),
        "u---": (z3 + B3) * (i * half) + mix3 * (i * half),
        "u+--": (z4 + B4) * (i * quarter) + mix4 * (i * quarter),
        "E2": (z1 + B1) * (-i * half) + euler2 * (i * half),
        "E3": (z2 + B2) * (-i * half) + euler3 * (i * half),
        "u-++": (z3 + B3) * (-i * half) + mix3 * (i * half),
        "u+++": (z4 + B4) * (-i * quarter) + mix4 * (i * quarter),
        "F1": (z3 @ d4) * 2,
        "E1": (z4 @ d3) * half,
        "H1": z4 @ d4 - z3 @ d3,
        "H2": z1 - B1,
        "H3": z2 - B2,
    }
    # the table lists the g_0 odd elements only through sums and differences
    s3 = -(z3 - B3)                                           # u--+ + u-+-
    d3_ = -(z3 @ d1) - (z2 @ d4) * (2 * a) + z3 @ d2 + (z1 @ d4) * 2  # u--+ - u-+-
    s4 = (z4 - B4) * (-half)                                  # u+-+ + u++-
    d4_ = (-(z4 @ d1) + (z2 @ d3) * (2 * a) + z4 @ d2 - (z1 @ d3) * 2) * half  # u+-+ - u++-
    ops["u--+"] = (s3 + d3_) * half
    ops["u-+-"] = (s3 - d3_) * half
    ops["u+-+"] = (s4 + d4_) * half
    ops["u++-"] = (s4 - d4_) * half
    return ops


_SHIFTS = {
    "E1": (0, 0), "F1": (0, 0), "H1": (0, 0),
}


@lru_cache(maxsize=None)
def rho_table(alpha: AlphaParam) -> dict[str, FockOperator]:
    ops = _rho_polyops(alpha)
    return {
        name: FockOperator(ops[name], parity(name), _SHIFTS.get(name, (-1, 1)), f"rho({name})")
        for name in BASIS
    }


def rho(X: str, alpha: AlphaParam) -> FockOperator:
    """The operator representing the basis element ``X`` on F_alpha."""
    return rho_table(alpha)[X]


def rho_of(element, alpha: AlphaParam) -> FockOperator:
    """Linear extension of ``rho`` to an ``AlgebraElement`` (or a {name: coeff} map)."""
    items = element.items() if hasattr(element, "items") else element
    items = list(items)
    table = rho_table(alpha)
    if not items:
        return FockOperator(None, 0, (0, 0), "0", basis_action=lambda k: FockVector())
    out = None
    for name, c in items:
        term = table[name].scaled(c)
        out = term if out is None else out + term
    return out


# -- Bessel-Fischer product ---------------------------------------------------

def bessel_fischer(p: FockVector, q: FockVector, alpha: AlphaParam) -> GaussianRational:
    """``<p, q> = p(B) qbar |_{z=0}``: substitute Bessel operators into ``p``,
    apply them to ``q`` with conjugated coefficients, keep the constant term.

    A normal-form monomial ``z1^a x`` (x in {1, z2, z3, z4}) becomes the
    operator ``B(z1)^a B(x)``; ``B(x)`` acts first.
    """
    qbar = q.conjugate()
    total = ZERO
    B1 = bessel(1, alpha)
    for key, c in p._c.items():
        i, k = key
        v = qbar
        if i == 1:
            power = k
        else:
            v = bessel(i, alpha)(v)
            power = k - 1
        for _ in range(power):
            if not v:
                break
            v = B1(v)
        total = total + c * v[(1, 0)]
    return total


def gram_formula(p: Key, q: Key, alpha: AlphaParam) -> Fraction:
    """Closed-form Bessel-Fischer product of two normal-form basis monomials."""
    a = alpha.value
    (i, k), (j, l) = p, q
    if i == 1 and j == 1 and k == l:
        return factorial(k) * pochhammer(-a, k)
    if i == 2 and j == 2 and k == l:
        return -factorial(k - 1) * pochhammer(-a, k - 1)
    if i == 3 and j == 4 and k == l:
        return 2 * factorial(k - 1) * pochhammer(-a, k)
    if i == 4 and j == 3 and k == l:
        return -2 * factorial(k - 1) * pochhammer(-a, k)
    return Fraction(0)


def gram_matrix(N: int, alpha: AlphaParam, form: str = "bf") -> list[list[GaussianRational]]:
    """Matrix of ``<b_r, b_c>`` (``form='bf'``) or ``(b_r, b_c)_S`` (``form='S'``) on the degree <= N basis.

    Uses the Bessel-operator definition directly, sharing the chain
    ``B(z1)^m B(x) b_c`` across all rows.
    """
    keys = basis_keys(N)
    n = len(keys)
    idx = {k: r for r, k in enumerate(keys)}
    G = [[ZERO] * n for _ in range(n)]
    B1 = bessel(1, alpha)
    for c, qk in enumerate(keys):
        q = FockVector.basis(*qk)
        if form == "S":
            q = fundamental_symmetry_S(q, alpha)
        qbar = q.conjugate()
        for x in (1, 2, 3, 4):
            v = qbar if x == 1 else bessel(x, alpha)(qbar)
            start = 0 if x == 1 else 1
            for k in range(start, N + 1):
                if k > start:
                    v = B1(v)
                if (x, k) in idx:
                    G[idx[(x, k)]][c] = v[(1, 0)]
                if not v:
                    break
    return G


# -- fundamental symmetry -----------------------------------------------------

def _s_image(key: Key, alpha: AlphaParam) -> tuple[int, Key]:
    a = alpha.value
    i, k = key
    if i == 1:
        return sign(pochhammer(-a, k)), (1, k)
    if i == 2:
        return -sign(pochhammer(-a, k - 1)), (2, k)
    if i == 3:
        return sign(pochhammer(-a, k)), (4, k)
    return -sign(pochhammer(-a, k)), (3, k)


def fundamental_symmetry_S(p: FockVector, alpha: AlphaParam) -> FockVector:
    """Linear extension of
    z1^k -> sgn((-a)_k) z1^k,            z1^k z2 -> -sgn((-a)_k) z1^k z2,
    z1^k z3 -> sgn((-a)_{k+1}) z1^k z4,  z1^k z4 -> -sgn((-a)_{k+1}) z1^k z3.
    """
    out: dict[Key, GaussianRational] = {}
    for key, c in p._c.items():
        s, k2 = _s_image(key, alpha)
        if s:
            out[k2] = out.get(k2, ZERO) + c * s
    return FockVector._clean({k: v for k, v in out.items() if v})


def inner_S(p: FockVector, q: FockVector, alpha: AlphaParam) -> GaussianRational:
    """``(p, q)_S = <p, S q>``."""
    return bessel_fischer(p, fundamental_symmetry_S(q, alpha), alpha)


def _weight(key: Key, alpha: AlphaParam) -> Fraction:
    """``(b, b)_S`` for a normal-form basis monomial ``b``."""
    a = alpha.value
    i, k = key
    if i == 1:
        return factorial(k) * abs(pochhammer(-a, k))
    if i == 2:
        return factorial(k - 1) * abs(pochhammer(-a, k - 1))
    return 2 * factorial(k - 1) * abs(pochhammer(-a, k))


def norm_S_squared(f: FockVector, alpha: AlphaParam) -> Fraction:
    """Exact ``(f, f)_S`` as the weighted sum of squared coefficient moduli."""
    return sum((_weight(k, alpha) * c.abs2() for k, c in f._c.items()), Fraction(0))


def norm_S(f: FockVector, alpha: AlphaParam) -> float:
    return float(norm_S_squared(f, alpha)) ** 0.5


# -- truncated matrices ---------------------------------------------------

@dataclass(frozen=True)
class TruncatedMatrix:
    """Matrix of an operator on the degree <= N basis.

    ``entries[r][c]`` is the coefficient of ``basis_r`` in ``op(basis_c)``
    with output degrees above N discarded.  Columns of degree ``<= exact_degree``
    are exactly the operator (nothing was discarded from them).
    """

    N: int
    entries: tuple
    keys: tuple
    exact_degree: int
    name: str = ""

    @property
    def dim(self) -> int:
        return len(self.keys)

    def to_numpy(self, dtype=complex) -> np.ndarray:
        return np.array([[complex(x) for x in row] for row in self.entries], dtype=dtype)

    def labels(self) -> list[str]:
        return [basis_label(k) for k in self.keys]


def to_matrix(op: FockOperator, N: int) -> TruncatedMatrix:
    if N < 1:
        raise ValueError("N must be at least 1")
    keys = basis_keys(N)
    n = len(keys)
    M = [[ZERO] * n for _ in range(n)]
    for c, key in enumerate(keys):
        for k2, v in op.on_basis(key)._c.items():
            if k2[1] <= N:
                M[basis_index(k2)][c] = v
    exact = N - max(op.degree_shift[1], 0)
    return TruncatedMatrix(N, tuple(tuple(r) for r in M), tuple(keys), exact, op.name)


# -- representation checks -------------------------------------------------

def _max_abs(v: FockVector) -> Fraction:
    return max((max(abs(c.re), abs(c.im)) for _, c in v.items()), default=Fraction(0))


def homomorphism_defect(X: str, Y: str, N: int, alpha: AlphaParam,
                        sc: StructureConstants | None = None) -> VerificationReport:
    """``([rho X, rho Y} - rho([X, Y])) v`` on every basis vector of degree <= N."""
    t0 = time.perf_counter()
    sc = sc or build_structure_constants(alpha)
    rx, ry = rho(X, alpha), rho(Y, alpha)
    target = rho_of(sc.entry(X, Y).items(), alpha)
    sgn = -1 if parity(X) and parity(Y) else 1
    worst, witness = Fraction(0), None
    for key in basis_keys(N):
        b = FockVector.basis(*key)
        lhs = rx(ry(b)) - ry(rx(b)).scale(sgn)
        d = _max_abs(lhs - target(b))
        if d > worst:
            worst, witness = d, {"X": X, "Y": Y, "v": basis_label(key)}
    return VerificationReport.from_defect(
        f"fock.homomorphism[{X},{Y}]", alpha=str(alpha.value), N=N, max_defect=worst,
        witness=witness, elapsed_ms=int((time.perf_counter() - t0) * 1000),
        anchor="rho is a representation (operator table vs brackets)",
    )


def skew_supersymmetry_defect(X: str, N: int, alpha: AlphaParam) -> VerificationReport:
    """``<rho(X) p, q> + (-1)^{|X||p|} <p, rho(X) q>`` over basis pairs of degree <= N."""
    t0 = time.perf_counter()
    rx = rho(X, alpha)
    px = parity(X)
    keys = basis_keys(N)
    images = {k: rx.on_basis(k) for k in keys}
    basis = {k: FockVector.basis(*k) for k in keys}
    worst, witness = Fraction(0), None
    for pk in keys:
        sgn = -1 if px and key_parity(pk) else 1
        for qk in keys:
            lhs = bessel_fischer(images[pk], basis[qk], alpha)
            rhs = bessel_fischer(basis[pk], images[qk], alpha)
            d = lhs + rhs * sgn
            m = max(abs(d.re), abs(d.im))
            if m > worst:
                worst, witness = m, {"X": X, "p": basis_label(pk), "q": basis_label(qk)}
    return VerificationReport.from_defect(
        f"fock.skew_supersymmetry[{X}]", alpha=str(alpha.value), N=N, max_defect=worst,
        witness=witness, elapsed_ms=int((time.perf_counter() - t0) * 1000),
        anchor="<rho(X)p,q> = -(-1)^{|X||p|}<p,rho(X)q>",
    )
