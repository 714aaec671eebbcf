"""Integrated action of G0 = SL(2)^3 on the (truncated) Fock space.

One-parameter subgroups ``K_i(t) = exp(t(F_i - E_i))`` and ``A_i(t) = exp(t H_i)``
act through closed forms on the coefficient families; ``A_2`` has no closed
form for alpha < 0 and is computed as the exponential of a truncated matrix.

Numeric vectors are complex double arrays in the ordered basis
``1, z1, z2, z3, z4, z1^2, z1 z2, ...`` used by :func:`superfock.fock.to_matrix`.
"""

from __future__ import annotations

import json
import math
import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from scipy.linalg import expm

from .fock import FockVector, basis_index, rho_of, to_matrix
from .scalars import AlphaParam, pochhammer
from .sl2 import G0Element, cartan_decompose

__all__ = [
    "FAMILIES",
    "OneParamElement",
    "NumericFockVector",
    "TruncationWarning",
    "A2Result",
    "S_weights",
    "bf_signs",
    "act_closed_form",
    "act_A2_expm",
    "act_word",
    "parse_word",
    "word_for_g0",
    "closed_form_matrix",
    "generator_matrix",
    "laguerre_coeffs",
    "laguerre_eigenfunction",
    "act_A2_laguerre",
]

FAMILIES = ("K1", "K2", "K3", "A1", "A2", "A3")
# Lie algebra generator of each one-parameter family
GENERATORS = {
    "K1": {"F1": 1, "E1": -1},
    "K2": {"F2": 1, "E2": -1},
    "K3": {"F3": 1, "E3": -1},
    "A1": {"H1": 1},
    "A2": {"H2": 1},
    "A3": {"H3": 1},
}


class TruncationWarning(RuntimeWarning):
    """Mass of a truncated exponential reached the padding band."""


@dataclass(frozen=True)
class OneParamElement:
    family: str
    t: float

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if not math.isfinite(float(self.t)):
            raise ValueError("group parameter must be finite")

    def inverse(self) -> "OneParamElement":
        return OneParamElement(self.family, -self.t)

    def __str__(self):
        return f"{self.family}({float(self.t):g})"


# -- numeric vectors ---------------------------------------------------------

def _dim(N: int) -> int:
    return 4 * N + 1


@lru_cache(maxsize=None)
def _family_indices(N: int) -> tuple[np.ndarray, ...]:
    """Flat indices of f[i, k] for i = 1..4; family 1 includes k = 0."""
    ks = np.arange(1, N + 1)
    return (
        np.concatenate(([0], 4 * ks - 3)),
        4 * ks - 2,
        4 * ks - 1,
        4 * ks,
    )


@lru_cache(maxsize=None)
def _S_weights_cached(N: int, alpha: AlphaParam) -> np.ndarray:
    a = alpha.value
    w = np.empty(_dim(N))
    w[0] = 1.0
    fact, p_k, p_km1 = 1, Fraction(1), Fraction(1)  # (k-1)!, (-a)_k, (-a)_{k-1}
    for k in range(1, N + 1):
        p_km1, p_k = p_k, p_k * (-a + k - 1)
        kf = fact * k
        w[4 * k - 3] = float(kf * abs(p_k))
        w[4 * k - 2] = float(fact * abs(p_km1))
        w[4 * k - 1] = w[4 * k] = float(2 * fact * abs(p_k))
        fact = kf
    w.setflags(write=False)
    return w


def S_weights(N: int, alpha: AlphaParam) -> np.ndarray:
    """``(b, b)_S`` for every basis monomial of degree <= N."""
    return _S_weights_cached(N, alpha)


@lru_cache(maxsize=None)
def bf_signs(N: int, alpha: AlphaParam) -> np.ndarray:
    """Signs of the diagonal Bessel-Fischer entries ``<b, b>`` (odd ones pair z3 with z4)."""
    a = alpha.value
    s = np.zeros(_dim(N))
    s[0] = 1
    for k in range(1, N + 1):
        s[4 * k - 3] = np.sign(float(pochhammer(-a, k)))
        s[4 * k - 2] = -np.sign(float(pochhammer(-a, k - 1)))
        s[4 * k - 1] = np.sign(float(pochhammer(-a, k)))
        s[4 * k] = -s[4 * k - 1]
    return s


@dataclass
class NumericFockVector:
    """Truncated element of the completed Fock space with complex coefficients."""

    N: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != (_dim(self.N),):
            raise ValueError(f"expected {_dim(self.N)} coefficients for cutoff N={self.N}")
        self.coeffs = c

    @classmethod
    def zeros(cls, N: int) -> "NumericFockVector":
        return cls(N, np.zeros(_dim(N), dtype=complex))

    @classmethod
    def from_fock(cls, v: FockVector, N: int | None = None) -> "NumericFockVector":
        N = max(v.degree, 0) if N is None else N
        out = np.zeros(_dim(N), dtype=complex)
        for key, c in v.items():
            if key[1] <= N:
                out[basis_index(key)] = complex(c)
        return cls(N, out)

    @classmethod
    def basis(cls, i: int, k: int, N: int) -> "NumericFockVector":
        out = cls.zeros(N)
        out.coeffs[basis_index((i, k))] = 1.0
        return out

    @classmethod
    def random(cls, N: int, alpha: AlphaParam, rng: np.random.Generator) -> "NumericFockVector":
        """Gaussian coefficients in the S-orthonormal basis, S-norm ~ 1."""
        n = _dim(N)
        z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        z /= np.linalg.norm(z)
        return cls(N, z / np.sqrt(S_weights(N, alpha)))

    def family(self, i: int) -> np.ndarray:
        """``f[i, k]``: for i = 1 indexed by k = 0..N, otherwise by k = 1..N."""
        return self.coeffs[_family_indices(self.N)[i - 1]]

    def resized(self, N: int) -> "NumericFockVector":
        out = np.zeros(_dim(N), dtype=complex)
        m = min(_dim(N), _dim(self.N))
        out[:m] = self.coeffs[:m]
        return NumericFockVector(N, out)

    @property
    def degree(self) -> int:
        nz = np.flatnonzero(self.coeffs)
        if not nz.size:
            return -1
        return int((nz[-1] + 3) // 4)

    def __sub__(self, other: "NumericFockVector") -> "NumericFockVector":
        N = max(self.N, other.N)
        return NumericFockVector(N, self.resized(N).coeffs - other.resized(N).coeffs)

    def __add__(self, other: "NumericFockVector") -> "NumericFockVector":
        N = max(self.N, other.N)
        return NumericFockVector(N, self.resized(N).coeffs + other.resized(N).coeffs)

    def norm_S_squared(self, alpha: AlphaParam) -> float:
        return float(np.sum(S_weights(self.N, alpha) * np.abs(self.coeffs) ** 2))

    def norm_S(self, alpha: AlphaParam) -> float:
        return math.sqrt(self.norm_S_squared(alpha))

    def allclose(self, other: "NumericFockVector", atol: float = 1e-12) -> bool:
        return bool(np.max(np.abs((self - other).coeffs), initial=0.0) <= atol)

    # serialization: block form f = f1(z1) + f2(z1) z2 + f3(z1) z3 + f4(z1) z4
    def to_json_dict(self) -> dict:
        fams = {}
        for i in (1, 2, 3, 4):
            vals = self.family(i)
            fams[f"f{i}"] = [[float(c.real), float(c.imag)] for c in vals]
        return fams

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, d: dict) -> "NumericFockVector":
        """Inverse of :meth:`to_json_dict`; ``f1[k]`` is f[1,k], ``f_i[k]`` is f[i,k+1] for i > 1."""
        unknown = set(d) - {"f1", "f2", "f3", "f4"}
        if unknown:
            raise ValueError(f"unknown keys {sorted(unknown)}")
        fams = {i: [_parse_complex(x) for x in d.get(f"f{i}", [])] for i in (1, 2, 3, 4)}
        N = max(len(fams[1]) - 1, len(fams[2]), len(fams[3]), len(fams[4]), 0)
        out = cls.zeros(N)
        for k, c in enumerate(fams[1]):
            out.coeffs[basis_index((1, k))] = c
        for i in (2, 3, 4):
            for k, c in enumerate(fams[i]):
                out.coeffs[basis_index((i, k + 1))] = c
        return out


def _parse_complex(x) -> complex:
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return complex(float(x[0]), float(x[1]))
    raise ValueError(f"complex numbers are [re, im] pairs, got {x!r}")


# -- closed forms --------------------------------------------------------------

def _phases_K2(N: int, alpha: float) -> np.ndarray:
    ph = np.empty(_dim(N))
    ph[0] = alpha
    ks = np.arange(1, N + 1)
    ph[4 * ks - 3] = alpha - 2 * ks
    ph[4 * ks - 2] = alpha - 2 * (ks - 1)
    ph[4 * ks - 1] = ph[4 * ks] = alpha - 2 * (ks - 1) - 1
    return ph


def _phases_K3(N: int) -> np.ndarray:
    ph = np.zeros(_dim(N))
    ph[0] = 1
    ks = np.arange(1, N + 1)
    ph[4 * ks - 3] = 1
    ph[4 * ks - 2] = -1
    return ph


def act_closed_form(e: OneParamElement, f: NumericFockVector, alpha: AlphaParam) -> NumericFockVector:
    """Action of K1, K2, K3, A1, A3 by their closed forms.

    K2, K3 and A1 are diagonal, K1 mixes ``(f[3,k], f[4,k])`` and A3 mixes
    ``(f[1,k], f[2,k+1])``; A3 therefore raises the cutoff by one so that no
    coefficient is lost.
    """
    t = float(e.t)
    c = f.coeffs
    N = f.N
    fam = e.family
    if fam == "A2":
        raise ValueError("A2 has no closed form here; use act_A2_expm or act_A2_laguerre")
    if fam == "K2":
        return NumericFockVector(N, c * np.exp(1j * t * _phases_K2(N, float(alpha.value))))
    if fam == "K3":
        return NumericFockVector(N, c * np.exp(1j * t * _phases_K3(N)))
    if fam == "A1":
        out = c.copy()
        _, _, i3, i4 = _family_indices(N)
        out[i3] *= math.exp(-t)
        out[i4] *= math.exp(t)
        return NumericFockVector(N, out)
    if fam == "K1":
        out = c.copy()
        _, _, i3, i4 = _family_indices(N)
        cs, sn = math.cos(t), math.sin(t)
        out[i3] = cs * c[i3] + 2 * sn * c[i4]
        out[i4] = -0.5 * sn * c[i3] + cs * c[i4]
        return NumericFockVector(N, out)
    # A3: pairs (f[1,k], f[2,k+1]) for k = 0..N
    g = f.resized(N + 1)
    c = g.coeffs
    out = c.copy()
    i1, i2, _, _ = _family_indices(N + 1)
    lo, hi = i1[: N + 1], i2  # f[1,k] and f[2,k+1], k = 0..N
    ch, sh = math.cosh(t), math.sinh(t)
    out[lo] = ch * c[lo] + sh * c[hi]
    out[hi] = sh * c[lo] + ch * c[hi]
    return NumericFockVector(N + 1, out)


def closed_form_matrix(e: OneParamElement, N: int, alpha: AlphaParam) -> np.ndarray:
    """Matrix of the closed-form action on the degree <= N basis (higher degrees dropped)."""
    n = _dim(N)
    M = np.zeros((n, n), dtype=complex)
    for col in range(n):
        v = NumericFockVector(N, np.eye(1, n, col, dtype=complex).ravel())
        M[:, col] = act_closed_form(e, v, alpha).resized(N).coeffs
    return M


@lru_cache(maxsize=None)
def _generator_matrix_cached(family: str, N: int, alpha: AlphaParam) -> np.ndarray:
    op = rho_of(GENERATORS[family].items(), alpha)
    M = to_matrix(op, N).to_numpy()
    M.setflags(write=False)
    return M


def generator_matrix(family: str, N: int, alpha: AlphaParam) -> np.ndarray:
    """Truncated matrix of the Lie algebra generator of ``family`` (complex doubles)."""
    return _generator_matrix_cached(family, N, alpha)


# -- A2 ------------------------------------------------------------------------

@dataclass
class A2Result:
    vector: NumericFockVector
    band_norm: float
    tolerance: float

    @property
    def truncated_ok(self) -> bool:
        return self.band_norm <= self.tolerance


def act_A2_expm(
    t: float,
    f: NumericFockVector,
    alpha: AlphaParam,
    N: int | None = None,
    padding: int = 16,
    band_tol: float = 1e-8,
) -> A2Result:
    """Apply ``exp(t rho(H2))`` through the exponential of a truncated matrix.

    The generator is assembled on degrees ``<= N + padding`` and conjugated by
    the square roots of the S-weights before exponentiating, which keeps the
    matrix balanced (for alpha < 0 it is then real antisymmetric).  The result
    is cut back to degree N; ``band_norm`` is the fraction of the squared S-norm
    that landed in the padding band, an a-posteriori measure of truncation error.
    """
    if N is None:
        N = max(f.degree, 0) + padding
    if f.degree > N:
        raise ValueError(f"vector degree {f.degree} exceeds cutoff N={N}")
    big = N + padding
    if float(t) == 0.0:
        return A2Result(f.resized(N), 0.0, band_tol)
    d = np.sqrt(S_weights(big, alpha))
    M = generator_matrix("A2", big, alpha)
    Mb = (M * d[:, None]) / d[None, :]
    g = d * f.resized(big).coeffs
    h = expm(float(t) * Mb) @ g
    n_in = _dim(N)
    total = float(np.vdot(h, h).real)
    band = float(np.vdot(h[n_in:], h[n_in:]).real) / total if total else 0.0
    if band > band_tol:
        warnings.warn(
            f"A2({t}) truncation: relative mass {band:.3e} in padding band above degree {N}",
            TruncationWarning,
            stacklevel=2,
        )
    return A2Result(NumericFockVector(N, h[:n_in] / d[:n_in]), band, band_tol)


# -- words -----------------------------------------------------------------

_WORD_TOKEN = re.compile(r"\s*([KA][123])\s*\(\s*([-+]?[0-9.eE+\-/]+)\s*\)\s*")


def parse_word(text: str) -> list[OneParamElement]:
    """Parse ``"K2(0.3) A3(-1.2) A1(0.5)"`` (rational ``p/q`` parameters allowed)."""
    out, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _WORD_TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse group word at {text[pos:]!r}")
        fam, arg = m.groups()
        try:
            val = float(Fraction(arg)) if "/" in arg else float(arg)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad parameter {arg!r}") from exc
        out.append(OneParamElement(fam, val))
        pos = m.end()
    return out


def act_word(
    word: Sequence[OneParamElement] | str,
    f: NumericFockVector,
    alpha: AlphaParam,
    padding: int = 16,
) -> NumericFockVector:
    """Apply the product ``rho0(e1) rho0(e2) ... rho0(en)`` to ``f``.

    As an operator product, the last element acts first.  A2 factors go
    through :func:`act_A2_expm`, whose truncation warnings propagate.
    """
    if isinstance(word, str):
        word = parse_word(word)
    v = f
    for e in reversed(list(word)):
        if e.family == "A2":
            v = act_A2_expm(e.t, v, alpha, padding=padding).vector
        else:
            v = act_closed_form(e, v, alpha)
    return v


def word_for_g0(g: G0Element | Iterable) -> list[OneParamElement]:
    """KAK word ``K_i(t1) A_i(a) K_i(t2)`` for each of the three factors of ``g``."""
    if not isinstance(g, G0Element):
        g = G0Element(tuple(g))
    word = []
    for i, fac in enumerate(g.factors, start=1):
        t1, a, t2 = cartan_decompose(fac)
        word += [OneParamElement(f"K{i}", t1), OneParamElement(f"A{i}", a), OneParamElement(f"K{i}", t2)]
    return [e for e in word if e.t != 0.0]


# -- A2 for alpha > 0: Laguerre eigenbasis --------------------------------------

def laguerre_coeffs(k: int, a) -> list[Fraction]:
    """Coefficients in x of ``L_k^{(a)}(2x)`` from the terminating hypergeometric sum

        L_k^{(a)}(2x) = (-1)^k / k! * sum_i (-1)^i / i! (-a-k)_i (-k)_i (2x)^(k-i).
    """
    a = Fraction(a)
    out = [Fraction(0)] * (k + 1)
    pref = Fraction((-1) ** k, math.factorial(k))
    for i in range(k + 1):
        term = pref * Fraction((-1) ** i, math.factorial(i)) * pochhammer(-a - k, i) * pochhammer(-k, i)
        out[k - i] += term * 2 ** (k - i)
    return out


def _exp_neg_times(poly: list[Fraction], N: int) -> list[Fraction]:
    """Taylor coefficients up to degree N of ``exp(-x) * poly(x)``."""
    e = [Fraction((-1) ** j, math.factorial(j)) for j in range(N + 1)]
    out = [Fraction(0)] * (N + 1)
    for i, c in enumerate(poly):
        if not c:
            continue
        for j in range(N + 1 - i):
            out[i + j] += c * e[j]
    return out


def laguerre_eigenfunction(k: int, family: int, alpha: AlphaParam, N: int) -> FockVector:
    """Exact truncation to degree <= N of the A2 eigenfunctions

    family 1: exp(-z1) L_k^{(-1-a)}(2 z1),      family 2: the same times z2,
    family 3/4: exp(-z1) z3 (or z4) L_{k-1}^{(-a)}(2 z1)  (k >= 1).
    """
    a = alpha.value
    if family in (1, 2):
        series = _exp_neg_times(laguerre_coeffs(k, -1 - a), N)
    else:
        if k < 1:
            raise ValueError("odd Laguerre eigenfunctions start at k = 1")
        series = _exp_neg_times(laguerre_coeffs(k - 1, -a), N)
    if family == 1:
        return FockVector({(1, m): c for m, c in enumerate(series)})
    # z1^m z_j has degree m + 1
    return FockVector({(family, m + 1): c for m, c in enumerate(series) if m + 1 <= N})


def laguerre_eigenvalue(k: int, family: int, alpha: AlphaParam) -> Fraction:
    a = alpha.value
    return 2 * k - a if family in (1, 2) else 2 * k - a - 1


def act_A2_laguerre(t: float, g: dict, alpha: AlphaParam) -> dict:
    """A2 in the Laguerre basis (alpha > 0): ``g[(i, k)] -> exp(t * eigenvalue) g[(i, k)]``.

    ``g`` maps ``(family, k)`` to coefficients; families 1, 2 use k >= 0 and
    families 3, 4 use k >= 1, matching :func:`laguerre_eigenfunction`.
    """
    if alpha.value <= 0:
        raise ValueError("the Laguerre expansion needs alpha > 0")
    out = {}
    for (i, k), c in g.items():
        if i in (3, 4) and k < 1:
            raise ValueError("odd Laguerre coefficients start at k = 1")
        out[(i, k)] = c * math.exp(float(t) * float(laguerre_eigenvalue(k, i, alpha)))
    return out
