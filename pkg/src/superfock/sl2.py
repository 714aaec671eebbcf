"""SL(2) group elements: the K and A one-parameter subgroups, the closed-form
exponential of sl(2), and the KAK (Cartan) decomposition."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

__all__ = [
    "GroupElementSL2",
    "G0Element",
    "NotUnimodularError",
    "K",
    "A",
    "exp_sl2",
    "cartan_decompose",
    "cartan_compose",
]

FLOAT_DET_TOL = 1e-12


class NotUnimodularError(ValueError):
    pass


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction))


@dataclass(frozen=True)
class GroupElementSL2:
    """A 2x2 matrix of determinant one acting on the ``factor``-th copy of C^2.

    Entries are either all exact (``int``/``Fraction``) or floats; exact
    matrices must have determinant exactly 1, float ones within 1e-12.
    """

    entries: tuple[tuple, tuple]
    factor: int = 1

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError("SL(2) element needs a 2x2 matrix")
        if self.factor not in (1, 2, 3):
            raise ValueError("factor index must be 1, 2 or 3")
        flat = [x for r in rows for x in r]
        if all(_is_exact(x) for x in flat):
            rows = tuple(tuple(Fraction(x) for x in r) for r in rows)
            det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
            if det != 1:
                raise NotUnimodularError(f"determinant {det} != 1")
        else:
            rows = tuple(tuple(float(x) for x in r) for r in rows)
            det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
            if abs(det - 1.0) > FLOAT_DET_TOL:
                raise NotUnimodularError(f"determinant {det!r} differs from 1")
        object.__setattr__(self, "entries", rows)

    @property
    def exact(self) -> bool:
        return isinstance(self.entries[0][0], Fraction)

    def inverse(self) -> "GroupElementSL2":
        (a, b), (c, d) = self.entries
        return GroupElementSL2(((d, -b), (-c, a)), self.factor)

    def __matmul__(self, other: "GroupElementSL2") -> "GroupElementSL2":
        (a, b), (c, d) = self.entries
        (e, f), (g, h) = other.entries
        return GroupElementSL2(
            ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h)), self.factor
        )

    def to_numpy(self) -> np.ndarray:
        return np.array(self.entries, dtype=float)

    @classmethod
    def identity(cls, factor: int = 1) -> "GroupElementSL2":
        return cls(((1, 0), (0, 1)), factor)


@dataclass(frozen=True)
class G0Element:
    """An element of SL(2) x SL(2) x SL(2)."""

    factors: tuple[GroupElementSL2, GroupElementSL2, GroupElementSL2]

    def __post_init__(self):
        fs = tuple(
            f if isinstance(f, GroupElementSL2) else GroupElementSL2(f, i + 1)
            for i, f in enumerate(self.factors)
        )
        if len(fs) != 3:
            raise ValueError("G0 element has exactly three SL(2) factors")
        fs = tuple(GroupElementSL2(f.entries, i + 1) for i, f in enumerate(fs))
        object.__setattr__(self, "factors", fs)

    @classmethod
    def of(cls, m1: Sequence, m2: Sequence, m3: Sequence) -> "G0Element":
        return cls((m1, m2, m3))

    @classmethod
    def identity(cls) -> "G0Element":
        return cls(tuple(GroupElementSL2.identity(i) for i in (1, 2, 3)))

    def __matmul__(self, other: "G0Element") -> "G0Element":
        return G0Element(tuple(a @ b for a, b in zip(self.factors, other.factors)))

    def inverse(self) -> "G0Element":
        return G0Element(tuple(f.inverse() for f in self.factors))


def K(theta: float) -> np.ndarray:
    """Rotation ``[[cos, -sin], [sin, cos]]`` = exp(theta (F - E))."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def A(a: float) -> np.ndarray:
    """Diagonal ``diag(e^a, e^-a)`` = exp(a H)."""
    return np.array([[math.exp(a), 0.0], [0.0, math.exp(-a)]])


def exp_sl2(k: float, a: float, l: float) -> np.ndarray:
    """Closed-form exponential of ``X = k(F-E) + a H + l(F+E)``.

    With ``r^2 = a^2 + l^2 - k^2`` one has ``X^2 = r^2 I``, so
    ``exp(X) = C(r^2) I + S(r^2) X`` where ``C = cosh r`` and ``S = sinh(r)/r``
    for ``r^2 > 0``, the trigonometric versions for ``r^2 < 0``, and
    ``C = S = 1`` (``exp X = I + X``) when ``r^2 = 0``.
    """
    X = np.array([[a, l - k], [l + k, -a]], dtype=float)
    r2 = a * a + l * l - k * k
    if r2 > 0:
        r = math.sqrt(r2)
        c, s = math.cosh(r), math.sinh(r) / r
    elif r2 < 0:
        r = math.sqrt(-r2)
        c, s = math.cos(r), math.sin(r) / r
    else:
        c, s = 1.0, 1.0
    return c * np.eye(2) + s * X


def _wrap(theta: float) -> float:
    """Map an angle into (-pi, pi]."""
    t = math.remainder(theta, 2 * math.pi)
    return math.pi if t == -math.pi else t


def cartan_decompose(g, tol: float = FLOAT_DET_TOL) -> tuple[float, float, float]:
    """Write ``g = K(theta1) A(a) K(theta2)`` with ``a >= 0``.

    ``g^T g = K(theta2)^T A(a)^2 K(theta2)`` is symmetric positive definite;
    its eigen-decomposition gives ``theta2`` and ``a``, and
    ``K(theta1) = g K(theta2)^T A(-a)``.  When ``a == 0`` the second angle is
    fixed to 0.
    """
    g = g.to_numpy() if isinstance(g, GroupElementSL2) else np.asarray(g, dtype=float)
    if g.shape != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    det = g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]
    if abs(det - 1.0) > tol * max(1.0, float(np.abs(g).max()) ** 2):
        raise NotUnimodularError(f"determinant {det!r} differs from 1")
    m = g.T @ g
    p, q, s = m[0, 0], m[0, 1], m[1, 1]
    # eigenvalues e^{+-2a}: their half-difference is sinh(2a)
    half_diff = 0.5 * (p - s)
    rad = math.hypot(half_diff, q)
    a = 0.5 * math.asinh(rad)
    if a == 0.0:
        theta2 = 0.0
    else:
        # the e^{2a} eigenvector is the first row of K(theta2), (cos t2, -sin t2)
        phi = 0.5 * math.atan2(q, half_diff)
        theta2 = -phi
    k2 = K(theta2)
    k1 = g @ k2.T @ A(-a)
    theta1 = math.atan2(k1[1, 0], k1[0, 0])
    return _wrap(theta1), a, _wrap(theta2)


def cartan_compose(theta1: float, a: float, theta2: float) -> np.ndarray:
    return K(theta1) @ A(a) @ K(theta2)
