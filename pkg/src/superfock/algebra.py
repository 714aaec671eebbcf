"""The (9|8)-dimensional Lie superalgebra D(2,1; alpha).

The even part is three commuting copies of sl(2) acting on C^2 x C^2 x C^2;
the odd part is the triple tensor product C^2 (x) C^2 (x) C^2 with basis
``u_{e1 e2 e3}``.  The bracket of two odd elements is the symmetric map

    p(x1 x2 x3, y1 y2 y3) = s1 psi(x2,y2) psi(x3,y3) p(x1,y1)
                          + s2 psi(x3,y3) psi(x1,y1) p(x2,y2)
                          + s3 psi(x1,y1) psi(x2,y2) p(x3,y3)

with ``p(x, y) z = psi(y, z) x - psi(z, x) y`` and the weights
``(s1, s2, s3) = ((1+alpha)/2, -1/2, -alpha/2)``.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .report import VerificationReport
from .scalars import ZERO, AlphaParam, GaussianRational, as_scalar
from .sl2 import G0Element

__all__ = [
    "BASIS",
    "EVEN_BASIS",
    "ODD_BASIS",
    "GRADING",
    "AlgebraElement",
    "StructureConstants",
    "basis_element",
    "parity",
    "build_structure_constants",
    "bracket",
    "check_super_jacobi",
    "check_super_antisymmetry",
    "check_grading",
    "adjoint_action",
]

SIGNS = ("+", "-")
EVEN_BASIS = tuple(f"{x}{i}" for i in (1, 2, 3) for x in ("E", "F", "H"))
ODD_BASIS = tuple("u" + "".join(s) for s in itertools.product(SIGNS, repeat=3))
BASIS = EVEN_BASIS + ODD_BASIS
_INDEX = {name: n for n, name in enumerate(BASIS)}

# ad(H2 + H3) eigenvalue sign of each basis element
GRADING = {
    "+": ("E2", "E3", "u-++", "u+++"),
    "-": ("F2", "F3", "u+--", "u---"),
    "0": ("E1", "F1", "H1", "H2", "H3", "u-+-", "u++-", "u+-+", "u--+"),
}
_DEGREE = {name: {"+": 1, "-": -1, "0": 0}[g] for g, names in GRADING.items() for name in names}


def parity(name: str) -> int:
    if name not in _INDEX:
        raise KeyError(f"unknown basis element {name!r}")
    return 1 if name.startswith("u") else 0


class AlgebraElement:
    """A vector in D(2,1; alpha) given by its coordinates on ``BASIS``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[str, object] | None = None):
        out = {}
        for name, v in (coeffs or {}).items():
            if name not in _INDEX:
                raise KeyError(f"unknown basis element {name!r}")
            v = as_scalar(v)
            if v:
                out[name] = out.get(name, ZERO) + v
        self._c = {k: v for k, v in out.items() if v}

    @classmethod
    def _clean(cls, d: dict) -> "AlgebraElement":
        obj = object.__new__(cls)
        obj._c = {k: v for k, v in d.items() if v}
        return obj

    def __getitem__(self, name: str) -> GaussianRational:
        return self._c.get(name, ZERO)

    def items(self):
        return sorted(self._c.items(), key=lambda kv: _INDEX[kv[0]])

    def support(self) -> tuple[str, ...]:
        return tuple(k for k, _ in self.items())

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self._c == other._c
        if isinstance(other, int) and other == 0:
            return not self._c
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out.get(k, ZERO) + v
        return AlgebraElement._clean(out)

    def __neg__(self):
        return AlgebraElement._clean({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        s = as_scalar(s)
        return AlgebraElement._clean({k: v * s for k, v in self._c.items()})

    __rmul__ = __mul__

    @property
    def parity(self) -> int | None:
        ps = {parity(k) for k in self._c}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def __repr__(self):
        return f"AlgebraElement({self})"

    def __str__(self):
        if not self._c:
            return "0"
        return " + ".join(f"({v})*{k}" for k, v in self.items())


def basis_element(name: str) -> AlgebraElement:
    return AlgebraElement({name: 1})


# -- sl(2) and the two-dimensional modules ---------------------------------
# a 2x2 matrix [[h, e], [f, -h]] is e*E + f*F + h*H
_SL2_MATRIX = {
    "E": ((0, 1), (0, 0)),
    "F": ((0, 0), (1, 0)),
    "H": ((1, 0), (0, -1)),
}


def _mat_to_sl2(m, i: int) -> dict:
    (h, e), (f, h2) = m
    if h + h2:
        raise ArithmeticError("matrix is not traceless")
    return {f"E{i}": e, f"F{i}": f, f"H{i}": h}


def _mat_mul(x, y):
    return tuple(
        tuple(sum(x[r][k] * y[k][c] for k in range(2)) for c in range(2)) for r in range(2)
    )


def _psi(x: int, y: int) -> int:
    """Symplectic form on C^2 with psi(u+, u-) = 1; index 0 is u+, 1 is u-."""
    return ((0, 1), (-1, 0))[x][y]


def _p_matrix(x: int, y: int):
    """The matrix of z -> psi(y, z) x - psi(z, x) y on C^2 (columns are images of u+, u-)."""
    cols = []
    for z in (0, 1):
        v = [0, 0]
        v[x] += _psi(y, z)
        v[y] -= _psi(z, x)
        cols.append(v)
    return tuple(tuple(cols[c][r] for c in range(2)) for r in range(2))


def _odd_index(name: str) -> tuple[int, int, int]:
    return tuple(SIGNS.index(ch) for ch in name[1:])


def _odd_name(idx: Iterable[int]) -> str:
    return "u" + "".join(SIGNS[i] for i in idx)


@dataclass(frozen=True)
class StructureConstants:
    """The full bracket table on ``BASIS``, stored as sparse rows of Fractions."""

    alpha: AlphaParam
    sigmas: tuple[Fraction, Fraction, Fraction]
    table: Mapping[tuple[str, str], Mapping[str, Fraction]] = field(repr=False)

    def entry(self, x: str, y: str) -> AlgebraElement:
        return AlgebraElement(self.table.get((x, y), {}))

    def to_json(self) -> str:
        rows = {}
        for (x, y), out in sorted(self.table.items(), key=lambda kv: (_INDEX[kv[0][0]], _INDEX[kv[0][1]])):
            if out:
                rows[f"[{x},{y}]"] = {k: str(as_scalar(v)) for k, v in out.items()}
        return json.dumps(
            {
                "alpha": str(self.alpha.value),
                "sigmas": [str(s) for s in self.sigmas],
                "basis": list(BASIS),
                "brackets": rows,
            },
            indent=2,
        )


def _even_even(x: str, y: str) -> dict:
    i, j = int(x[1]), int(y[1])
    if i != j:
        return {}
    mx, my = _SL2_MATRIX[x[0]], _SL2_MATRIX[y[0]]
    a, b = _mat_mul(mx, my), _mat_mul(my, mx)
    comm = tuple(tuple(a[r][c] - b[r][c] for c in range(2)) for r in range(2))
    return _mat_to_sl2(comm, i)


def _even_odd(x: str, y: str) -> dict:
    i = int(x[1]) - 1
    m = _SL2_MATRIX[x[0]]
    idx = list(_odd_index(y))
    out: dict = {}
    col = idx[i]
    for r in range(2):
        if m[r][col]:
            new = list(idx)
            new[i] = r
            out[_odd_name(new)] = out.get(_odd_name(new), 0) + m[r][col]
    return out


def _odd_odd(x: str, y: str, sigmas) -> dict:
    xi, yi = _odd_index(x), _odd_index(y)
    out: dict = {}
    for k in range(3):
        j, l = [m for m in range(3) if m != k]
        w = sigmas[k] * _psi(xi[j], yi[j]) * _psi(xi[l], yi[l])
        if not w:
            continue
        for name, v in _mat_to_sl2(_p_matrix(xi[k], yi[k]), k + 1).items():
            if v:
                out[name] = out.get(name, 0) + w * v
    return out


def build_structure_constants(alpha: AlphaParam | Fraction | str, sigmas=None) -> StructureConstants:
    """Bracket table of D(2,1; alpha).

    ``sigmas`` overrides the three weights; it exists to show that the Jacobi
    identity fails once they no longer sum to zero.
    """
    if not isinstance(alpha, AlphaParam):
        alpha = AlphaParam(Fraction(alpha))
    sig = tuple(Fraction(s) for s in (sigmas if sigmas is not None else alpha.sigmas))
    table: dict = {}
    for x in BASIS:
        for y in BASIS:
            px, py = parity(x), parity(y)
            if not px and not py:
                out = _even_even(x, y)
            elif not px:
                out = _even_odd(x, y)
            elif not py:
                out = {k: -v for k, v in _even_odd(y, x).items()}
            else:
                out = _odd_odd(x, y, sig)
            table[(x, y)] = {k: Fraction(v) for k, v in out.items() if v}
    return StructureConstants(alpha, sig, table)


def bracket(sc: StructureConstants, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    acc: dict = {}
    for a, ca in x._c.items():
        for b, cb in y._c.items():
            row = sc.table[(a, b)]
            if not row:
                continue
            c = ca * cb
            for k, v in row.items():
                acc[k] = acc.get(k, ZERO) + c * v
    return AlgebraElement._clean(acc)


def _basis_bracket(sc: StructureConstants, x: str, y: str) -> dict:
    return sc.table[(x, y)]


def _bracket_sparse(sc, u: dict, v: dict) -> dict:
    acc: dict = {}
    for a, ca in u.items():
        for b, cb in v.items():
            for k, w in sc.table[(a, b)].items():
                acc[k] = acc.get(k, 0) + ca * cb * w
    return {k: w for k, w in acc.items() if w}


def _finish(name, alpha, defect, witness, t0, tol=0, anchor="", n=0) -> VerificationReport:
    return VerificationReport.from_defect(
        name,
        alpha=str(alpha.value),
        N=n,
        max_defect=defect,
        tolerance=tol,
        witness=witness,
        elapsed_ms=int((time.perf_counter() - t0) * 1000),
        anchor=anchor,
    )


def check_super_jacobi(sc: StructureConstants) -> VerificationReport:
    """Graded Jacobi identity on all ordered basis triples.

    ``[x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]``; the reported defect is
    the largest absolute coefficient of the difference (exact, so 0 or not).
    """
    t0 = time.perf_counter()
    worst, witness = Fraction(0), None
    for x in BASIS:
        for y in BASIS:
            xy = sc.table[(x, y)]
            sgn = -1 if parity(x) and parity(y) else 1
            for z in BASIS:
                lhs = _bracket_sparse(sc, {x: 1}, sc.table[(y, z)])
                r1 = _bracket_sparse(sc, xy, {z: 1})
                r2 = _bracket_sparse(sc, {y: 1}, sc.table[(x, z)])
                keys = set(lhs) | set(r1) | set(r2)
                for k in keys:
                    d = abs(lhs.get(k, 0) - r1.get(k, 0) - sgn * r2.get(k, 0))
                    if d > worst:
                        worst, witness = d, {"x": x, "y": y, "z": z, "component": k}
    return _finish("algebra.super_jacobi", sc.alpha, worst, witness, t0, anchor="Jacobi identity; sigma1+sigma2+sigma3=0")


def check_super_antisymmetry(sc: StructureConstants) -> VerificationReport:
    t0 = time.perf_counter()
    worst, witness = Fraction(0), None
    for x in BASIS:
        for y in BASIS:
            s = 1 if parity(x) and parity(y) else -1
            a, b = sc.table[(x, y)], sc.table[(y, x)]
            for k in set(a) | set(b):
                d = abs(a.get(k, 0) - s * b.get(k, 0))
                if d > worst:
                    worst, witness = d, {"x": x, "y": y, "component": k}
    return _finish("algebra.super_antisymmetry", sc.alpha, worst, witness, t0, anchor="super-antisymmetry of the bracket")


def check_grading(sc: StructureConstants) -> VerificationReport:
    """[g_i, g_j] lies in g_{i+j} (zero when |i+j| > 1), and ad(H2+H3) acts by 2i on g_i."""
    t0 = time.perf_counter()
    bad = 0
    witness = None
    h = {"H2": 1, "H3": 1}
    for x in BASIS:
        ev = _bracket_sparse(sc, h, {x: 1})
        expected = {x: 2 * _DEGREE[x]} if _DEGREE[x] else {}
        if ev != expected:
            bad += 1
            witness = witness or {"x": x, "ad(H2+H3)x": {k: str(v) for k, v in ev.items()}}
        for y in BASIS:
            target = _DEGREE[x] + _DEGREE[y]
            for k in sc.table[(x, y)]:
                if _DEGREE[k] != target:
                    bad += 1
                    witness = witness or {"x": x, "y": y, "component": k}
    return _finish("algebra.three_grading", sc.alpha, Fraction(bad), witness, t0, anchor="three-grading by ad(H2+H3)")


def adjoint_action(g: G0Element, x: AlgebraElement) -> AlgebraElement:
    """Ad(A1, A2, A3): conjugation on each sl(2) and A1 (x) A2 (x) A3 on the odd part."""
    if not isinstance(g, G0Element):
        g = G0Element(tuple(g))
    if not all(f.exact for f in g.factors):
        raise TypeError("adjoint_action needs exact rational matrices")
    mats = [f.entries for f in g.factors]
    invs = [f.inverse().entries for f in g.factors]
    acc: dict = {}
    for name, c in x._c.items():
        if parity(name) == 0:
            i = int(name[1])
            m = _mat_mul(_mat_mul(mats[i - 1], _SL2_MATRIX[name[0]]), invs[i - 1])
            for k, v in _mat_to_sl2(m, i).items():
                if v:
                    acc[k] = acc.get(k, ZERO) + c * v
        else:
            idx = _odd_index(name)
            for new in itertools.product((0, 1), repeat=3):
                w = Fraction(1)
                for f in range(3):
                    w *= mats[f][new[f]][idx[f]]
                    if not w:
                        break
                if w:
                    k = _odd_name(new)
                    acc[k] = acc.get(k, ZERO) + c * w
    return AlgebraElement._clean(acc)
