"""The compact Lie algebra sp(2) in split coordinates.

An element is a vector (lam, u, v, w) with lam a real scalar and u, v, w
in R^3.  lam spans the isotropy line h of the circle subgroup; its
orthogonal complement m = {lam = 0} is the 9-dimensional tangent model of
the homogeneous space.  The bracket in these coordinates is

    lam'' = v.w' - v'.w
    u''   = u x u' + v x v' + w x w'
    v''   = u x v' - u' x v - lam w' + lam' w
    w''   = u x w' - u' x w + lam v' - lam' v

The lam-action terms in v'' and w'' are forced by the Jacobi identity and
confirmed by the quaternionic matrix model below.

Every element also has an independent matrix representation as a 2x2
quaternionic anti-Hermitian matrix

    (1/2) [[u + w,  v + lam],
           [v - lam, u - w]]

where a 3-vector stands for the pure-imaginary quaternion with those
components.  The commutator in that model is the oracle against which the
coordinate bracket is verified; it shares no code with the fast path (the
matrix side is plain Python tuples, the coordinate side is numpy).
"""

from __future__ import annotations

import math
from typing import Iterable, NamedTuple

import numpy as np

__all__ = [
    "SpElement",
    "Quaternion",
    "QuatMatrix",
    "E1",
    "E2",
    "E3",
    "bracket",
    "bracket_oracle",
    "bi_inner",
    "bi_inner_trace_form",
    "norm",
    "ad_h",
    "project_m",
    "project_h",
    "to_matrix",
    "from_matrix",
]

E1 = np.array([1.0, 0.0, 0.0])
E2 = np.array([0.0, 1.0, 0.0])
E3 = np.array([0.0, 0.0, 1.0])
for _e in (E1, E2, E3):
    _e.setflags(write=False)


class SpElement:
    """One element of sp(2), stored as a flat read-only float64 array.

    Layout: index 0 is lam, 1:4 is u, 4:7 is v, 7:10 is w.
    """

    __slots__ = ("data",)

    def __init__(self, lam, u, v, w):
        arr = np.empty(10)
        arr[0] = lam
        arr[1:4] = u
        arr[4:7] = v
        arr[7:10] = w
        arr.setflags(write=False)
        self.data = arr

    @classmethod
    def from_array(cls, arr) -> "SpElement":
        arr = np.asarray(arr, dtype=float)
        if arr.shape != (10,):
            raise ValueError(f"expected shape (10,), got {arr.shape}")
        out = object.__new__(cls)
        copy = arr.copy()
        copy.setflags(write=False)
        out.data = copy
        return out

    @classmethod
    def zero(cls) -> "SpElement":
        return cls.from_array(np.zeros(10))

    @property
    def lam(self) -> float:
        return float(self.data[0])

    @property
    def u(self) -> np.ndarray:
        return self.data[1:4]

    @property
    def v(self) -> np.ndarray:
        return self.data[4:7]

    @property
    def w(self) -> np.ndarray:
        return self.data[7:10]

    def in_m(self, tol: float = 1e-12) -> bool:
        """True if the element lies in the tangent model m (lam = 0)."""
        return abs(self.data[0]) <= tol * max(1.0, float(np.abs(self.data).max()))

    def in_h(self, tol: float = 1e-12) -> bool:
        """True if the element lies in the isotropy line h (u = v = w = 0)."""
        scale = max(1.0, float(np.abs(self.data).max()))
        return float(np.abs(self.data[1:]).max(initial=0.0)) <= tol * scale

    def __add__(self, other: "SpElement") -> "SpElement":
        return SpElement.from_array(self.data + other.data)

    def __sub__(self, other: "SpElement") -> "SpElement":
        return SpElement.from_array(self.data - other.data)

    def __neg__(self) -> "SpElement":
        return SpElement.from_array(-self.data)

    def __mul__(self, scalar: float) -> "SpElement":
        return SpElement.from_array(self.data * float(scalar))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return (
            f"SpElement(lam={self.lam!r}, u={self.u.tolist()!r}, "
            f"v={self.v.tolist()!r}, w={self.w.tolist()!r})"
        )


# ---- coordinate bracket (fast path) ----


def _bracket_arr(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Bracket on raw (10,) arrays.  Unrolled for speed in jet loops."""
    la, ua1, ua2, ua3, va1, va2, va3, wa1, wa2, wa3 = a.tolist()
    lb, ub1, ub2, ub3, vb1, vb2, vb3, wb1, wb2, wb3 = b.tolist()
    return np.array(
        [
            va1 * wb1 + va2 * wb2 + va3 * wb3 - vb1 * wa1 - vb2 * wa2 - vb3 * wa3,
            # u x u' + v x v' + w x w'
            ua2 * ub3 - ua3 * ub2 + va2 * vb3 - va3 * vb2 + wa2 * wb3 - wa3 * wb2,
            ua3 * ub1 - ua1 * ub3 + va3 * vb1 - va1 * vb3 + wa3 * wb1 - wa1 * wb3,
            ua1 * ub2 - ua2 * ub1 + va1 * vb2 - va2 * vb1 + wa1 * wb2 - wa2 * wb1,
            # u x v' - u' x v - lam w' + lam' w
            ua2 * vb3 - ua3 * vb2 - ub2 * va3 + ub3 * va2 - la * wb1 + lb * wa1,
            ua3 * vb1 - ua1 * vb3 - ub3 * va1 + ub1 * va3 - la * wb2 + lb * wa2,
            ua1 * vb2 - ua2 * vb1 - ub1 * va2 + ub2 * va1 - la * wb3 + lb * wa3,
            # u x w' - u' x w + lam v' - lam' v
            ua2 * wb3 - ua3 * wb2 - ub2 * wa3 + ub3 * wa2 + la * vb1 - lb * va1,
            ua3 * wb1 - ua1 * wb3 - ub3 * wa1 + ub1 * wa3 + la * vb2 - lb * va2,
            ua1 * wb2 - ua2 * wb1 - ub1 * wa2 + ub2 * wa1 + la * vb3 - lb * va3,
        ]
    )


def bracket(x: SpElement, y: SpElement) -> SpElement:
    """Lie bracket [x, y]."""
    return SpElement.from_array(_bracket_arr(x.data, y.data))


def bi_inner(x: SpElement, y: SpElement) -> float:
    """Bi-invariant inner product, weight 1 on each of the four factors."""
    return float(x.data @ y.data)


def norm(x: SpElement) -> float:
    """Norm induced by the bi-invariant inner product."""
    return float(np.sqrt(x.data @ x.data))


def _ad_h_arr(angle: float, a: np.ndarray) -> np.ndarray:
    c = math.cos(2.0 * angle)
    s = math.sin(2.0 * angle)
    out = a.copy()
    out[4:7] = c * a[4:7] + s * a[7:10]
    out[7:10] = -s * a[4:7] + c * a[7:10]
    return out


def ad_h(angle: float, x: SpElement) -> SpElement:
    """Isotropy circle action on m: u fixed, (v, w) rotated at double speed.

    Only defined on m; raises if x has a lam component.
    """
    if not x.in_m(tol=1e-9):
        raise ValueError("ad_h is only defined on m (lam must vanish)")
    return SpElement.from_array(_ad_h_arr(angle, x.data))


def project_m(x: SpElement) -> SpElement:
    """Orthogonal projection onto m (zero the lam component)."""
    arr = x.data.copy()
    arr[0] = 0.0
    return SpElement.from_array(arr)


def project_h(x: SpElement) -> SpElement:
    """Orthogonal projection onto h (keep only the lam component)."""
    arr = np.zeros(10)
    arr[0] = x.data[0]
    return SpElement.from_array(arr)


# ---- quaternionic matrix oracle (independent slow path) ----


class Quaternion(NamedTuple):
    """Quaternion with the orientation ij = k, jk = i, ki = j."""

    w: float
    x: float
    y: float
    z: float

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        w1, x1, y1, z1 = self
        w2, x2, y2, z2 = other
        return Quaternion(
            w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        )

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def is_pure_imaginary(self, tol: float = 1e-10) -> bool:
        scale = max(1.0, abs(self.w), abs(self.x), abs(self.y), abs(self.z))
        return abs(self.w) <= tol * scale


_QZERO = Quaternion(0.0, 0.0, 0.0, 0.0)


class QuatMatrix(NamedTuple):
    """2x2 quaternionic matrix, entries row by row: a b / c d."""

    a: Quaternion
    b: Quaternion
    c: Quaternion
    d: Quaternion

    def __matmul__(self, other: "QuatMatrix") -> "QuatMatrix":
        return QuatMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __sub__(self, other: "QuatMatrix") -> "QuatMatrix":
        return QuatMatrix(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def commutator(self, other: "QuatMatrix") -> "QuatMatrix":
        return (self @ other) - (other @ self)

    def minus_re_trace(self) -> float:
        return -(self.a.w + self.d.w)

    def is_anti_hermitian(self, tol: float = 1e-10) -> bool:
        scale = max(1.0, *(abs(comp) for q in self for comp in q))
        if abs(self.a.w) > tol * scale or abs(self.d.w) > tol * scale:
            return False
        residual = self.c + self.b.conjugate()
        return all(abs(comp) <= tol * scale for comp in residual)


def to_matrix(x: SpElement) -> QuatMatrix:
    """Matrix form (1/2)[[u+w, v+lam], [v-lam, u-w]].

    The placement of lam in the off-diagonal entries is the one orientation
    for which the matrix commutator reproduces the coordinate bracket
    (checked exhaustively by the oracle equivalence suite).
    """
    lam, u, v, w = x.lam, x.u, x.v, x.w
    return QuatMatrix(
        Quaternion(0.0, *((u + w) / 2.0)),
        Quaternion(lam / 2.0, *(v / 2.0)),
        Quaternion(-lam / 2.0, *(v / 2.0)),
        Quaternion(0.0, *((u - w) / 2.0)),
    )


def from_matrix(m: QuatMatrix, tol: float = 1e-10) -> SpElement:
    """Inverse of to_matrix; rejects matrices that are not anti-Hermitian."""
    if not m.is_anti_hermitian(tol=tol):
        raise ValueError("matrix is not anti-Hermitian within tolerance")
    lam = m.b.w - m.c.w
    v = np.array([m.b.x + m.c.x, m.b.y + m.c.y, m.b.z + m.c.z])
    u = np.array([m.a.x + m.d.x, m.a.y + m.d.y, m.a.z + m.d.z])
    w = np.array([m.a.x - m.d.x, m.a.y - m.d.y, m.a.z - m.d.z])
    return SpElement(lam, u, v, w)


def bracket_oracle(x: SpElement, y: SpElement) -> SpElement:
    """Bracket evaluated in the matrix model: from_matrix([X, Y])."""
    return from_matrix(to_matrix(x).commutator(to_matrix(y)), tol=1e-8)


def bi_inner_trace_form(x: SpElement, y: SpElement) -> float:
    """-Re trace(XY) in the matrix model.

    Proportional to bi_inner with one global constant (the suite checks the
    ratio is exactly 2 on every factor).
    """
    return (to_matrix(x) @ to_matrix(y)).minus_re_trace()


def elements_close(x: SpElement, y: SpElement, atol: float = 1e-12) -> bool:
    """Componentwise comparison helper used by the verification suites."""
    return bool(np.all(np.abs(x.data - y.data) <= atol))


def stack_elements(elements: Iterable[SpElement]) -> np.ndarray:
    """Stack elements into an (n, 10) array of raw coordinates."""
    return np.array([e.data for e in elements])
