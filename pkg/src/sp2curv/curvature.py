"""Sectional curvature of the deformed metrics at the base point.

For a plane spanned by X, Y in m and the metric M_t = I + tL, the
unnormalized curvature numerator is the six-term expression

    C(X,Y,t) = -3/4 <[X,Y]_m, [X,Y]_m>
               + 1/2 <[[Y,X]_m, Y]_m, X>
               + 1/2 <[[X,Y]_m, X]_m, Y>
               + <[[X,Y]_h, X], Y>
               + <U(X,Y), U(X,Y)> - <U(X,X), U(Y,Y)>

with every pairing taken in the metric <a,b> = <a, M_t b>_bi and

    U(X,Y) = 1/2 M_t^{-1} ([X, M_t Y] + [Y, M_t X])_m .

The sectional curvature is K = C / S with S = g(X,X) g(Y,Y) - g(X,Y)^2.

Derivatives of C in t at t = 0 are computed by degree-4 truncated power
series (jets): M_t^{-1} enters through its Neumann series, so every
coefficient through t^4 is exact up to rounding, with no step-size error.
For commuting pairs the second derivative collapses to the closed form
C''(0) = 1/2 |[X, LY] - [Y, LX]|^2, which the jet path must reproduce.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .algebra import SpElement, _bracket_arr
from .metric import DeformedMetric, MetricDeformation

__all__ = [
    "TangentPlane",
    "Jet",
    "CurvatureReport",
    "u_tensor",
    "numerator",
    "denominator",
    "sectional_curvature",
    "numerator_jet",
    "second_derivative_closed_form",
    "is_commuting_pair",
    "COMMUTING_REL_TOL",
]

# A pair counts as commuting when |[x,y]| <= tol * |x| * |y|.
COMMUTING_REL_TOL = 1e-9

_JET_ORDER = 4


class TangentPlane:
    """An ordered pair of independent elements of m spanning a 2-plane.

    Independence requires the Gram determinant of the unit-normalized pair
    to exceed 1e-12.
    """

    __slots__ = ("x", "y")

    def __init__(self, x: SpElement, y: SpElement):
        if not (x.in_m(tol=1e-9) and y.in_m(tol=1e-9)):
            raise ValueError("plane vectors must lie in m")
        nx = float(np.sqrt(x.data @ x.data))
        ny = float(np.sqrt(y.data @ y.data))
        if nx == 0.0 or ny == 0.0:
            raise ValueError("plane vectors must be nonzero")
        cosine = float(x.data @ y.data) / (nx * ny)
        if 1.0 - cosine * cosine <= 1e-12:
            raise ValueError("plane vectors are linearly dependent")
        self.x = x
        self.y = y

    def rows(self) -> np.ndarray:
        return np.array([self.x.data, self.y.data])

    def orthonormalized(self) -> "TangentPlane":
        """Gram-Schmidt in the bi-invariant product, x direction first."""
        a = self.x.data / np.sqrt(self.x.data @ self.x.data)
        b = self.y.data - (self.y.data @ a) * a
        b = b / np.sqrt(b @ b)
        return TangentPlane(SpElement.from_array(a), SpElement.from_array(b))

    def basis_changed(self, g) -> "TangentPlane":
        """Recombine the basis by an invertible 2x2 matrix g (rows act)."""
        g = np.asarray(g, dtype=float)
        new = g @ self.rows()
        return TangentPlane(
            SpElement.from_array(new[0]), SpElement.from_array(new[1])
        )

    def rotated(self, angle: float) -> "TangentPlane":
        from .algebra import _ad_h_arr

        return TangentPlane(
            SpElement.from_array(_ad_h_arr(angle, self.x.data)),
            SpElement.from_array(_ad_h_arr(angle, self.y.data)),
        )

    def __repr__(self) -> str:
        return f"TangentPlane(x={self.x!r}, y={self.y!r})"


class CurvatureReport(NamedTuple):
    c_value: float
    s_value: float
    k_value: float


class Jet:
    """Degree-4 truncated power series in the deformation parameter."""

    __slots__ = ("c",)

    def __init__(self, coefficients):
        c = np.zeros(_JET_ORDER + 1)
        coefficients = np.asarray(coefficients, dtype=float)
        c[: coefficients.shape[0]] = coefficients[: _JET_ORDER + 1]
        c.setflags(write=False)
        self.c = c

    @classmethod
    def constant(cls, value: float) -> "Jet":
        return cls([value])

    @classmethod
    def variable(cls) -> "Jet":
        """The jet of t itself."""
        return cls([0.0, 1.0])

    def __getitem__(self, k: int) -> float:
        return float(self.c[k])

    def derivative(self, k: int) -> float:
        """k-th derivative at 0, i.e. k! times the k-th coefficient."""
        return math.factorial(k) * float(self.c[k])

    def evaluate(self, t: float) -> float:
        return float(np.polyval(self.c[::-1], t))

    def __add__(self, other: "Jet") -> "Jet":
        return Jet(self.c + other.c)

    def __sub__(self, other: "Jet") -> "Jet":
        return Jet(self.c - other.c)

    def __neg__(self) -> "Jet":
        return Jet(-self.c)

    def __mul__(self, other):
        if isinstance(other, Jet):
            out = np.zeros(_JET_ORDER + 1)
            for k in range(_JET_ORDER + 1):
                out[k] = float(self.c[: k + 1] @ other.c[k::-1])
            return Jet(out)
        return Jet(self.c * float(other))

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        """Truncated series inverse; requires |c0| > 1e-12."""
        if abs(self.c[0]) <= 1e-12:
            raise ZeroDivisionError("jet has (numerically) vanishing constant term")
        out = np.zeros(_JET_ORDER + 1)
        out[0] = 1.0 / self.c[0]
        for k in range(1, _JET_ORDER + 1):
            out[k] = -float(self.c[1 : k + 1] @ out[k - 1 :: -1]) / self.c[0]
        return Jet(out)

    def __repr__(self) -> str:
        return f"Jet({self.c.tolist()!r})"


# ---- exact evaluation at a fixed t ----


def _project_m_arr(a: np.ndarray) -> np.ndarray:
    out = a.copy()
    out[0] = 0.0
    return out


def u_tensor(m: DeformedMetric, x: SpElement, y: SpElement) -> SpElement:
    """U(X,Y) = 1/2 M^{-1} ([X, MY] + [Y, MX])_m, symmetric in (x, y)."""
    if not (x.in_m(tol=1e-9) and y.in_m(tol=1e-9)):
        raise ValueError("u_tensor arguments must lie in m")
    mx = m._apply_arr(x.data)
    my = m._apply_arr(y.data)
    s = _bracket_arr(x.data, my) + _bracket_arr(y.data, mx)
    return SpElement.from_array(0.5 * m._solve_arr(_project_m_arr(s)))


def numerator(m: DeformedMetric, plane: TangentPlane) -> float:
    """The six-term curvature numerator C(X, Y, t)."""
    x = plane.x.data
    y = plane.y.data
    mx = m._apply_arr(x)
    my = m._apply_arr(y)
    br = _bracket_arr(x, y)
    br_m = _project_m_arr(br)

    t1 = -0.75 * float(br_m @ m._apply_arr(br_m))
    byx_y = _project_m_arr(_bracket_arr(-br_m, y))
    t2 = 0.5 * float(byx_y @ mx)
    bxy_x = _project_m_arr(_bracket_arr(br_m, x))
    t3 = 0.5 * float(bxy_x @ my)
    br_h = np.zeros(10)
    br_h[0] = br[0]
    t4 = float(_bracket_arr(br_h, x) @ my)
    u_xy = 0.5 * m._solve_arr(_project_m_arr(_bracket_arr(x, my) + _bracket_arr(y, mx)))
    t5 = float(u_xy @ m._apply_arr(u_xy))
    u_xx = m._solve_arr(_project_m_arr(_bracket_arr(x, mx)))
    u_yy = m._solve_arr(_project_m_arr(_bracket_arr(y, my)))
    t6 = -float(u_xx @ m._apply_arr(u_yy))
    return t1 + t2 + t3 + t4 + t5 + t6


def denominator(m: DeformedMetric, plane: TangentPlane) -> float:
    """S = g(X,X) g(Y,Y) - g(X,Y)^2, strictly positive on valid planes."""
    x = plane.x.data
    y = plane.y.data
    mx = m._apply_arr(x)
    my = m._apply_arr(y)
    return float((x @ mx) * (y @ my) - (x @ my) ** 2)


def sectional_curvature(m: DeformedMetric, plane: TangentPlane) -> CurvatureReport:
    """K = C / S for the plane at the base point."""
    c = numerator(m, plane)
    s = denominator(m, plane)
    if s <= 0.0:
        raise ValueError("degenerate plane: nonpositive metric Gram determinant")
    return CurvatureReport(c_value=c, s_value=s, k_value=c / s)


# ---- jets of C at t = 0 ----
#
# Element jets are lists of (10,) arrays, one per power of t, kept only to
# the length actually populated (at most 5).


def _ejet_bracket(p, q):
    deg = min(_JET_ORDER, len(p) - 1 + len(q) - 1)
    out = []
    for k in range(deg + 1):
        acc = None
        for i in range(max(0, k - len(q) + 1), min(k, len(p) - 1) + 1):
            term = _bracket_arr(p[i], q[k - i])
            acc = term if acc is None else acc + term
        out.append(acc if acc is not None else np.zeros(10))
    return out


def _ejet_inner(p, q) -> Jet:
    coeff = np.zeros(_JET_ORDER + 1)
    for k in range(_JET_ORDER + 1):
        for i in range(max(0, k - len(q) + 1), min(k, len(p) - 1) + 1):
            coeff[k] += float(p[i] @ q[k - i])
    return Jet(coeff)


def _ejet_metric(lam9: np.ndarray, p):
    """Jet of M_t applied to p: adds t * L to each coefficient."""
    out = [a.copy() for a in p] + [np.zeros(10)]
    out = out[: _JET_ORDER + 1]
    for k in range(1, len(out)):
        out[k][1:] += lam9 @ p[k - 1][1:] if k - 1 < len(p) else 0.0
    return out


def _ejet_metric_inverse(lam_pows, p):
    """Neumann series: (M_t^{-1} p)_k = sum_i (-1)^i L^i p_{k-i}."""
    out = []
    for k in range(_JET_ORDER + 1):
        acc = np.zeros(10)
        for j in range(max(0, k - len(lam_pows) + 1), min(k, len(p) - 1) + 1):
            i = k - j
            term = np.zeros(10)
            term[1:] = lam_pows[i] @ p[j][1:]
            if i == 0:
                term[0] = p[j][0]
            if i % 2 == 1:
                term = -term
            acc += term
        out.append(acc)
    return out


def _numerator_term_jets(d: MetricDeformation, plane: TangentPlane):
    """The six term jets of C about t = 0, in display order."""
    x = plane.x.data
    y = plane.y.data
    lam9 = d.matrix9
    lam_pows = [np.eye(9)]
    for _ in range(_JET_ORDER):
        lam_pows.append(lam9 @ lam_pows[-1])

    def lap(a):
        out = np.zeros(10)
        out[1:] = lam9 @ a[1:]
        return out

    lx = lap(x)
    ly = lap(y)
    mx_jet = [x, lx]
    my_jet = [y, ly]

    br = _bracket_arr(x, y)
    br_m = _project_m_arr(br)
    br_h = np.zeros(10)
    br_h[0] = br[0]

    t1 = -0.75 * _ejet_inner([br_m], _ejet_metric(lam9, [br_m]))
    byx_y = _project_m_arr(_bracket_arr(-br_m, y))
    t2 = 0.5 * _ejet_inner([byx_y], mx_jet)
    bxy_x = _project_m_arr(_bracket_arr(br_m, x))
    t3 = 0.5 * _ejet_inner([bxy_x], my_jet)
    t4 = _ejet_inner([_bracket_arr(br_h, x)], my_jet)

    sum_xy = _ejet_bracket([x], my_jet)
    for k, term in enumerate(_ejet_bracket([y], mx_jet)):
        sum_xy[k] = sum_xy[k] + term
    sum_xy = [_project_m_arr(a) for a in sum_xy]
    u_xy = [0.5 * a for a in _ejet_metric_inverse(lam_pows, sum_xy)]
    t5 = _ejet_inner(u_xy, _ejet_metric(lam9, u_xy))

    u_xx = _ejet_metric_inverse(
        lam_pows, [_project_m_arr(a) for a in _ejet_bracket([x], mx_jet)]
    )
    u_yy = _ejet_metric_inverse(
        lam_pows, [_project_m_arr(a) for a in _ejet_bracket([y], my_jet)]
    )
    t6 = -_ejet_inner(u_xx, _ejet_metric(lam9, u_yy))
    return t1, t2, t3, t4, t5, t6


def numerator_jet(d: MetricDeformation, plane: TangentPlane) -> Jet:
    """Degree-4 jet of C(X, Y, t) at t = 0 for the deformation d.

    Coefficients c0..c4 are exact up to rounding; the k-th derivative of C
    at 0 is k! * c_k.
    """
    t1, t2, t3, t4, t5, t6 = _numerator_term_jets(d, plane)
    return t1 + t2 + t3 + t4 + t5 + t6


def is_commuting_pair(x: SpElement, y: SpElement, rel_tol: float = COMMUTING_REL_TOL) -> bool:
    """True when |[x, y]| <= rel_tol * |x| * |y|."""
    br = _bracket_arr(x.data, y.data)
    scale = float(np.sqrt((x.data @ x.data) * (y.data @ y.data)))
    return float(np.sqrt(br @ br)) <= rel_tol * scale


def second_derivative_closed_form(d: MetricDeformation, plane: TangentPlane) -> float:
    """C''(0) = 1/2 |[X, LY] - [Y, LX]|^2, valid only for commuting pairs."""
    if not is_commuting_pair(plane.x, plane.y):
        raise ValueError("closed form requires a commuting pair")
    lx = d._apply_arr(_project_m_arr(plane.x.data))
    ly = d._apply_arr(_project_m_arr(plane.y.data))
    diff = _bracket_arr(plane.x.data, ly) - _bracket_arr(plane.y.data, lx)
    return 0.5 * float(diff @ diff)
