"""Classification of Cartan subalgebras of m up to isotropy and basis change.

Every 2-plane in m spanned by a commuting pair is equivalent, under the
isotropy circle and an invertible recombination of its basis, to exactly
one of four canonical families:

    F1:  X = (0, 0, v, 0),   Y = (0, 0, 0, w),      |v| = |w| = 1, v.w = 0
    F2:  X = (0, u, 0, w),   Y = (0, 0, u, 0),      |u| = 1, u.w = 0
    F3:  X = (0, u, p, 0),   Y = (0, p, u, 0),      |u| = 1, p _|_ u, 0 < |p| <= 1
    F4:  X = (0, u, p, 0),   Y = (0, p, u, mu u),   |u| = 1, p _|_ u, mu != 0

The reduction is constructive: it returns the canonical pair together with
a witness (an angle and a 2x2 matrix) that maps the canonical pair back to
the input pair exactly, and it verifies that reconstruction before
returning.  The case split is driven by the rank of the u-parts and, when
that rank is 2, by the in-plane quadratic det[v(Z) | w(Z)] over elements Z
of the plane: identically zero for F3, a pair of distinct root directions
for F4.  Orderings and signs are fixed by rotation-invariant data only, so
any basis of any rotation of a plane reduces to the same canonical pair.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Optional

import numpy as np

from .algebra import SpElement, _ad_h_arr, _bracket_arr

__all__ = [
    "commutes",
    "centralizer_in_m",
    "CanonicalizationError",
    "CartanClassification",
    "canonicalize",
    "in_special_orbit",
    "special_orbit_distance",
    "PlaneSample",
    "sample_cartan",
    "SPECIAL_ORBIT_TOL",
]

SPECIAL_ORBIT_TOL = 1e-8

# Pre-rotation angles tried in turn when a reduction hits a numerically
# degenerate configuration; the first angle keeps canonical inputs on the
# identity path.
_RETRY_ANGLES = (0.0, 0.37, 0.71, 1.13, 1.57, 2.03)

_RANK_TOL = 1e-8
_RESIDUAL_TOL = 1e-7


def commutes(x: SpElement, y: SpElement, rel_tol: float = 1e-9) -> bool:
    """True when |[x, y]| <= rel_tol * |x| * |y|."""
    br = _bracket_arr(x.data, y.data)
    scale = math.sqrt(float(x.data @ x.data) * float(y.data @ y.data))
    return float(np.sqrt(br @ br)) <= rel_tol * scale


def centralizer_in_m(x: SpElement, tol: float = _RANK_TOL) -> np.ndarray:
    """Orthonormal basis, as (dim, 10) rows, of {y in m : [x, y] = 0}.

    The bracket with x is a linear map from m (9 coordinates) into the full
    algebra (10 coordinates); the centralizer is its nullspace, read off
    from the singular values below tol times the largest one.
    """
    cols = np.empty((10, 9))
    basis = np.zeros(10)
    for i in range(9):
        basis[:] = 0.0
        basis[i + 1] = 1.0
        cols[:, i] = _bracket_arr(x.data, basis)
    _, svals, vt = np.linalg.svd(cols)
    cutoff = tol * (svals[0] if svals[0] > 0.0 else 1.0)
    rank = int(np.sum(svals > cutoff))
    null9 = vt[rank:]
    out = np.zeros((null9.shape[0], 10))
    out[:, 1:] = null9
    return out


class CanonicalizationError(RuntimeError):
    """The reduction could not complete within tolerance at any entry angle."""


class _ReductionFailed(Exception):
    """Internal: numerically degenerate configuration, retry at another angle."""


class CartanClassification(NamedTuple):
    """Canonical form of a commuting plane plus the transformation back.

    reconstruction of the input pair: apply the isotropy rotation by
    witness_angle to each row of witness_matrix @ [canonical_x; canonical_y].
    """

    family: str
    parameters: dict
    canonical_x: SpElement
    canonical_y: SpElement
    witness_angle: float
    witness_matrix: np.ndarray

    def reconstruct(self) -> tuple:
        rows = self.witness_matrix @ np.array(
            [self.canonical_x.data, self.canonical_y.data]
        )
        return (
            SpElement.from_array(_ad_h_arr(self.witness_angle, rows[0])),
            SpElement.from_array(_ad_h_arr(self.witness_angle, rows[1])),
        )


class _Reduction:
    """Working pair plus the accumulated transformation.

    Rotations act rowwise and commute with row recombinations, so the state
    satisfies rows = amat @ ad_h(theta)(raw input rows) at every step.
    """

    __slots__ = ("rows", "theta", "amat")

    def __init__(self, rows: np.ndarray, seed_mix: np.ndarray):
        self.rows = seed_mix @ rows
        self.theta = 0.0
        self.amat = seed_mix.copy()

    def rotate(self, angle: float) -> None:
        if angle != 0.0:
            self.rows = np.array([_ad_h_arr(angle, r) for r in self.rows])
            self.theta += angle

    def mix(self, a) -> None:
        a = np.asarray(a, dtype=float)
        self.rows = a @ self.rows
        self.amat = a @ self.amat

    # Accessors for the three vector slots of each row.
    def us(self) -> np.ndarray:
        return self.rows[:, 1:4]

    def vs(self) -> np.ndarray:
        return self.rows[:, 4:7]

    def ws(self) -> np.ndarray:
        return self.rows[:, 7:10]


def _first_nonzero_sign(vec: np.ndarray, tol: float = 1e-8) -> float:
    for c in vec:
        if abs(c) > tol:
            return 1.0 if c > 0.0 else -1.0
    return 1.0


def _normalize_direction(vec: np.ndarray) -> np.ndarray:
    n = float(np.linalg.norm(vec))
    if n <= 1e-12:
        raise _ReductionFailed("zero direction")
    out = vec / n
    return out * _first_nonzero_sign(out)


def _lex_descending(a: np.ndarray, b: np.ndarray) -> bool:
    """True when a should come before b (componentwise descending order)."""
    for pa, pb in zip(a, b):
        if abs(pa - pb) > 1e-9:
            return pa > pb
    return True


def _quadratic_roots(qa: float, qb: float, qc: float) -> np.ndarray:
    """Root directions of qa a^2 + qb ab + qc b^2 as rows of a (2, 2) array.

    Requires the associated symmetric form to be indefinite, which is what
    two distinct real root directions mean.
    """
    m = np.array([[qa, 0.5 * qb], [0.5 * qb, qc]])
    scale = float(np.abs(m).max())
    evals, evecs = np.linalg.eigh(m)
    if not (evals[0] < -1e-10 * scale and evals[1] > 1e-10 * scale):
        raise _ReductionFailed("quadratic is not indefinite")
    r_plus = math.sqrt(evals[1]) * evecs[:, 0] + math.sqrt(-evals[0]) * evecs[:, 1]
    r_minus = math.sqrt(evals[1]) * evecs[:, 0] - math.sqrt(-evals[0]) * evecs[:, 1]
    return np.array([r_plus / np.linalg.norm(r_plus), r_minus / np.linalg.norm(r_minus)])


def _aligned_direction(row: np.ndarray) -> np.ndarray:
    """Common direction of the v and w parts of an aligned element."""
    v = row[4:7]
    w = row[7:10]
    pick = v if v @ v >= w @ w else w
    return _normalize_direction(pick)


def _parallel_residual(vec: np.ndarray, direction: np.ndarray) -> float:
    return float(np.linalg.norm(vec - (vec @ direction) * direction))


def _pq_needs_flip(p: float, q: float) -> bool:
    """Sign convention for an aligned element against its direction.

    Flipping the element when (p, q) points left keeps the killing rotation
    inside (-pi/4, pi/4], so already-canonical input is not rotated at all.
    """
    return p < -1e-12 or (abs(p) <= 1e-12 and q < 0.0)


def _check(cond: bool, label: str) -> None:
    if not cond:
        raise _ReductionFailed(label)


def _reduce_case1(red: _Reduction) -> tuple:
    """u-parts vanish: the plane is a recombined rotation of an F1 pair.

    Elements with aligned v and w parts form exactly two directions in the
    plane, the zeros of the vector quadratic v(Z) x w(Z); once ordered by
    their common R^3 direction they rotate and rescale onto the F1 pair.
    """
    v1, v2 = red.vs()
    w1, w2 = red.ws()
    coeffs = np.array(
        [np.cross(v1, w1), np.cross(v1, w2) + np.cross(v2, w1), np.cross(v2, w2)]
    )
    u_svd, svals, _ = np.linalg.svd(coeffs)
    _check(svals[0] > 1e-10, "vanishing alignment quadratic")
    _check(svals[1] <= _RESIDUAL_TOL * svals[0], "alignment quadratic not rank one")
    roots = _quadratic_roots(*u_svd[:, 0])

    aligned = roots @ red.rows
    dirs = [_aligned_direction(r) for r in aligned]
    if not _lex_descending(dirs[0], dirs[1]):
        roots = roots[::-1]
        dirs = dirs[::-1]
        aligned = aligned[::-1]
    roots = roots.copy()
    for j in (0, 1):
        if _pq_needs_flip(
            float(aligned[j][4:7] @ dirs[j]), float(aligned[j][7:10] @ dirs[j])
        ):
            roots[j] = -roots[j]
    red.mix(roots)
    m1, m2 = dirs
    _check(abs(m1 @ m2) <= _RESIDUAL_TOL, "aligned directions not orthogonal")

    p1 = float(red.vs()[0] @ m1)
    q1 = float(red.ws()[0] @ m1)
    _check(math.hypot(p1, q1) > 1e-10, "first aligned element vanishes")
    red.rotate(0.5 * math.atan2(q1, p1))

    r1 = float(red.vs()[0] @ m1)
    _check(r1 > 1e-10, "rotation lost the first element")
    _check(float(np.linalg.norm(red.ws()[0])) <= _RESIDUAL_TOL, "w of first element")
    _check(float(np.linalg.norm(red.vs()[1])) <= _RESIDUAL_TOL, "v of second element")
    q2 = float(red.ws()[1] @ m2)
    _check(abs(q2) > 1e-10, "second aligned element vanishes")
    _check(_parallel_residual(red.ws()[1], m2) <= _RESIDUAL_TOL, "second element drift")
    red.mix(np.diag([1.0 / r1, 1.0 / q2]))

    canonical = np.zeros((2, 10))
    canonical[0, 4:7] = m1
    canonical[1, 7:10] = m2
    params = {"v": m1, "w": m2}
    return "F1", params, canonical


def _reduce_case2(red: _Reduction) -> tuple:
    """u-parts have rank one: the plane recombines onto an F2 pair."""
    u_svd, svals, _ = np.linalg.svd(red.us())
    red.mix(u_svd.T)
    _check(float(np.linalg.norm(red.us()[1])) <= _RESIDUAL_TOL, "second u-part")
    n1 = float(np.linalg.norm(red.us()[0]))
    _check(n1 > 1e-10, "first u-part vanishes")
    red.mix(np.diag([1.0 / n1, 1.0]))
    u_dir = red.us()[0] / np.linalg.norm(red.us()[0])

    # With the u-parts split off, the commuting constraints force the whole
    # second row onto the u direction.
    _check(_parallel_residual(red.vs()[1], u_dir) <= _RESIDUAL_TOL, "second row v")
    _check(_parallel_residual(red.ws()[1], u_dir) <= _RESIDUAL_TOL, "second row w")
    p = float(red.vs()[1] @ u_dir)
    q = float(red.ws()[1] @ u_dir)
    r = math.hypot(p, q)
    _check(r > 1e-10, "second row vanishes")
    if _pq_needs_flip(p, q):
        red.mix(np.diag([1.0, -1.0]))
        p, q = -p, -q
    red.rotate(0.5 * math.atan2(q, p))
    r = float(red.vs()[1] @ u_dir)
    _check(r > 1e-10, "rotation lost the second row")
    red.mix(np.diag([1.0, 1.0 / r]))

    # And the first row may keep only a v-part along u, removable by a shear.
    _check(_parallel_residual(red.vs()[0], u_dir) <= _RESIDUAL_TOL, "first row v")
    _check(abs(float(red.ws()[0] @ u_dir)) <= _RESIDUAL_TOL, "first row w")
    xi = float(red.vs()[0] @ u_dir)
    red.mix(np.array([[1.0, -xi], [0.0, 1.0]]))

    w_vec = red.ws()[0].copy()
    w_vec -= (w_vec @ u_dir) * u_dir
    if _first_nonzero_sign(u_dir) < 0.0:
        u_dir = -u_dir
        w_vec = -w_vec
        red.mix(-np.eye(2))
    if float(np.linalg.norm(w_vec)) > _RANK_TOL and _first_nonzero_sign(w_vec) < 0.0:
        w_vec = -w_vec
        red.rotate(0.5 * math.pi)
        red.mix(np.diag([1.0, -1.0]))
    if float(np.linalg.norm(w_vec)) <= _RANK_TOL:
        w_vec = np.zeros(3)

    canonical = np.zeros((2, 10))
    canonical[0, 1:4] = u_dir
    canonical[0, 7:10] = w_vec
    canonical[1, 4:7] = u_dir
    params = {"u": u_dir, "w": w_vec, "ell": float(np.linalg.norm(w_vec))}
    return "F2", params, canonical


def _null_direction_2(c1: np.ndarray, c2: np.ndarray) -> np.ndarray:
    """Unit (alpha, beta) with alpha c1 + beta c2 = 0 for parallel c1, c2."""
    n1 = float(c1 @ c1)
    n2 = float(c2 @ c2)
    _check(max(n1, n2) > 1e-20, "degenerate parallel pair")
    if n1 >= n2:
        out = np.array([-float(c1 @ c2) / n1, 1.0])
    else:
        out = np.array([1.0, -float(c1 @ c2) / n2])
    return out / np.linalg.norm(out)


def _reduce_case3_f3(red: _Reduction) -> tuple:
    """Rank-two u-parts, identically degenerate in-plane quadratic: F3.

    A single rotation empties every w slot; the constraints then make the
    two swap-symmetric combinations E+ = (0, c, c, 0), E- = (0, d, -d, 0)
    exact null directions, and those diagonalize the pair onto the F3 form.
    """
    vs, ws = red.vs(), red.ws()
    b_sum = float(np.sum(vs * ws))
    a_minus_c = float(np.sum(vs * vs) - np.sum(ws * ws))
    red.rotate(0.25 * math.atan2(2.0 * b_sum, a_minus_c))
    _check(float(np.sum(red.ws() ** 2)) <= 1e-12, "w slots not removable")

    us, vs = red.us(), red.vs()
    # E+ solves alpha (u1 - v1) + beta (u2 - v2) = 0, E- the + version.
    plus = _null_direction_2(us[0] - vs[0], us[1] - vs[1])
    minus = _null_direction_2(us[0] + vs[0], us[1] + vs[1])
    e_plus = plus @ red.rows
    e_minus = minus @ red.rows
    c_vec = 0.5 * (e_plus[1:4] + e_plus[4:7])
    d_vec = 0.5 * (e_minus[1:4] - e_minus[4:7])
    c_norm = float(np.linalg.norm(c_vec))
    d_norm = float(np.linalg.norm(d_vec))
    _check(min(c_norm, d_norm) > 1e-8, "degenerate swap eigenvectors")
    _check(
        float(np.linalg.norm(e_plus[1:4] - e_plus[4:7])) <= _RESIDUAL_TOL
        and float(np.linalg.norm(e_minus[1:4] + e_minus[4:7])) <= _RESIDUAL_TOL,
        "swap eigenvectors drift",
    )
    p_dir = c_vec / c_norm
    q_dir = d_vec / d_norm

    flip = np.eye(2)
    pq = float(p_dir @ q_dir)
    if pq < -1e-10 or (abs(pq) <= 1e-10 and _first_nonzero_sign(q_dir) < 0.0):
        q_dir = -q_dir
        flip = np.diag([1.0, -1.0])

    kappa = 2.0 / float(np.linalg.norm(p_dir + q_dir))
    red.mix(np.array([plus, minus]))
    red.mix(np.diag([1.0 / c_norm, 1.0 / d_norm]))
    red.mix(flip)
    red.mix(np.array([[0.5 * kappa, 0.5 * kappa], [0.5 * kappa, -0.5 * kappa]]))

    u_dir = (p_dir + q_dir) / float(np.linalg.norm(p_dir + q_dir))
    u_perp = (p_dir - q_dir) / float(np.linalg.norm(p_dir + q_dir))
    if _first_nonzero_sign(u_dir) < 0.0:
        u_dir = -u_dir
        u_perp = -u_perp
        red.mix(-np.eye(2))
    if _first_nonzero_sign(u_perp) < 0.0:
        u_perp = -u_perp
        red.rotate(0.5 * math.pi)
        red.mix(np.diag([1.0, -1.0]))
    _check(abs(float(u_dir @ u_perp)) <= _RESIDUAL_TOL, "F3 directions not orthogonal")
    ell = float(np.linalg.norm(u_perp))
    _check(1e-8 < ell <= 1.0 + 1e-9, "F3 length out of range")

    canonical = np.zeros((2, 10))
    canonical[0, 1:4] = u_dir
    canonical[0, 4:7] = u_perp
    canonical[1, 1:4] = u_perp
    canonical[1, 4:7] = u_dir
    params = {"u": u_dir, "p": u_perp, "ell": ell}
    return "F3", params, canonical


def _reduce_case3_f4(red: _Reduction, roots: np.ndarray) -> tuple:
    """Rank-two u-parts with two aligned root directions: F4.

    The two aligned elements are ordered by the rotation-invariant ratio
    |(v, w)| / |u|; the first rotates and rescales onto (0, u, p, 0), the
    second is then forced onto (0, p, u, mu u).
    """
    aligned = roots @ red.rows
    ratios = []
    for row in aligned:
        nu = float(np.linalg.norm(row[1:4]))
        _check(nu > 1e-10, "aligned element with zero u-part")
        vw = math.hypot(float(np.linalg.norm(row[4:7])), float(np.linalg.norm(row[7:10])))
        ratios.append(vw / nu)
    if abs(ratios[0] - ratios[1]) <= 1e-9 * (ratios[0] + ratios[1]):
        dirs = [_aligned_direction(r) for r in aligned]
        swap = not _lex_descending(dirs[0], dirs[1])
    else:
        swap = ratios[0] > ratios[1]
    if swap:
        roots = roots[::-1]
    roots = roots.copy()
    first = roots[0] @ red.rows
    m1 = _aligned_direction(first)
    if _pq_needs_flip(float(first[4:7] @ m1), float(first[7:10] @ m1)):
        roots[0] = -roots[0]
    red.mix(roots)

    p1 = float(red.vs()[0] @ m1)
    q1 = float(red.ws()[0] @ m1)
    _check(math.hypot(p1, q1) > 1e-10, "first aligned element vanishes")
    red.rotate(0.5 * math.atan2(q1, p1))
    _check(float(np.linalg.norm(red.ws()[0])) <= _RESIDUAL_TOL, "first element w")

    nu = float(np.linalg.norm(red.us()[0]))
    _check(nu > 1e-10, "first element u-part")
    red.mix(np.diag([1.0 / nu, 1.0]))
    u_dir = red.us()[0] / np.linalg.norm(red.us()[0])
    p_vec = red.vs()[0].copy()
    _check(abs(float(p_vec @ u_dir)) <= _RESIDUAL_TOL, "F4 p not orthogonal")
    p_vec -= (p_vec @ u_dir) * u_dir
    p_norm = float(np.linalg.norm(p_vec))
    _check(p_norm > 1e-8, "F4 p vanishes")

    sigma = float(red.us()[1] @ p_vec) / (p_norm * p_norm)
    _check(abs(sigma) > 1e-10, "second element scale")
    red.mix(np.diag([1.0, 1.0 / sigma]))
    _check(float(np.linalg.norm(red.us()[1] - p_vec)) <= _RESIDUAL_TOL, "row2 u")
    _check(float(np.linalg.norm(red.vs()[1] - u_dir)) <= _RESIDUAL_TOL, "row2 v")
    mu = float(red.ws()[1] @ u_dir)
    _check(float(np.linalg.norm(red.ws()[1] - mu * u_dir)) <= _RESIDUAL_TOL, "row2 w")
    _check(abs(mu) > 1e-8, "mu vanishes")

    if _first_nonzero_sign(u_dir) < 0.0:
        u_dir = -u_dir
        p_vec = -p_vec
        red.mix(-np.eye(2))
    if _first_nonzero_sign(p_vec) < 0.0:
        p_vec = -p_vec
        red.rotate(0.5 * math.pi)
        red.mix(np.diag([1.0, -1.0]))

    canonical = np.zeros((2, 10))
    canonical[0, 1:4] = u_dir
    canonical[0, 4:7] = p_vec
    canonical[1, 1:4] = p_vec
    canonical[1, 4:7] = u_dir
    canonical[1, 7:10] = mu * u_dir
    params = {"u": u_dir, "p": p_vec, "mu": mu, "ell": float(np.linalg.norm(p_vec))}
    return "F4", params, canonical


def _reduce_case3(red: _Reduction) -> tuple:
    """Rank-two u-parts: decide F3 against F4 by the in-plane quadratic."""
    _, svals, vt = np.linalg.svd(red.us())
    _check(svals[1] > _RANK_TOL, "u-parts lost rank two")
    b1, b2 = vt[0], vt[1]
    for vec in (*red.vs(), *red.ws()):
        residual = vec - (vec @ b1) * b1 - (vec @ b2) * b2
        _check(float(np.linalg.norm(residual)) <= _RESIDUAL_TOL, "v, w leave the u-plane")

    def plane_coords(vec):
        return np.array([float(vec @ b1), float(vec @ b2)])

    def det2(a, b):
        return a[0] * b[1] - a[1] * b[0]

    vp = [plane_coords(v) for v in red.vs()]
    wp = [plane_coords(w) for w in red.ws()]
    qa = det2(vp[0], wp[0])
    qb = det2(vp[0], wp[1]) + det2(vp[1], wp[0])
    qc = det2(vp[1], wp[1])
    if max(abs(qa), abs(qb), abs(qc)) <= _RANK_TOL:
        return _reduce_case3_f3(red)
    roots = _quadratic_roots(qa, qb, qc)
    return _reduce_case3_f4(red, roots)


def _orthonormalize_with_mix(x_arr: np.ndarray, y_arr: np.ndarray):
    """Gram-Schmidt rows plus the 2x2 mix sending the raw pair to them."""
    n0 = float(np.linalg.norm(x_arr))
    if n0 <= 1e-12:
        raise ValueError("zero element cannot span a plane")
    a = x_arr / n0
    c = float(y_arr @ a)
    b_pre = y_arr - c * a
    n1 = float(np.linalg.norm(b_pre))
    if n1 <= 1e-12:
        raise ValueError("elements are linearly dependent")
    seed = np.array([[1.0 / n0, 0.0], [-c / (n0 * n1), 1.0 / n1]])
    return np.array([x_arr, y_arr]), seed


def canonicalize(x: SpElement, y: SpElement) -> CartanClassification:
    """Reduce a commuting independent pair in m to its canonical family.

    Raises ValueError for input outside the domain (not in m, not
    commuting, not independent) and CanonicalizationError when no entry
    angle yields a reduction whose witness reconstructs the input to 1e-8.
    """
    if not (x.in_m(tol=1e-9) and y.in_m(tol=1e-9)):
        raise ValueError("canonical form is defined for planes inside m")
    if not commutes(x, y):
        raise ValueError("the pair does not commute")
    raw, seed = _orthonormalize_with_mix(x.data, y.data)
    scale = max(1.0, float(np.abs(raw).max()))

    last_failure = "no attempt"
    for angle in _RETRY_ANGLES:
        red = _Reduction(raw, seed)
        red.rotate(angle)
        try:
            u_svals = np.linalg.svd(red.us(), compute_uv=False)
            urank = int(np.sum(u_svals > _RANK_TOL))
            if urank == 0:
                family, params, canonical = _reduce_case1(red)
            elif urank == 1:
                family, params, canonical = _reduce_case2(red)
            else:
                family, params, canonical = _reduce_case3(red)
        except _ReductionFailed as failure:
            last_failure = str(failure)
            continue

        witness_angle = -red.theta % math.pi
        witness_matrix = np.linalg.inv(red.amat)
        result = CartanClassification(
            family=family,
            parameters=params,
            canonical_x=SpElement.from_array(canonical[0]),
            canonical_y=SpElement.from_array(canonical[1]),
            witness_angle=witness_angle,
            witness_matrix=witness_matrix,
        )
        rx, ry = result.reconstruct()
        err = max(
            float(np.abs(rx.data - x.data).max()), float(np.abs(ry.data - y.data).max())
        )
        if err <= 1e-8 * scale:
            return result
        last_failure = f"witness reconstruction error {err:.3e}"
    raise CanonicalizationError(
        f"reduction failed at every entry angle (last: {last_failure})"
    )


# ---- the special orbit ----

_T0_ROWS = np.zeros((2, 10))
_T0_ROWS[0, 4] = 1.0
_T0_ROWS[1, 8] = 1.0
_T0_ROWS.setflags(write=False)


def _orthonormal_rows(x: SpElement, y: SpElement) -> np.ndarray:
    rows, _ = _orthonormalize_with_mix(x.data, y.data)
    a = rows[0] / np.linalg.norm(rows[0])
    b = rows[1] - (rows[1] @ a) * a
    return np.array([a, b / np.linalg.norm(b)])


def _distance_after_rotation(rows: np.ndarray, angles: np.ndarray) -> np.ndarray:
    """Geodesic distance from each rotated copy of the plane to t0.

    Principal angles come from the singular values of the residual of the
    rotated orthonormal basis against the t0 span; those are sines, exact
    for angles in [0, pi/2] and precise near zero.
    """
    c = np.cos(2.0 * angles)[:, None, None]
    s = np.sin(2.0 * angles)[:, None, None]
    rotated = np.broadcast_to(rows, (angles.shape[0], 2, 10)).copy()
    v = rows[:, 4:7]
    w = rows[:, 7:10]
    rotated[:, :, 4:7] = c * v + s * w
    rotated[:, :, 7:10] = -s * v + c * w
    coeff = rotated @ _T0_ROWS.T
    residual = rotated - coeff @ _T0_ROWS
    sines = np.linalg.svd(residual, compute_uv=False)
    angles_principal = np.arcsin(np.clip(sines, 0.0, 1.0))
    return np.sqrt(np.sum(angles_principal**2, axis=1))


def special_orbit_distance(x: SpElement, y: SpElement) -> tuple:
    """(distance, angle): how far span(x, y) sits from the rotated t0 plane.

    Minimizes the geodesic subspace distance between the plane and the
    rotation orbit of t0 = span((0,0,e1,0), (0,0,0,e2)); the angle realizes
    the minimum.

    The overlap |T0 R(s)^T|_F^2 is a homogeneous quadratic in
    (cos 2s, sin 2s), so the angle maximizing it (equivalently minimizing
    the chordal distance) is exact: the top eigenvector of a 2x2 form.
    Near the orbit that angle also minimizes the geodesic distance to
    third order, which is all the membership threshold can see; a coarse
    grid guards the far-from-orbit regime.
    """
    rows = _orthonormal_rows(x, y)
    v = rows[:, 4:7]
    w = rows[:, 7:10]
    # M(s) = cos(2s) A + sin(2s) B, entries indexed by (t0 row, plane row).
    a = np.array([[v[0, 0], v[1, 0]], [w[0, 1], w[1, 1]]])
    b = np.array([[w[0, 0], w[1, 0]], [-v[0, 1], -v[1, 1]]])
    form = np.array(
        [[np.sum(a * a), np.sum(a * b)], [np.sum(a * b), np.sum(b * b)]]
    )
    top = np.linalg.eigh(form)[1][:, 1]
    exact = 0.5 * math.atan2(top[1], top[0]) % math.pi

    candidates = np.append(np.linspace(0.0, math.pi, 65)[:-1], exact)
    dists = _distance_after_rotation(rows, candidates)
    best = int(np.argmin(dists))
    return float(dists[best]), float(candidates[best])


def in_special_orbit(x: SpElement, y: SpElement, tol: float = SPECIAL_ORBIT_TOL) -> bool:
    """True when span(x, y) lies on the rotation orbit of the t0 plane."""
    distance, _ = special_orbit_distance(x, y)
    return distance <= tol


# ---- sampling ----


class PlaneSample(NamedTuple):
    """A commuting plane with the ground truth it was built from."""

    x: SpElement
    y: SpElement
    family: str
    parameters: dict
    angle: float
    gl2: np.ndarray


def _random_unit(rng: np.random.Generator) -> np.ndarray:
    while True:
        vec = rng.normal(size=3)
        n = float(np.linalg.norm(vec))
        if n > 1e-3:
            return vec / n


def _random_unit_orthogonal(rng: np.random.Generator, to: np.ndarray) -> np.ndarray:
    while True:
        vec = rng.normal(size=3)
        vec -= (vec @ to) * to
        n = float(np.linalg.norm(vec))
        if n > 1e-3:
            return vec / n


def _random_gl2(rng: np.random.Generator) -> np.ndarray:
    # Rejection keeps the recombination honestly invertible either way.
    while True:
        g = rng.normal(size=(2, 2))
        det = abs(g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0])
        if 0.2 <= det <= 5.0:
            return g


def _canonical_rows(family: str, params: dict) -> np.ndarray:
    rows = np.zeros((2, 10))
    if family == "F1":
        rows[0, 4:7] = params["v"]
        rows[1, 7:10] = params["w"]
    elif family == "F2":
        rows[0, 1:4] = params["u"]
        rows[0, 7:10] = params["w"]
        rows[1, 4:7] = params["u"]
    elif family == "F3":
        rows[0, 1:4] = params["u"]
        rows[0, 4:7] = params["p"]
        rows[1, 1:4] = params["p"]
        rows[1, 4:7] = params["u"]
    elif family == "F4":
        rows[0, 1:4] = params["u"]
        rows[0, 4:7] = params["p"]
        rows[1, 1:4] = params["p"]
        rows[1, 4:7] = params["u"]
        rows[1, 7:10] = params["mu"] * params["u"]
    else:
        raise ValueError(f"unknown family {family!r}")
    return rows


def sample_cartan(family: str, rng) -> PlaneSample:
    """Draw a random commuting plane of the given family.

    Canonical parameters are drawn from bounded ranges, then hidden behind
    a random rotation and a random invertible recombination.
    """
    rng = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    if family == "F1":
        v = _random_unit(rng)
        params = {"v": v, "w": _random_unit_orthogonal(rng, v)}
    elif family == "F2":
        u = _random_unit(rng)
        if rng.uniform() < 0.15:
            w = np.zeros(3)
        else:
            w = rng.uniform(0.2, 2.0) * _random_unit_orthogonal(rng, u)
        params = {"u": u, "w": w}
    elif family == "F3":
        u = _random_unit(rng)
        params = {"u": u, "p": rng.uniform(0.25, 1.0) * _random_unit_orthogonal(rng, u)}
    elif family == "F4":
        u = _random_unit(rng)
        params = {
            "u": u,
            "p": rng.uniform(0.3, 1.0) * _random_unit_orthogonal(rng, u),
            "mu": float(rng.choice([-1.0, 1.0]) * rng.uniform(0.2, 2.0)),
        }
    else:
        raise ValueError(f"unknown family {family!r}")

    angle = float(rng.uniform(0.0, math.pi))
    gl2 = _random_gl2(rng)
    rows = _canonical_rows(family, params)
    rows = np.array([_ad_h_arr(angle, r) for r in rows])
    rows = gl2 @ rows
    return PlaneSample(
        x=SpElement.from_array(rows[0]),
        y=SpElement.from_array(rows[1]),
        family=family,
        parameters=params,
        angle=angle,
        gl2=gl2,
    )
