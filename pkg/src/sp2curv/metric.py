"""The circle-invariant metric family on the tangent model m.

A metric operator on m = R^3_u + R^3_v + R^3_w is determined by a triple
(A, B, C) with A, C symmetric and B antisymmetric, acting as

    (0, u, v, w)  ->  (0, A u, C v - B w, B v + C w).

Equivariance under the double-speed circle action forces exactly this block
shape, and self-adjointness with respect to the bi-invariant product holds
for every such triple.  The same data shape serves two roles:

* a deformation L (no positivity required; the reference deformation's A has
  eigenvalue -1), giving the metric family M_t = I + t L, and
* a general admissible metric M itself (A and the 6x6 block (C -B; B C)
  positive definite), used through `as_metric`, i.e. t = 1 with L = M - I.
"""

from __future__ import annotations

import numpy as np

from .algebra import SpElement

__all__ = [
    "MetricDeformation",
    "DeformedMetric",
    "reference_deformation",
    "random_admissible_metric",
    "random_deformation",
    "as_generator",
]

_EIG_FLOOR = 1e-9  # smallest eigenvalue a positive definite block may have
_SHAPE_TOL = 1e-10


def as_generator(seed) -> np.random.Generator:
    """Accept an int seed, a seed sequence list, or a Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


class MetricDeformation:
    """Block triple (A, B, C): A, C symmetric, B antisymmetric."""

    __slots__ = ("A", "B", "C", "matrix9")

    def __init__(self, A, B, C):
        A = np.array(A, dtype=float)
        B = np.array(B, dtype=float)
        C = np.array(C, dtype=float)
        for name, m in (("A", A), ("B", B), ("C", C)):
            if m.shape != (3, 3):
                raise ValueError(f"{name} must be 3x3, got {m.shape}")
        scale = 1.0 + max(np.abs(A).max(), np.abs(B).max(), np.abs(C).max())
        if np.abs(A - A.T).max() > _SHAPE_TOL * scale:
            raise ValueError("A must be symmetric")
        if np.abs(C - C.T).max() > _SHAPE_TOL * scale:
            raise ValueError("C must be symmetric")
        if np.abs(B + B.T).max() > _SHAPE_TOL * scale:
            raise ValueError("B must be antisymmetric")
        m9 = np.zeros((9, 9))
        m9[0:3, 0:3] = A
        m9[3:6, 3:6] = C
        m9[3:6, 6:9] = -B
        m9[6:9, 3:6] = B
        m9[6:9, 6:9] = C
        for m in (A, B, C, m9):
            m.setflags(write=False)
        self.A = A
        self.B = B
        self.C = C
        self.matrix9 = m9

    @property
    def block6(self) -> np.ndarray:
        """The symmetric 6x6 block (C -B; B C) acting on (v, w)."""
        return self.matrix9[3:9, 3:9]

    def apply(self, x: SpElement) -> SpElement:
        """Apply the block operator to x in m."""
        if not x.in_m(tol=1e-9):
            raise ValueError("metric operators are only defined on m")
        return SpElement.from_array(self._apply_arr(x.data))

    def _apply_arr(self, a: np.ndarray) -> np.ndarray:
        out = np.empty(10)
        out[0] = a[0]
        out[1:10] = self.matrix9 @ a[1:10]
        return out

    def is_positive_definite(self, threshold: float = _EIG_FLOOR) -> bool:
        """Positivity of the triple read as a metric operator M."""
        if np.linalg.eigvalsh(self.A)[0] <= threshold:
            return False
        return np.linalg.eigvalsh(self.block6)[0] > threshold

    def as_metric(self) -> "DeformedMetric":
        """Read the triple as the metric M itself: t = 1 with L = M - I."""
        eye = np.eye(3)
        return DeformedMetric(
            MetricDeformation(self.A - eye, self.B, self.C - eye), 1.0
        )

    def __repr__(self) -> str:
        return (
            f"MetricDeformation(A={self.A.tolist()!r}, "
            f"B={self.B.tolist()!r}, C={self.C.tolist()!r})"
        )


def reference_deformation() -> MetricDeformation:
    """The fixed deformation driving the commuting-plane positivity results."""
    a = np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    b = np.array([[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    c = np.array([[1.0, 0.0, 1.0], [0.0, 0.0, 1.0], [1.0, 1.0, 0.0]])
    return MetricDeformation(a, b, c)


class DeformedMetric:
    """The metric M_t = I + t L on m, with t allowed either sign.

    Positive definiteness (both blocks, smallest eigenvalue above 1e-9) is
    validated at construction; the block inverses are precomputed, so apply
    and inverse_apply are single matrix-vector products.
    """

    __slots__ = (
        "deformation",
        "t",
        "_op_a",
        "_op_block6",
        "_inv_a",
        "_inv_block6",
        "_min_eig",
    )

    def __init__(self, deformation: MetricDeformation, t: float):
        self.deformation = deformation
        self.t = float(t)
        op_a = np.eye(3) + self.t * deformation.A
        op_b6 = np.eye(6) + self.t * deformation.block6
        eig_a = np.linalg.eigvalsh(op_a)
        eig_b6 = np.linalg.eigvalsh(op_b6)
        self._min_eig = float(min(eig_a[0], eig_b6[0]))
        if self._min_eig <= _EIG_FLOOR:
            raise ValueError(
                f"I + tL is not positive definite at t={self.t!r} "
                f"(smallest eigenvalue {self._min_eig:.3e})"
            )
        self._op_a = op_a
        self._op_block6 = op_b6
        self._inv_a = np.linalg.inv(op_a)
        self._inv_block6 = np.linalg.inv(op_b6)
        for m in (self._op_a, self._op_block6, self._inv_a, self._inv_block6):
            m.setflags(write=False)

    def operator_a(self) -> np.ndarray:
        """The 3x3 block I + tA acting on the u factor."""
        return self._op_a

    def operator_block6(self) -> np.ndarray:
        """The symmetric 6x6 block acting on the (v, w) factor."""
        return self._op_block6

    def min_eigenvalue(self) -> float:
        return self._min_eig

    def _apply_arr(self, a: np.ndarray) -> np.ndarray:
        out = np.empty(10)
        out[0] = a[0]
        out[1:4] = self._op_a @ a[1:4]
        out[4:10] = self._op_block6 @ a[4:10]
        return out

    def _solve_arr(self, a: np.ndarray) -> np.ndarray:
        out = np.empty(10)
        out[0] = a[0]
        out[1:4] = self._inv_a @ a[1:4]
        out[4:10] = self._inv_block6 @ a[4:10]
        return out

    def apply(self, x: SpElement) -> SpElement:
        """M_t x for x in m."""
        if not x.in_m(tol=1e-9):
            raise ValueError("the metric is only defined on m")
        return SpElement.from_array(self._apply_arr(x.data))

    def inverse_apply(self, x: SpElement) -> SpElement:
        """Solve M_t y = x for y in m."""
        if not x.in_m(tol=1e-9):
            raise ValueError("the metric is only defined on m")
        return SpElement.from_array(self._solve_arr(x.data))

    def inner(self, x: SpElement, y: SpElement) -> float:
        """Metric inner product <x, M_t y> in the bi-invariant pairing."""
        return float(x.data @ self._apply_arr(y.data))

    def __repr__(self) -> str:
        return f"DeformedMetric(t={self.t!r}, deformation={self.deformation!r})"


def random_deformation(seed) -> MetricDeformation:
    """Unconstrained random triple with entries uniform in [-1, 1].

    No positivity is imposed; this is the sampler for deformation sweeps.
    """
    rng = as_generator(seed)

    def symmetric():
        m = np.zeros((3, 3))
        m[_UPPER] = rng.uniform(-1.0, 1.0, 3)
        m = m + m.T
        np.fill_diagonal(m, rng.uniform(-1.0, 1.0, 3))
        return m

    a = symmetric()
    b = np.zeros((3, 3))
    b[_UPPER] = rng.uniform(-1.0, 1.0, 3)
    return MetricDeformation(a, b - b.T, symmetric())


def random_admissible_metric(seed, max_attempts: int = 1000) -> MetricDeformation:
    """Random metric operator triple, rejection-sampled to positivity.

    Diagonals of A and C are uniform in [0.3, 1.7], their off-diagonals in
    [-0.4, 0.4]; B entries are uniform in [-0.6, 0.6], the same scale as the
    C off-diagonals, so the antisymmetric coupling is routinely comparable
    to the symmetric one.  Rejects until both metric blocks pass the
    positivity validator.  Deterministic per seed.
    """
    rng = as_generator(seed)
    for _ in range(max_attempts):
        a = _random_symmetric(rng)
        c = _random_symmetric(rng)
        b = _random_antisymmetric(rng)
        triple = MetricDeformation(a, b, c)
        if triple.is_positive_definite():
            return triple
    raise RuntimeError("rejection sampling failed to find a positive metric")


_UPPER = np.triu_indices(3, k=1)


def _random_symmetric(rng: np.random.Generator) -> np.ndarray:
    m = np.zeros((3, 3))
    m[_UPPER] = rng.uniform(-0.4, 0.4, 3)
    m = m + m.T
    np.fill_diagonal(m, rng.uniform(0.3, 1.7, 3))
    return m


def _random_antisymmetric(rng: np.random.Generator) -> np.ndarray:
    m = np.zeros((3, 3))
    m[_UPPER] = rng.uniform(-0.6, 0.6, 3)
    return m - m.T
