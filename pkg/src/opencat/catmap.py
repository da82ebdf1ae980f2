"""Exact classical dynamics of hyperbolic toral automorphisms (cat maps).

Everything here is either exact integer arithmetic on rational points of the
torus, or small 2x2 linear algebra for the hyperbolic eigen-data of the map.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import math

import numpy as np

from .errors import InvalidRadius, NotHyperbolic, NotUnimodular


@dataclass(frozen=True)
class CatMap:
    """Integer matrix [[a, b], [c, d]] in SL(2, Z) with |trace| > 2."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise NotUnimodular(f"det = {self.a * self.d - self.b * self.c}, expected 1")

    @property
    def trace(self) -> int:
        return self.a + self.d

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=np.int64)

    def __matmul__(self, other: "CatMap") -> "CatMap":
        return CatMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "CatMap":
        return CatMap(self.d, -self.b, -self.c, self.a)


ARNOLD = CatMap(2, 1, 1, 1)


@dataclass(frozen=True)
class CatMapAnalysis:
    """Hyperbolic eigen-data: expanding eigenvalue, det-1 eigenvector matrix, its norm."""

    lam: float                 # expanding eigenvalue modulus, > 1
    q_matrix: np.ndarray       # rows diagonalize: q_matrix @ M @ q_matrix^-1 diagonal
    q_norm: float              # operator (2-)norm of q_matrix
    negative_trace: bool = False


def analyze(m: CatMap) -> CatMapAnalysis:
    """Eigen-data of a cat map.

    Returns the modulus of the expanding eigenvalue, the eigenvector matrix Q
    rescaled so det Q = 1 (with Q M Q^-1 diagonal), and the operator norm of Q.
    For trace < -2 the eigenvalues are -lam, -1/lam; lam records the modulus
    and negative_trace the sign.
    """
    tr = m.trace
    if abs(tr) <= 2:
        raise NotHyperbolic(f"|trace| = {abs(tr)} <= 2")
    lam = (abs(tr) + math.sqrt(tr * tr - 4)) / 2.0
    mat = m.as_array().astype(float)
    # Right eigenvectors as columns of P; Q = P^-1 has det 1 once P does.
    sign = -1.0 if tr < 0 else 1.0
    mu_plus, mu_minus = sign * lam, sign / lam
    p = np.column_stack([_eigvec(mat, mu_plus), _eigvec(mat, mu_minus)])
    det_p = np.linalg.det(p)
    if det_p < 0:
        p[:, 1] *= -1.0
        det_p = -det_p
    p /= math.sqrt(det_p)
    q = np.linalg.inv(p)
    if q[0, 0] < 0:
        # flip both rows: keeps det, fixes the sign convention on column one
        q = -q
    q_norm = float(np.linalg.norm(q, 2))
    return CatMapAnalysis(lam=lam, q_matrix=q, q_norm=q_norm, negative_trace=tr < 0)


def _eigvec(mat: np.ndarray, mu: float) -> np.ndarray:
    a, b = mat[0]
    c, d = mat[1]
    if abs(b) > 1e-14:
        v = np.array([b, mu - a])
    elif abs(c) > 1e-14:
        v = np.array([mu - d, c])
    else:
        v = np.array([1.0, 0.0]) if abs(a - mu) < abs(d - mu) else np.array([0.0, 1.0])
    return v / np.linalg.norm(v)


def guard_radius(analysis: CatMapAnalysis) -> float:
    """Radius 1/(4 lam |Q|^2) inside which 0 is the only periodic orbit."""
    return 1.0 / (4.0 * analysis.lam * analysis.q_norm**2)


@dataclass(frozen=True)
class RationalPoint:
    """Point (x/q, y/q) on the torus, coordinates reduced mod q."""

    x_num: int
    y_num: int
    q: int

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("denominator must be positive")
        object.__setattr__(self, "x_num", self.x_num % self.q)
        object.__setattr__(self, "y_num", self.y_num % self.q)

    def torus_norm(self) -> float:
        """Euclidean distance to 0 with coordinates represented in [-1/2, 1/2)."""
        mx = min(self.x_num, self.q - self.x_num) if self.x_num else 0
        my = min(self.y_num, self.q - self.y_num) if self.y_num else 0
        return math.hypot(mx, my) / self.q

    def as_fractions(self):
        return Fraction(self.x_num, self.q), Fraction(self.y_num, self.q)


def iterate_mod_q(m: CatMap, p: RationalPoint) -> RationalPoint:
    """One step of the map on a rational point, exact mod-q arithmetic."""
    return RationalPoint(m.a * p.x_num + m.b * p.y_num,
                         m.c * p.x_num + m.d * p.y_num, p.q)


def orbit(m: CatMap, p: RationalPoint) -> list[RationalPoint]:
    """Full forward orbit of p until first return; length is the period."""
    pts = [p]
    cur = iterate_mod_q(m, p)
    while cur != p:
        pts.append(cur)
        cur = iterate_mod_q(m, cur)
    return pts


@dataclass
class EscapeReport:
    all_escape: bool
    witness: list[RationalPoint] | None = None
    per_q: list[tuple[int, int, float]] = field(default_factory=list)  # (q, num_orbits, min over orbits of max norm)


def escape_check(m: CatMap, radius: float, q_max: int) -> EscapeReport:
    """Brute-force check that every nonzero rational orbit leaves the ball.

    Enumerates all points with denominator q <= q_max, decomposes the induced
    permutation of (Z/q)^2 into orbits, and tests whether each nonzero orbit
    contains a point at torus distance > radius from 0.  The zero fixed point
    is exempt.  Returns the first fully-contained orbit as witness if any.
    """
    if not (0.0 < radius <= 0.5):
        raise InvalidRadius(f"radius {radius} outside (0, 1/2]")
    if q_max < 1:
        raise ValueError("q_max must be >= 1")

    report = EscapeReport(all_escape=True)
    r2 = radius * radius
    for q in range(1, q_max + 1):
        seen = np.zeros((q, q), dtype=bool)
        seen[0, 0] = True  # the fixed point at 0 is exempt
        num_orbits = 1
        min_orbit_max = math.sqrt(0.5)  # max possible torus norm
        for x0 in range(q):
            for y0 in range(q):
                if seen[x0, y0]:
                    continue
                num_orbits += 1
                orbit_max2 = 0
                x, y = x0, y0
                pts = []
                while not seen[x, y]:
                    seen[x, y] = True
                    pts.append((x, y))
                    mx = min(x, q - x) if x else 0
                    my = min(y, q - y) if y else 0
                    orbit_max2 = max(orbit_max2, mx * mx + my * my)
                    x, y = (m.a * x + m.b * y) % q, (m.c * x + m.d * y) % q
                orbit_max = math.sqrt(orbit_max2) / q
                min_orbit_max = min(min_orbit_max, orbit_max)
                if orbit_max2 <= r2 * q * q and report.all_escape:
                    report.all_escape = False
                    report.witness = [RationalPoint(px, py, q) for px, py in pts]
        report.per_q.append((q, num_orbits, min_orbit_max))
    return report
