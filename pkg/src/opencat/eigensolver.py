"""Dense non-Hermitian eigenvalue computation, with an independent oracle.

The production path wraps LAPACK's geev driver (balancing, Householder
reduction to Hessenberg form, shifted QR with deflation) through numpy.  The
oracle path, for small matrices, is entirely separate: characteristic
polynomial by the Faddeev-LeVerrier recurrence, roots by Durand-Kerner
iteration.  The two must agree; the tests enforce it.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NonFinite, OracleNoConvergence

ORACLE_MAX_DIM = 8


@dataclass
class SpectrumRaw:
    values: np.ndarray       # all eigenvalues, unordered
    converged: bool
    iterations: int = 0


def eigenvalues(a: np.ndarray) -> SpectrumRaw:
    """All eigenvalues of a dense complex matrix."""
    a = np.asarray(a, dtype=complex)
    if not np.isfinite(a).all():
        raise NonFinite("matrix contains NaN or Inf")
    try:
        vals = np.linalg.eigvals(a)
    except np.linalg.LinAlgError:
        return SpectrumRaw(values=np.zeros(a.shape[0], dtype=complex),
                           converged=False)
    return SpectrumRaw(values=vals, converged=True)


def char_poly_coeffs(a: np.ndarray) -> np.ndarray:
    """Monic characteristic polynomial coefficients via Faddeev-LeVerrier.

    Returns [1, c1, ..., cn] with p(t) = t^n + c1 t^{n-1} + ... + cn.
    """
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[0] = 1.0
    mk = np.array(a)
    for k in range(1, n + 1):
        ck = -np.trace(mk) / k
        coeffs[k] = ck
        if k < n:
            mk = a @ (mk + ck * np.eye(n))
    return coeffs


def durand_kerner(coeffs: np.ndarray, max_sweeps: int = 500,
                  tol: float = 1e-12) -> np.ndarray:
    """Simultaneous root iteration for a monic polynomial.

    Starts from a slightly rotated circle (radius from the Cauchy bound) so
    no initial guess sits on a symmetry axis of the root set.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    n = len(coeffs) - 1
    if n == 0:
        return np.zeros(0, dtype=complex)
    radius = 1.0 + np.abs(coeffs[1:]).max()
    angles = 2.0 * np.pi * np.arange(n) / n + 0.41
    z = radius * np.exp(1j * angles)
    scale = 1.0 + np.abs(coeffs).max()
    for sweep in range(max_sweeps):
        p = np.polyval(coeffs, z)
        if np.abs(p).max() < tol * scale:
            return z
        moved = 0.0
        for i in range(n):
            denom = np.prod(z[i] - np.delete(z, i))
            if denom == 0:
                z[i] += 1e-8 * (1 + 1j)
                continue
            step = np.polyval(coeffs, z[i]) / denom
            z[i] -= step
            moved = max(moved, abs(step))
        if moved < 5e-15 * radius:
            return z
    raise OracleNoConvergence(f"no convergence after {max_sweeps} sweeps")


def char_poly_roots(a: np.ndarray) -> np.ndarray:
    """Oracle eigenvalues for matrices of dimension <= 8."""
    a = np.asarray(a, dtype=complex)
    if a.shape[0] > ORACLE_MAX_DIM:
        raise ValueError(f"oracle limited to dim <= {ORACLE_MAX_DIM}")
    return durand_kerner(char_poly_coeffs(a))


def sort_by_modulus(values: np.ndarray) -> np.ndarray:
    """Descending modulus; ties broken by descending real then imaginary part."""
    vals = np.asarray(values, dtype=complex)
    order = sorted(range(len(vals)),
                   key=lambda i: (-abs(vals[i]), -vals[i].real, -vals[i].imag))
    return vals[order]


def multiset_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Greedy matching metric between two eigenvalue multisets.

    Each value of a (largest modulus first) is paired with the nearest unused
    value of b; the result is the largest paired distance.  Greedy matching is
    stable where a plain co-sorted comparison is not: rounding can reorder
    near-tied values between the two lists.
    """
    sa = sort_by_modulus(a)
    sb = list(sort_by_modulus(b))
    if len(sa) != len(sb):
        raise ValueError("multisets differ in size")
    worst = 0.0
    for va in sa:
        gaps = [abs(va - vb) for vb in sb]
        i = gaps.index(min(gaps))
        worst = max(worst, gaps[i])
        del sb[i]
    return worst
