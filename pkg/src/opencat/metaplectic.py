"""Unitary quantization of SL(2,Z) matrices on the N-dimensional torus space.

A cat map is factored into the generators S = [[0,-1],[1,0]], shears
U(b) = [[1,b],[0,1]] and L(c) = [[1,0],[c,1]], and the parity -I.  Each
generator has a closed-form unitary on the state space (quadratic phases and
the DFT); the product quantizes the map up to a global phase.  All sign
conventions are pinned by the exact commutation identity with quantized
observables (checked generator by generator in the tests): with the DFT
kernel e^{-2 pi i m k / N}, S quantizes to a multiple of the *inverse* DFT.
"""

import math

import numpy as np

from .catmap import CatMap
from .errors import DegeneratePhase, OddDimension, TruncationOverflow
from .hn import dft_matrix
from .quantizer import TorusSymbol, op_weyl

# Letters are tuples: ("S",), ("S_INV",), ("U", b), ("L", c), ("PAR",)
_S = np.array([[0, -1], [1, 0]], dtype=object)

OMEGA_S = np.exp(-1j * math.pi / 4)  # unimodular convention constant for S

# Debug switch: quantize S/U with the opposite Fourier convention while the
# observables keep theirs.  This mismatch makes every Egorov check fail at
# O(1) and exists only for the verify command's sensitivity diagnostic.
_MISMATCH_DFT = False


def set_debug_mismatch_dft(flag: bool) -> None:
    global _MISMATCH_DFT
    _MISMATCH_DFT = bool(flag)


def letter_matrix(letter) -> np.ndarray:
    kind = letter[0]
    if kind == "S":
        return np.array([[0, -1], [1, 0]], dtype=object)
    if kind == "S_INV":
        return np.array([[0, 1], [-1, 0]], dtype=object)
    if kind == "U":
        return np.array([[1, letter[1]], [0, 1]], dtype=object)
    if kind == "L":
        return np.array([[1, 0], [letter[1], 1]], dtype=object)
    if kind == "PAR":
        return np.array([[-1, 0], [0, -1]], dtype=object)
    raise ValueError(f"unknown letter {letter!r}")


def word_matrix(word) -> np.ndarray:
    prod = np.eye(2, dtype=object)
    for letter in word:
        prod = prod @ letter_matrix(letter)
    return prod


def factor_sl2z(m: CatMap) -> list:
    """Factor m into generator letters whose ordered product is exactly m.

    Euclidean reduction of the first column: swap via S when the lower-left
    entry dominates, shear via U to reduce the upper-left mod it, and absorb
    a final -I into PAR.  Exact integer arithmetic throughout; the result is
    verified by multiplying back before returning.
    """
    a, b, c, d = m.a, m.b, m.c, m.d
    applied = []  # left-multiplied generators, in application order
    while c != 0:
        if a == 0 or abs(c) > abs(a):
            # S * [[a,b],[c,d]] = [[-c,-d],[a,b]]
            applied.append(("S",))
            a, b, c, d = -c, -d, a, b
        else:
            t = a // c
            # U(-t) * [[a,b],[c,d]] = [[a-tc, b-td],[c,d]]
            applied.append(("U", -t))
            a, b = a - t * c, b - t * d
    # now [[a,b],[0,d]] with a*d = 1
    if a == 1:
        tail = [("U", b)] if b != 0 else []
    else:
        tail = [("PAR",)] + ([("U", -b)] if b != 0 else [])
    inverses = {"S": lambda g: ("S_INV",), "U": lambda g: ("U", -g[1])}
    word = [inverses[g[0]](g) for g in applied] + tail
    check = word_matrix(word) if word else np.eye(2, dtype=object)
    target = np.array([[m.a, m.b], [m.c, m.d]], dtype=object)
    assert (check == target).all(), f"factorization failed for {m}"
    return word


def quantize_generator(letter, n: int) -> np.ndarray:
    """Closed-form unitary for a single generator on the N-dimensional space."""
    if n % 2:
        raise OddDimension(f"n = {n} must be even")
    kind = letter[0]
    f = dft_matrix(n)
    f_inv = f.conj().T
    if _MISMATCH_DFT:
        f, f_inv = f_inv, f
    if kind == "S":
        return OMEGA_S * f_inv
    if kind == "S_INV":
        return np.conj(OMEGA_S) * f
    if kind == "L":
        m = np.arange(n)
        return np.diag(np.exp(1j * math.pi * letter[1] * m * m / n))
    if kind == "U":
        m = np.arange(n)
        d = np.exp(-1j * math.pi * letter[1] * m * m / n)
        return f @ (d[:, None] * f_inv)
    if kind == "PAR":
        p = np.zeros((n, n))
        p[(n - np.arange(n)) % n, np.arange(n)] = 1.0
        return p
    raise ValueError(f"unknown letter {letter!r}")


def quantize_word(word, n: int) -> np.ndarray:
    """Product of generator unitaries in word order."""
    if n % 2:
        raise OddDimension(f"n = {n} must be even")
    u = np.eye(n, dtype=complex)
    for letter in word:
        u = u @ quantize_generator(letter, n)
    return u


def quantize_map(m: CatMap, n: int, phase: str = "none",
                 chi: np.ndarray | None = None, word=None) -> np.ndarray:
    """Quantize a cat map; optionally fix the global phase through a cutoff.

    phase="none" returns the word product as-is.  phase="leading_real_positive"
    multiplies by the unimodular scalar making the largest-modulus eigenvalue
    of chi @ Mhat real and positive (chi is then required).
    """
    if word is None:
        word = factor_sl2z(m)
    u = quantize_word(word, n)
    if phase == "none":
        return u
    if phase != "leading_real_positive":
        raise ValueError(f"unknown phase mode {phase!r}")
    if chi is None:
        raise ValueError("phase normalization needs the cutoff operator")
    return u * phase_factor(chi @ u)


def phase_factor(open_op: np.ndarray) -> complex:
    """Unimodular scalar rotating the leading eigenvalue onto the positive axis."""
    vals = np.linalg.eigvals(open_op)
    mu0 = vals[np.argmax(np.abs(vals))]
    if abs(mu0) < 1e-12:
        raise DegeneratePhase(f"leading eigenvalue modulus {abs(mu0):.3e}")
    return np.conj(mu0) / abs(mu0)


def compose_symbol(sym: TorusSymbol, m: CatMap,
                   k_cap: int | None = None) -> TorusSymbol:
    """Pull back a symbol by the map: coefficient at M^T w moves to w's value.

    Exact integer reindexing of the Fourier table; the plane wave with
    frequency w composed with M is the plane wave with frequency M^T w.
    """
    kmax = sym.k_max
    ks, ls = np.nonzero(sym.table)
    ks, ls = ks - kmax, ls - kmax
    new_k = m.a * ks + m.c * ls
    new_l = m.b * ks + m.d * ls
    needed = int(max(np.abs(new_k).max(), np.abs(new_l).max())) if len(ks) else 0
    if k_cap is not None and needed > k_cap:
        raise TruncationOverflow(f"composed modes reach {needed} > cap {k_cap}")
    out_k = max(needed, kmax)
    table = np.zeros((2 * out_k + 1, 2 * out_k + 1), dtype=complex)
    table[new_k + out_k, new_l + out_k] = sym.table[ks + kmax, ls + kmax]
    return TorusSymbol(table=table, k_max=out_k)


def egorov_residual(m: CatMap, sym: TorusSymbol, n: int,
                    word=None, k_cap: int | None = None) -> float:
    """Max-entry defect of Op(a o M) - Mhat^dag Op(a) Mhat; zero in exact arithmetic."""
    u = quantize_map(m, n, word=word)
    lhs = op_weyl(compose_symbol(sym, m, k_cap=k_cap), n)
    rhs = u.conj().T @ op_weyl(sym, n) @ u
    return float(np.abs(lhs - rhs).max())
