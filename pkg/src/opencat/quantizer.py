"""Symbols on the torus and their quantization on the N-dimensional space.

Smooth symbols are carried as truncated Fourier coefficient tables.  Two
quantizations are provided: the general Weyl quantization through its explicit
matrix-entry formula, and the left (standard) quantization of separable
products f(x)g(xi), which is a diagonal/Fourier-multiplier sandwich.
"""

from dataclasses import dataclass
import math

import numpy as np

from .catmap import CatMapAnalysis
from .errors import GridTooCoarse, InvalidSpec
from .hn import dft_matrix, torus_rep_array

DEFAULT_K_MAX = 48
DEFAULT_GRID = 512


@dataclass(frozen=True)
class BumpSpec:
    """Per-axis radii of the plateau/support of the profile rho."""

    kind: str          # "product_bump" or "annulus_product"
    r_inner: float
    r_outer: float

    def __post_init__(self):
        if self.kind not in ("product_bump", "annulus_product"):
            raise InvalidSpec(f"unknown kind {self.kind!r}")
        if not (0.0 < self.r_inner < self.r_outer < 0.5):
            raise InvalidSpec(f"need 0 < r_inner < r_outer < 1/2, got "
                              f"({self.r_inner}, {self.r_outer})")
        if self.kind == "annulus_product" and 2.0 * self.r_outer >= 0.5:
            raise InvalidSpec("annulus profile needs 2*r_outer < 1/2")


def _smooth_step(t):
    """C-infinity step: 0 for t <= 0, 1 for t >= 1, exp(-1/t) partition between."""
    t = np.asarray(t, dtype=float)
    s = np.zeros_like(t)
    sc = np.zeros_like(t)
    pos = t > 0
    s[pos] = np.exp(-1.0 / t[pos])
    posc = (1.0 - t) > 0
    sc[posc] = np.exp(-1.0 / (1.0 - t[posc]))
    return s / (s + sc)


def bump_profile(spec: BumpSpec, x):
    """The plateau bump rho: 1 on |x| <= r_inner, 0 on |x| >= r_outer, smooth between."""
    scalar = np.isscalar(x)
    ax = np.abs(np.asarray(x, dtype=float))
    t = (spec.r_outer - ax) / (spec.r_outer - spec.r_inner)
    out = _smooth_step(t)
    return float(out) if scalar else out


def annulus_profile(spec: BumpSpec, x):
    """rho(x) - rho(2x): vanishes near 0 and outside |x| >= r_outer."""
    scalar = np.isscalar(x)
    x = np.asarray(x, dtype=float)
    out = bump_profile(spec, x) - bump_profile(spec, 2.0 * x)
    return float(out) if scalar else out


@dataclass(frozen=True)
class TorusSymbol:
    """Truncated Fourier series a(x, xi) = sum coeff(k, l) e^{2 pi i (k x + l xi)}.

    The table is dense, indexed [k + k_max, l + k_max] for |k|, |l| <= k_max.
    """

    table: np.ndarray
    k_max: int

    def __post_init__(self):
        kk = 2 * self.k_max + 1
        if self.table.shape != (kk, kk):
            raise ValueError(f"table shape {self.table.shape}, expected ({kk}, {kk})")
        self.table.setflags(write=False)

    def coeff(self, k: int, l: int) -> complex:
        if abs(k) > self.k_max or abs(l) > self.k_max:
            return 0.0 + 0.0j
        return complex(self.table[k + self.k_max, l + self.k_max])

    def value(self, x: float, xi: float) -> complex:
        """Evaluate the truncated series at a phase-space point."""
        k = np.arange(-self.k_max, self.k_max + 1)
        ex = np.exp(2j * np.pi * k * x)
        exi = np.exp(2j * np.pi * k * xi)
        return complex(ex @ self.table @ exi)

    def hermitian_defect(self) -> float:
        """Max deviation from coeff(-k,-l) = conj(coeff(k,l)); 0 for real symbols."""
        flipped = self.table[::-1, ::-1].conj()
        return float(np.abs(self.table - flipped).max())


def symbol_from_function(f, k_max: int = DEFAULT_K_MAX,
                         grid: int = DEFAULT_GRID) -> TorusSymbol:
    """Fourier-truncate a periodic function on the torus.

    f is sampled on a grid x grid uniform lattice of [0,1)^2 (f may be given
    on the fundamental domain [-1/2,1/2)^2; sampling arguments are passed
    through torus_rep) and transformed with an exact 2D DFT.  Aliasing is
    bounded by f's Fourier tail beyond grid - k_max.
    """
    if grid < 4 * k_max:
        raise GridTooCoarse(f"grid {grid} < 4*k_max = {4 * k_max}")
    pts = torus_rep_array(np.arange(grid) / grid)
    xx, yy = np.meshgrid(pts, pts, indexing="ij")
    samples = np.asarray(f(xx, yy), dtype=complex)
    big = np.fft.fft2(samples) / grid**2
    kk = np.arange(-k_max, k_max + 1)
    table = big[np.ix_(kk % grid, kk % grid)]
    return TorusSymbol(table=np.ascontiguousarray(table), k_max=k_max)


def op_weyl(sym: TorusSymbol, n: int) -> np.ndarray:
    """Weyl quantization as a dense N x N matrix.

    Entry (m, j) is the lattice sum of coeff(k, j - m - l N) times the parity
    sign (-1)^{k l} and the half-integer phase e^{i pi (j+m) k / N}, over the
    finitely many (k, l) surviving the truncation.
    """
    kmax = sym.k_max
    mm, jj = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    s = jj - mm
    jpm = jj + mm
    l_span = (kmax + n - 1) // n + 1
    a = np.zeros((n, n), dtype=complex)
    for k in range(-kmax, kmax + 1):
        col = sym.table[k + kmax]
        if not np.any(col):
            continue
        phase = np.exp(1j * math.pi * k * jpm / n)
        for l in range(-l_span, l_span + 1):
            idx = s - l * n
            mask = np.abs(idx) <= kmax
            if not mask.any():
                continue
            sign = -1.0 if (k * l) % 2 else 1.0
            vals = np.zeros((n, n), dtype=complex)
            vals[mask] = col[idx[mask] + kmax]
            a += sign * vals * phase
    return a


def op_left_separable(f_profile, g_profile, n: int) -> np.ndarray:
    """Left quantization of f(x) g(xi): position multiplier after Fourier multiplier."""
    f_mat = dft_matrix(n)
    x = torus_rep_array(np.arange(n) / n)
    d_f = np.asarray(f_profile(x), dtype=complex)
    d_g = np.asarray(g_profile(x), dtype=complex)
    return d_f[:, None] * (f_mat.conj().T * d_g[None, :]) @ f_mat


def make_trapped_symbol(spec: BumpSpec, k_max: int = DEFAULT_K_MAX,
                        grid: int = DEFAULT_GRID):
    """Cutoff equal to 1 near the origin: profiles and Weyl symbol of rho(x)rho(xi)."""
    if spec.kind != "product_bump":
        raise InvalidSpec("trapped cutoff needs kind='product_bump'")

    def profile(x):
        return bump_profile(spec, x)

    sym = symbol_from_function(
        lambda x, xi: bump_profile(spec, x) * bump_profile(spec, xi),
        k_max=k_max, grid=grid)
    return profile, profile, sym


def make_nontrapping_symbol(spec: BumpSpec, k_max: int = DEFAULT_K_MAX,
                            grid: int = DEFAULT_GRID):
    """Cutoff vanishing near the origin: annulus profiles and their Weyl symbol."""
    if spec.kind != "annulus_product":
        raise InvalidSpec("nontrapping cutoff needs kind='annulus_product'")

    def profile(x):
        return annulus_profile(spec, x)

    sym = symbol_from_function(
        lambda x, xi: annulus_profile(spec, x) * annulus_profile(spec, xi),
        k_max=k_max, grid=grid)
    return profile, profile, sym


def support_guard(spec: BumpSpec, analysis: CatMapAnalysis, c: float = 0.25):
    """Compare the cutoff's phase-space support radius against c/(lam |Q|^2).

    The support of a product bump reaches the corner of its square, so the
    radius is taken as sqrt(2) * r_outer.  Advisory: the theorem's constant
    is unspecified, so a violation is a warning for the caller, not an error.
    """
    radius_limit = c / (analysis.lam * analysis.q_norm**2)
    support_radius = math.sqrt(2.0) * spec.r_outer
    return {"ok": support_radius <= radius_limit, "radius_limit": radius_limit,
            "support_radius": support_radius}
