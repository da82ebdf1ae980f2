"""The two spectral studies: trapped-limit convergence and nontrapping decay.

An open operator is the product of a quantized cutoff with the quantized map.
With the cutoff equal to 1 near the hyperbolic fixed point, the top
eigenvalue moduli converge to lam^{-(2k+1)/2}; with an annulus cutoff
excluding the fixed point, the spectral radius decays superpolynomially in h.
"""

from dataclasses import dataclass, field
import logging
import math
import warnings

import numpy as np

from .catmap import CatMap, analyze
from .eigensolver import eigenvalues, sort_by_modulus
from .hn import planck
from .metaplectic import factor_sl2z, phase_factor, quantize_word
from .quantizer import (BumpSpec, make_nontrapping_symbol, make_trapped_symbol,
                        op_left_separable, op_weyl, support_guard,
                        DEFAULT_GRID, DEFAULT_K_MAX)

log = logging.getLogger(__name__)

DEFAULT_TRAPPED_SPEC = BumpSpec("product_bump", 0.10, 0.20)
DEFAULT_NONTRAP_SPEC = BumpSpec("annulus_product", 0.15, 0.24)


@dataclass
class SpectrumReport:
    n: int
    h: float
    eigenvalues: np.ndarray          # modulus-sorted, full spectrum
    targets: np.ndarray              # lam^{-(2k+1)/2}, k = 0..k_count-1
    errors_modulus: np.ndarray
    errors_real: np.ndarray
    abs_imag: np.ndarray


@dataclass
class SweepRow:
    n: int
    h: float
    k: int
    re: float
    im: float
    modulus: float
    target: float
    abs_err: float


@dataclass
class NontrapRow:
    n: int
    h: float
    top_modulus: float
    slope_vs_prev: float = math.nan


def theorem_targets(m: CatMap, k_count: int) -> np.ndarray:
    """Predicted eigenvalue moduli lam^{-(2k+1)/2} for k = 0..k_count-1."""
    lam = analyze(m).lam
    return lam ** (-(2.0 * np.arange(k_count) + 1.0) / 2.0)


def cutoff_operator(spec: BumpSpec, n: int, quant: str = "left",
                    k_max: int = DEFAULT_K_MAX, grid: int = DEFAULT_GRID) -> np.ndarray:
    """Quantize the cutoff, by either quantization route."""
    maker = make_trapped_symbol if spec.kind == "product_bump" else make_nontrapping_symbol
    f, g, sym = maker(spec, k_max=k_max, grid=grid)
    if quant == "left":
        return op_left_separable(f, g, n)
    if quant == "weyl":
        return op_weyl(sym, n)
    raise ValueError(f"unknown quantization {quant!r}")


def build_open_operator(m: CatMap, spec: BumpSpec, n: int, quant: str = "left",
                        phase: str = "none", word=None,
                        k_max: int = DEFAULT_K_MAX, grid: int = DEFAULT_GRID) -> np.ndarray:
    """(quantized cutoff) @ (quantized map), optionally phase-normalized."""
    guard = support_guard(spec, analyze(m))
    if not guard["ok"]:
        warnings.warn(
            f"cutoff support radius {guard['support_radius']:.4f} exceeds the "
            f"guard limit {guard['radius_limit']:.4f}; the trapped-limit "
            "theorem is only guaranteed for small enough support", stacklevel=2)
    if word is None:
        word = factor_sl2z(m)
    chi = cutoff_operator(spec, n, quant=quant, k_max=k_max, grid=grid)
    a = chi @ quantize_word(word, n)
    if phase == "leading_real_positive":
        a = a * phase_factor(a)
    elif phase != "none":
        raise ValueError(f"unknown phase mode {phase!r}")
    return a


def spectrum_report(m: CatMap, open_op: np.ndarray, n: int,
                    k_count: int = 4) -> SpectrumReport:
    spec_raw = eigenvalues(open_op)
    vals = sort_by_modulus(spec_raw.values)
    targets = theorem_targets(m, k_count)
    top = vals[:k_count]
    return SpectrumReport(
        n=n, h=planck(n).h, eigenvalues=vals, targets=targets,
        errors_modulus=np.abs(np.abs(top) - targets),
        errors_real=np.abs(top.real - targets),
        abs_imag=np.abs(top.imag))


def trapped_sweep(m: CatMap, spec: BumpSpec, n_list, quant: str = "left",
                  k_count: int = 4, phase: str = "leading_real_positive",
                  k_max: int = DEFAULT_K_MAX, grid: int = DEFAULT_GRID):
    """Top-k eigenvalues against the theorem targets, per dimension.

    Returns (rows, reports): SweepRow records in (N, k) order and one
    SpectrumReport per dimension.
    """
    if k_count > 8:
        raise ValueError("k_count > 8 exceeds the resolvable range at desk scale")
    rows, reports = [], []
    for n in n_list:
        log.info("trapped sweep: N = %d", n)
        op = build_open_operator(m, spec, n, quant=quant, phase=phase,
                                 k_max=k_max, grid=grid)
        report = spectrum_report(m, op, n, k_count=k_count)
        reports.append(report)
        for k in range(k_count):
            mu = report.eigenvalues[k]
            rows.append(SweepRow(
                n=n, h=report.h, k=k, re=float(mu.real), im=float(mu.imag),
                modulus=float(abs(mu)), target=float(report.targets[k]),
                abs_err=float(report.errors_modulus[k])))
    return rows, reports


def nontrapping_sweep(m: CatMap, spec: BumpSpec, n_list, quant: str = "left",
                      k_max: int = DEFAULT_K_MAX, grid: int = DEFAULT_GRID,
                      radii=None):
    """Spectral radius per dimension with log-log slopes between neighbors.

    radii, if given, replaces the computed spectral radii (synthetic
    self-test hook used by the CLI).
    """
    if spec.kind != "annulus_product":
        raise ValueError("nontrapping sweep needs an annulus cutoff")
    rows = []
    prev = None
    for i, n in enumerate(n_list):
        h = planck(n).h
        if radii is not None:
            top = float(radii[i])
        else:
            log.info("nontrapping sweep: N = %d", n)
            op = build_open_operator(m, spec, n, quant=quant,
                                     k_max=k_max, grid=grid)
            vals = eigenvalues(op).values
            top = float(np.abs(vals).max())
        slope = math.nan
        if prev is not None:
            h_prev, top_prev = prev
            if top <= 0.0 or top_prev <= 0.0:
                log.warning("spectral radius underflow at N = %d; slope undefined", n)
            else:
                slope = (math.log(top) - math.log(top_prev)) / (math.log(h) - math.log(h_prev))
        rows.append(NontrapRow(n=n, h=h, top_modulus=top, slope_vs_prev=slope))
        prev = (h, top)
    return rows


def phase_coherence_check(report: SpectrumReport) -> float:
    """Largest |Im mu_k| over k >= 1 after the k = 0 phase normalization."""
    if len(report.abs_imag) <= 1:
        return 0.0
    return float(report.abs_imag[1:].max())
