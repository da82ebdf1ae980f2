import math

import numpy as np
import pytest

from opencat.catmap import ARNOLD
from opencat.errors import DegeneratePhase
from opencat.experiments import (DEFAULT_NONTRAP_SPEC, DEFAULT_TRAPPED_SPEC,
                                 build_open_operator, nontrapping_sweep,
                                 phase_coherence_check, spectrum_report,
                                 theorem_targets, trapped_sweep)

GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0


def test_theorem_targets_arnold():
    targets = theorem_targets(ARNOLD, 4)
    assert np.allclose(targets, [0.6180340, 0.2360680, 0.0901699, 0.0344419],
                       atol=5e-8)
    assert np.allclose(targets, GOLDEN ** -(2 * np.arange(4) + 1), rtol=1e-13)
    lam = (3 + math.sqrt(5)) / 2
    assert np.allclose(targets[1:] / targets[:-1], 1 / lam, rtol=1e-12)


def test_open_operator_with_unit_cutoff_is_unitary():
    from opencat.quantizer import op_left_separable
    from opencat.metaplectic import quantize_map
    one = lambda x: np.ones_like(np.asarray(x, dtype=float))
    a = op_left_separable(one, one, 64) @ quantize_map(ARNOLD, 64)
    assert np.abs(np.abs(np.linalg.eigvals(a)) - 1.0).max() < 1e-9


def test_open_operator_warns_outside_guard():
    with pytest.warns(UserWarning):
        build_open_operator(ARNOLD, DEFAULT_TRAPPED_SPEC, 32)


def test_degenerate_phase():
    from opencat.metaplectic import quantize_map
    with pytest.raises(DegeneratePhase):
        quantize_map(ARNOLD, 16, phase="leading_real_positive",
                     chi=np.zeros((16, 16)))


def test_trapped_sweep_rows_and_report():
    rows, reports = trapped_sweep(ARNOLD, DEFAULT_TRAPPED_SPEC, [64, 128],
                                  k_count=3)
    assert len(rows) == 6
    assert [(r.n, r.k) for r in rows] == [(64, 0), (64, 1), (64, 2),
                                          (128, 0), (128, 1), (128, 2)]
    for r in rows:
        assert r.h == pytest.approx(1.0 / (2 * math.pi * r.n), rel=1e-14)
        assert r.abs_err == pytest.approx(abs(r.modulus - r.target), abs=1e-14)
    rep = reports[-1]
    assert len(rep.eigenvalues) == 128
    assert (np.diff(rep.targets) < 0).all()
    # leading eigenvalue already close at N = 128
    assert rows[3].abs_err < 1e-2


def test_trapped_sweep_k_count_zero():
    rows, reports = trapped_sweep(ARNOLD, DEFAULT_TRAPPED_SPEC, [32], k_count=0,
                                  phase="none")
    assert rows == []


def test_nontrapping_synthetic_h2():
    n_list = [64, 128, 256]
    radii = [(1.0 / (2 * math.pi * n)) ** 2 for n in n_list]
    rows = nontrapping_sweep(ARNOLD, DEFAULT_NONTRAP_SPEC, n_list, radii=radii)
    assert math.isnan(rows[0].slope_vs_prev)
    assert rows[1].slope_vs_prev == pytest.approx(2.0, rel=1e-12)
    assert rows[2].slope_vs_prev == pytest.approx(2.0, rel=1e-12)


def test_nontrapping_synthetic_superpolynomial():
    # keep 1/h below ~700 so exp(-1/h) stays above the float underflow floor
    n_list = [8, 16, 32, 64]
    hs = [1.0 / (2 * math.pi * n) for n in n_list]
    rows = nontrapping_sweep(ARNOLD, DEFAULT_NONTRAP_SPEC, n_list,
                             radii=[math.exp(-1.0 / h) for h in hs])
    slopes = [r.slope_vs_prev for r in rows[1:]]
    assert all(b > a for a, b in zip(slopes, slopes[1:]))


def test_nontrapping_real_small():
    rows = nontrapping_sweep(ARNOLD, DEFAULT_NONTRAP_SPEC, [64, 128])
    assert rows[1].top_modulus < rows[0].top_modulus
    assert rows[1].slope_vs_prev > 0


def test_nontrapping_requires_annulus():
    with pytest.raises(ValueError):
        nontrapping_sweep(ARNOLD, DEFAULT_TRAPPED_SPEC, [64])


def test_phase_coherence_vacuous_and_synthetic():
    rep = spectrum_report(ARNOLD, np.diag([0.6, 0.2, 0.1, 0.05]), 4, k_count=1)
    assert phase_coherence_check(rep) == 0.0
    rep4 = spectrum_report(ARNOLD, np.diag([0.6, 0.2, 0.1, 0.05]), 4, k_count=4)
    assert phase_coherence_check(rep4) == 0.0


def test_moduli_invariant_under_conventions():
    n = 64
    base = np.abs(np.linalg.eigvals(build_open_operator(
        ARNOLD, DEFAULT_TRAPPED_SPEC, n)))
    base = np.sort(base)[::-1][:4]
    normed = np.abs(np.linalg.eigvals(build_open_operator(
        ARNOLD, DEFAULT_TRAPPED_SPEC, n, phase="leading_real_positive")))
    normed = np.sort(normed)[::-1][:4]
    word2 = [("U", 1), ("L", 1)]
    other = np.abs(np.linalg.eigvals(build_open_operator(
        ARNOLD, DEFAULT_TRAPPED_SPEC, n, word=word2)))
    other = np.sort(other)[::-1][:4]
    assert np.abs(base - normed).max() < 1e-9
    assert np.abs(base - other).max() < 1e-9
