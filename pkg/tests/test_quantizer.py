import math

import numpy as np
import pytest

from opencat.catmap import ARNOLD, analyze
from opencat.errors import GridTooCoarse, InvalidSpec
from opencat.quantizer import (BumpSpec, TorusSymbol, annulus_profile,
                               bump_profile, make_nontrapping_symbol,
                               make_trapped_symbol, op_left_separable, op_weyl,
                               support_guard, symbol_from_function)

SPEC = BumpSpec("product_bump", 0.10, 0.20)


def mode(k, l, kmax=2, value=1.0):
    t = np.zeros((2 * kmax + 1, 2 * kmax + 1), dtype=complex)
    t[k + kmax, l + kmax] = value
    return TorusSymbol(t, kmax)


def test_bump_spec_validation():
    with pytest.raises(InvalidSpec):
        BumpSpec("product_bump", 0.2, 0.1)
    with pytest.raises(InvalidSpec):
        BumpSpec("annulus_product", 0.2, 0.3)  # 2*r_outer >= 1/2
    with pytest.raises(InvalidSpec):
        BumpSpec("mystery", 0.1, 0.2)


def test_bump_profile_plateau_and_support():
    assert bump_profile(SPEC, 0.0) == 1.0
    assert bump_profile(SPEC, 0.05) == 1.0
    assert bump_profile(SPEC, 0.20) == 0.0
    assert bump_profile(SPEC, 0.35) == 0.0
    assert bump_profile(SPEC, 0.15) == pytest.approx(0.5, abs=1e-14)
    xs = np.linspace(0.10, 0.20, 101)
    vals = bump_profile(SPEC, xs)
    assert (np.diff(vals) <= 1e-15).all()  # monotone on the transition
    assert bump_profile(SPEC, -0.13) == bump_profile(SPEC, 0.13)


def test_annulus_profile_shape():
    spec = BumpSpec("annulus_product", 0.15, 0.24)
    assert annulus_profile(spec, 0.0) == 0.0
    assert annulus_profile(spec, 0.05) == 0.0
    assert annulus_profile(spec, 0.13) == 1.0  # rho=1, rho(2x)=0 at 0.26 > r_outer
    assert annulus_profile(spec, 0.30) == 0.0
    spec2 = BumpSpec("annulus_product", 0.15, 0.249)
    assert annulus_profile(spec2, 0.15) == pytest.approx(1.0, abs=1e-15)


def test_symbol_constant():
    sym = symbol_from_function(lambda x, xi: np.ones_like(x), k_max=4, grid=32)
    assert sym.coeff(0, 0) == pytest.approx(1.0, abs=1e-14)
    table = sym.table.copy()
    table[4, 4] = 0.0
    assert np.abs(table).max() < 1e-14


def test_symbol_cosine():
    sym = symbol_from_function(lambda x, xi: np.cos(2 * np.pi * x), k_max=4, grid=32)
    assert sym.coeff(1, 0) == pytest.approx(0.5, abs=1e-13)
    assert sym.coeff(-1, 0) == pytest.approx(0.5, abs=1e-13)
    assert abs(sym.coeff(0, 1)) < 1e-14


def test_symbol_grid_too_coarse():
    with pytest.raises(GridTooCoarse):
        symbol_from_function(lambda x, xi: x, k_max=16, grid=32)


def test_bump_symbol_tail_below_tolerance():
    _, _, sym = make_trapped_symbol(SPEC, k_max=40, grid=256)
    shell = np.concatenate([np.abs(sym.table[0]), np.abs(sym.table[-1]),
                            np.abs(sym.table[:, 0]), np.abs(sym.table[:, -1])])
    assert shell.max() < 1e-10


def test_trapped_symbol_values_and_reality():
    # k_max = 32 truncates the bump's Fourier tail at the ~1e-3 level
    f, g, sym = make_trapped_symbol(SPEC, k_max=32, grid=256)
    assert sym.value(0.0, 0.0).real == pytest.approx(1.0, abs=2e-3)
    assert abs(sym.value(0.4, 0.0)) < 2e-3
    assert sym.hermitian_defect() < 1e-12
    assert np.abs(sym.table.imag).max() < 1e-12  # even in each variable


def test_nontrapping_symbol_profile():
    spec = BumpSpec("annulus_product", 0.15, 0.24)
    f, g, sym = make_nontrapping_symbol(spec, k_max=32, grid=256)
    assert f(0.0) == 0.0
    assert f(0.30) == 0.0
    assert sym.hermitian_defect() < 1e-12
    with pytest.raises(InvalidSpec):
        make_nontrapping_symbol(SPEC)


def test_op_weyl_identity():
    sym = mode(0, 0)
    for n in (4, 9, 16):
        assert np.abs(op_weyl(sym, n) - np.eye(n)).max() < 1e-14


def test_op_weyl_position_mode():
    a = op_weyl(mode(1, 0), 8)
    assert np.abs(a - np.diag(np.exp(2j * np.pi * np.arange(8) / 8))).max() < 1e-13


def test_op_weyl_momentum_mode():
    a = op_weyl(mode(0, 1), 8)
    shift = np.zeros((8, 8))
    shift[np.arange(8), (np.arange(8) + 1) % 8] = 1.0
    assert np.abs(a - shift).max() < 1e-13


def test_op_weyl_zero_symbol():
    z = TorusSymbol(np.zeros((5, 5), dtype=complex), 2)
    assert np.abs(op_weyl(z, 16)).max() == 0.0


def test_op_weyl_linear():
    rng = np.random.default_rng(11)
    t1 = rng.standard_normal((7, 7)) + 1j * rng.standard_normal((7, 7))
    t2 = rng.standard_normal((7, 7)) + 1j * rng.standard_normal((7, 7))
    a, b = 0.7 - 0.2j, -1.3 + 0.5j
    combo = op_weyl(TorusSymbol(a * t1 + b * t2, 3), 12)
    parts = a * op_weyl(TorusSymbol(t1.copy(), 3), 12) + b * op_weyl(TorusSymbol(t2.copy(), 3), 12)
    assert np.abs(combo - parts).max() < 1e-12


def test_op_weyl_hermitian_for_real_bump():
    _, _, sym = make_trapped_symbol(SPEC, k_max=32, grid=256)
    a = op_weyl(sym, 64)
    assert np.abs(a - a.conj().T).max() < 1e-11


def test_op_left_identity_and_position():
    one = lambda x: np.ones_like(np.asarray(x, dtype=float))
    assert np.abs(op_left_separable(one, one, 16) - np.eye(16)).max() < 1e-13
    cos = lambda x: np.cos(2 * np.pi * np.asarray(x, dtype=float))
    a = op_left_separable(cos, one, 16)
    assert np.abs(a - np.diag(np.cos(2 * np.pi * np.arange(16) / 16))).max() < 1e-13


def test_disjoint_supports_shrink():
    inner = BumpSpec("product_bump", 0.05, 0.10)

    def boxbump(cx):
        return lambda x, xi: bump_profile(inner, x - cx) * bump_profile(inner, xi)

    left = symbol_from_function(boxbump(-0.25), k_max=48, grid=512)
    right = symbol_from_function(boxbump(0.25), k_max=48, grid=512)
    norms = {n: np.linalg.norm(op_weyl(left, n) @ op_weyl(right, n), 2)
             for n in (64, 256)}
    assert norms[256] < norms[64]


def test_left_weyl_consistency_first_order():
    f, g, sym = make_trapped_symbol(SPEC)
    diff = {n: np.linalg.norm(op_left_separable(f, g, n) - op_weyl(sym, n), 2)
            for n in (128, 256)}
    assert 1.3 <= diff[128] / diff[256] <= 3.0


def test_support_guard():
    an = analyze(ARNOLD)
    ok = support_guard(BumpSpec("product_bump", 0.02, 0.05), an, c=0.25)
    assert ok["ok"]
    bad = support_guard(BumpSpec("product_bump", 0.10, 0.25), an, c=0.25)
    assert not bad["ok"]
    assert support_guard(SPEC, an, c=0.5)["radius_limit"] == pytest.approx(
        2 * support_guard(SPEC, an, c=0.25)["radius_limit"], rel=1e-12)
