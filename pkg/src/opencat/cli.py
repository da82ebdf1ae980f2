"""Command-line front end: run the experiments, write CSV and optional SVG.

Subcommands: trapped, nontrapping, classical, verify.  A JSON config file
carries the experiment description; CSV is the artifact of record (17
significant digits so reruns are diffable), SVG plots are a convenience.
"""

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import hn
from .catmap import CatMap, analyze, escape_check, guard_radius
from .eigensolver import (char_poly_roots, eigenvalues, multiset_distance,
                          sort_by_modulus)
from .errors import OpenCatError
from .experiments import nontrapping_sweep, trapped_sweep
from .metaplectic import (egorov_residual, factor_sl2z, letter_matrix,
                          quantize_word, set_debug_mismatch_dft)
from .quantizer import (BumpSpec, TorusSymbol, make_trapped_symbol, op_weyl,
                        symbol_from_function)

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

_CONFIG_KEYS = {"matrix", "n_list", "cutoff", "quantization", "phase",
                "k_count", "k_max", "grid", "out_csv", "out_svg", "seed"}
_CUTOFF_KEYS = {"kind", "r_inner", "r_outer"}


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    matrix: CatMap
    n_list: list
    cutoff: BumpSpec
    quantization: str = "left"
    phase: str = "leading"
    k_count: int = 4
    k_max: int = 48
    grid: int = 512
    out_csv: str | None = None
    out_svg: str | None = None
    seed: int = 0

    @property
    def phase_mode(self) -> str:
        return "leading_real_positive" if self.phase == "leading" else "none"


def load_config(path: str) -> RunConfig:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}")
    return parse_config(raw)


def parse_config(raw: dict) -> RunConfig:
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    for key in ("matrix", "n_list", "cutoff"):
        if key not in raw:
            raise ConfigError(f"missing config key {key!r}")
    mat = raw["matrix"]
    if len(mat) != 4 or any(int(v) != v for v in mat):
        raise ConfigError("matrix must be 4 integers [a, b, c, d]")
    try:
        m = CatMap(*(int(v) for v in mat))
        analyze(m)
    except OpenCatError as exc:
        raise ConfigError(f"bad matrix: {exc}")
    n_list = [int(n) for n in raw["n_list"]]
    if not n_list or any(n % 2 or n < 2 for n in n_list):
        raise ConfigError("n_list must be nonempty, even, positive")
    if n_list != sorted(n_list):
        raise ConfigError("n_list must be ascending")
    cut = raw["cutoff"]
    if set(cut) != _CUTOFF_KEYS:
        raise ConfigError(f"cutoff needs exactly keys {sorted(_CUTOFF_KEYS)}")
    try:
        spec = BumpSpec(cut["kind"], float(cut["r_inner"]), float(cut["r_outer"]))
    except OpenCatError as exc:
        raise ConfigError(f"bad cutoff: {exc}")
    quant = raw.get("quantization", "left")
    if quant not in ("left", "weyl"):
        raise ConfigError("quantization must be 'left' or 'weyl'")
    phase = raw.get("phase", "leading")
    if phase not in ("none", "leading"):
        raise ConfigError("phase must be 'none' or 'leading'")
    k_count = int(raw.get("k_count", 4))
    if k_count < 1:
        raise ConfigError("k_count must be >= 1")
    k_max = int(raw.get("k_max", 48))
    grid = int(raw.get("grid", 512))
    if grid < 4 * k_max:
        raise ConfigError("grid must be >= 4 * k_max")
    return RunConfig(matrix=m, n_list=n_list, cutoff=spec, quantization=quant,
                     phase=phase, k_count=k_count, k_max=k_max, grid=grid,
                     out_csv=raw.get("out_csv"), out_svg=raw.get("out_svg"),
                     seed=int(raw.get("seed", 0)))


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_csv(path: str, header: str, rows) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


# ---------------------------------------------------------------- SVG output

def _svg_document(width, height, body) -> str:
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
            f'height="{height}" viewBox="0 0 {width} {height}">\n'
            f'<rect width="{width}" height="{height}" fill="white"/>\n'
            + body + "</svg>\n")


def _polyline(points, color, dashed=False) -> str:
    pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in points)
    dash = ' stroke-dasharray="6,4"' if dashed else ""
    return (f'<polyline fill="none" stroke="{color}" stroke-width="1.5"'
            f'{dash} points="{pts}"/>\n')


_COLORS = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
           "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"]


def _axis_map(vals, lo_px, hi_px):
    vmin, vmax = min(vals), max(vals)
    if vmax == vmin:
        vmax = vmin + 1.0
    return lambda v: lo_px + (v - vmin) / (vmax - vmin) * (hi_px - lo_px)


def write_trapped_svg(path, rows, targets) -> None:
    """Per-k series of Re mu_k against N, dotted horizontal target lines."""
    w, h, pad = 640, 420, 50
    ns = sorted({r.n for r in rows})
    res = [r.re for r in rows] + list(targets)
    xm = _axis_map(ns, pad, w - pad)
    ym = _axis_map(res, h - pad, pad)
    body = ""
    k_count = len(targets)
    for k in range(k_count):
        series = [(xm(r.n), ym(r.re)) for r in rows if r.k == k]
        body += _polyline(series, _COLORS[k % len(_COLORS)])
        body += _polyline([(pad, ym(targets[k])), (w - pad, ym(targets[k]))],
                          _COLORS[k % len(_COLORS)], dashed=True)
    with open(path, "w") as fh:
        fh.write(_svg_document(w, h, body))


def write_nontrapping_svg(path, rows) -> None:
    """Log-log plot of the spectral radius against h."""
    w, h, pad = 640, 420, 50
    pts = [(math.log10(r.h), math.log10(r.top_modulus))
           for r in rows if r.top_modulus > 0]
    if not pts:
        pts = [(0.0, 0.0)]
    xm = _axis_map([p[0] for p in pts], pad, w - pad)
    ym = _axis_map([p[1] for p in pts], h - pad, pad)
    body = _polyline([(xm(x), ym(y)) for x, y in pts], _COLORS[0])
    with open(path, "w") as fh:
        fh.write(_svg_document(w, h, body))


# --------------------------------------------------------------- subcommands

def cmd_trapped(config: RunConfig) -> int:
    if config.out_csv is None:
        print("config error: out_csv is required", file=sys.stderr)
        return EXIT_CONFIG
    if config.cutoff.kind != "product_bump":
        print("config error: trapped run needs a product_bump cutoff", file=sys.stderr)
        return EXIT_CONFIG
    try:
        rows, reports = trapped_sweep(
            config.matrix, config.cutoff, config.n_list,
            quant=config.quantization, k_count=config.k_count,
            phase=config.phase_mode, k_max=config.k_max, grid=config.grid)
    except OpenCatError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    _write_csv(config.out_csv, "N,h,k,re,im,modulus,target,abs_err",
               ([str(r.n), _fmt(r.h), str(r.k), _fmt(r.re), _fmt(r.im),
                 _fmt(r.modulus), _fmt(r.target), _fmt(r.abs_err)]
                for r in rows))
    if config.out_svg:
        targets = reports[0].targets if reports else []
        write_trapped_svg(config.out_svg, rows, targets)
    return EXIT_OK


def cmd_nontrapping(config: RunConfig, synthetic_h2: bool = False) -> int:
    if config.out_csv is None:
        print("config error: out_csv is required", file=sys.stderr)
        return EXIT_CONFIG
    if config.cutoff.kind != "annulus_product":
        print("config error: nontrapping run needs an annulus_product cutoff",
              file=sys.stderr)
        return EXIT_CONFIG
    radii = None
    if synthetic_h2:
        radii = [(1.0 / (2.0 * math.pi * n)) ** 2 for n in config.n_list]
    try:
        rows = nontrapping_sweep(config.matrix, config.cutoff, config.n_list,
                                 quant=config.quantization, k_max=config.k_max,
                                 grid=config.grid, radii=radii)
    except OpenCatError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    _write_csv(config.out_csv, "N,h,top_modulus,slope_vs_prev",
               ([str(r.n), _fmt(r.h), _fmt(r.top_modulus),
                 "" if math.isnan(r.slope_vs_prev) else _fmt(r.slope_vs_prev)]
                for r in rows))
    if config.out_svg:
        write_nontrapping_svg(config.out_svg, rows)
    return EXIT_OK


def cmd_classical(config: RunConfig, q_max: int, radius: float | None) -> int:
    if config.out_csv is None:
        print("config error: out_csv is required", file=sys.stderr)
        return EXIT_CONFIG
    if radius is None:
        radius = guard_radius(analyze(config.matrix))
    try:
        report = escape_check(config.matrix, radius, q_max)
    except OpenCatError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    _write_csv(config.out_csv, "q,num_orbits,min_orbit_max_norm,all_escape",
               ([str(q), str(num), _fmt(norm), str(report.all_escape).lower()]
                for q, num, norm in report.per_q))
    print(f"all_escape={str(report.all_escape).lower()} "
          f"(radius={radius:.6g}, q_max={q_max})")
    if report.witness is not None:
        pts = " ".join(f"({p.x_num}/{p.q},{p.y_num}/{p.q})" for p in report.witness)
        print(f"witness orbit: {pts}")
    return EXIT_OK


def _verify_checks(config: RunConfig):
    """Yield (name, passed, measure) for the cross-module invariant suite."""
    dims = [32, 64, 128]
    for n in dims:
        f = hn.dft_matrix(n)
        defect = np.abs(f.conj().T @ f - np.eye(n)).max()
        yield f"dft_unitary_N{n}", defect < 1e-13, defect
    for n in dims:
        word = factor_sl2z(config.matrix)
        u = quantize_word(word, n)
        defect = np.abs(u.conj().T @ u - np.eye(n)).max()
        yield f"map_unitary_N{n}", defect < 1e-10, defect
    k = 3
    table = np.zeros((2 * k + 1, 2 * k + 1), dtype=complex)
    table[k + 1, k] = table[k - 1, k] = 0.5
    table[k, k + 1] = table[k, k - 1] = 0.5
    sym = TorusSymbol(table, k)
    for n in (32, 64):
        res = egorov_residual(config.matrix, sym, n)
        yield f"egorov_N{n}", res < 1e-8, res
    # Per-generator residuals with single plane waves pin every sign
    # convention; the full-word residual alone can miss a flipped Fourier
    # kernel because the mismatched letters may cancel along the word.
    modes = []
    for k_mode, l_mode in ((1, 0), (0, 1)):
        t = np.zeros((3, 3), dtype=complex)
        t[1 + k_mode, 1 + l_mode] = 1.0
        modes.append(TorusSymbol(t, 1))
    for letter in (("S",), ("S_INV",), ("U", 1), ("L", 1)):
        g = letter_matrix(letter)
        gm = CatMap(int(g[0, 0]), int(g[0, 1]), int(g[1, 0]), int(g[1, 1]))
        res = max(egorov_residual(gm, mode, 32, word=[letter])
                  for mode in modes)
        name = letter[0] if len(letter) == 1 else f"{letter[0]}{letter[1]}"
        yield f"egorov_gen_{name}", res < 1e-8, res
    one = np.zeros((3, 3), dtype=complex)
    one[1, 1] = 1.0
    defect = np.abs(op_weyl(TorusSymbol(one, 1), 64) - np.eye(64)).max()
    yield "op_weyl_identity", defect < 1e-13, defect
    _, _, bump = make_trapped_symbol(BumpSpec("product_bump", 0.10, 0.20),
                                     k_max=config.k_max, grid=config.grid)
    a = op_weyl(bump, 64)
    defect = np.abs(a - a.conj().T).max()
    yield "weyl_hermitian", defect < 1e-11, defect
    rng = np.random.default_rng(config.seed)
    worst = 0.0
    for _ in range(20):
        mat = rng.uniform(-1, 1, (6, 6)) + 1j * rng.uniform(-1, 1, (6, 6))
        worst = max(worst, multiset_distance(char_poly_roots(mat),
                                             eigenvalues(mat).values))
    yield "eigensolver_oracle", worst < 1e-6, worst


def cmd_verify(config: RunConfig, flip_dft: bool = False) -> int:
    if flip_dft:
        set_debug_mismatch_dft(True)
    try:
        failures = 0
        for name, passed, measure in _verify_checks(config):
            verdict = "PASS" if passed else "FAIL"
            failures += not passed
            print(f"{verdict}  {name}  ({measure:.3e})")
    finally:
        set_debug_mismatch_dft(False)
    return EXIT_OK if failures == 0 else EXIT_VERIFY_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="opencat",
        description="Spectra of open quantum cat maps on the quantized torus")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("trapped", "nontrapping", "classical", "verify"):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="JSON run configuration")
        if name == "classical":
            p.add_argument("--q-max", type=int, default=60)
            p.add_argument("--radius", type=float, default=None,
                           help="ball radius in (0, 1/2]; default: guard radius")
        if name == "nontrapping":
            p.add_argument("--synthetic-h2", action="store_true",
                           help="self-test: replace spectral radii with h^2")
        if name == "verify":
            p.add_argument("--debug-flip-dft", action="store_true",
                           help="flip the DFT sign; Egorov checks must FAIL")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.command == "trapped":
        return cmd_trapped(config)
    if args.command == "nontrapping":
        return cmd_nontrapping(config, synthetic_h2=args.synthetic_h2)
    if args.command == "classical":
        return cmd_classical(config, q_max=args.q_max, radius=args.radius)
    if args.command == "verify":
        return cmd_verify(config, flip_dft=args.debug_flip_dft)
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
