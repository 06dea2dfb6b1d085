"""Command-line front end: evaluate, cross-validate, animate, sweep identities.

Exit codes: 0 success, 1 verification/identity tolerance failure, 2 config
error, 3 numerical failure.  All error text goes to stderr.

CSV files carry the header ``coordinate,re,im,abs2`` with floats printed to
17 significant digits, so a reloaded file reproduces binary64 values exactly
and byte-identical reruns are guaranteed for identical config and seed.
"""

from __future__ import annotations

import argparse
import cmath
import hashlib
import json
import math
import os
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import closedform, dynamics, fockexp, identities, operator_engine
from .core import (OscillatorFrame, SampledWavefunction, SqueezedCoherentSpec,
                   SqueezeLabError, TWO_PI, TruncationWarning,
                   max_normalized_deviation, quadrature_integrate)

EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    spec: SqueezedCoherentSpec
    frame: OscillatorFrame
    grid_min: float = -10.0
    grid_max: float = 10.0
    grid_points: int = 201
    truncation: int = 400
    tol: float = 1e-6
    out_format: str = "csv"
    out: str = "squeezelab_out"
    seed: int = 12345
    frames: int = 16
    period_fraction: float = 1.0
    series_terms: int = 250
    threads: int = field(default=1)


def _fmt(x: float) -> str:
    return "%.17g" % x


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace("i", "j").replace(" ", ""))
    except ValueError as exc:
        raise ConfigError(f"cannot parse complex number {text!r}") from exc


def build_config(args: argparse.Namespace) -> RunConfig:
    frame = OscillatorFrame(mass=args.mass, omega=args.omega, hbar=args.hbar)
    have_xp = args.x0 is not None or args.p0 is not None
    if args.alpha is not None:
        alpha = _parse_complex(args.alpha)
        spec = SqueezedCoherentSpec.from_alpha(args.r, args.phi, alpha, frame)
        if have_xp:
            x0 = args.x0 if args.x0 is not None else 0.0
            p0 = args.p0 if args.p0 is not None else 0.0
            scale = max(abs(spec.x0), abs(spec.p0), 1.0)
            if abs(spec.x0 - x0) > 1e-9 * scale or abs(spec.p0 - p0) > 1e-9 * scale:
                raise ConfigError("--alpha and --x0/--p0 disagree; give one of them")
    else:
        spec = SqueezedCoherentSpec(r=args.r, phi=args.phi,
                                    x0=args.x0 or 0.0, p0=args.p0 or 0.0)
    if args.grid_points < 2:
        raise ConfigError("--grid-points must be at least 2")
    if args.grid_max <= args.grid_min:
        raise ConfigError("--grid-max must exceed --grid-min")
    if args.tol <= 0:
        raise ConfigError("--tol must be positive")
    if args.truncation < 2:
        raise ConfigError("--truncation must be at least 2")
    if args.frames < 1:
        raise ConfigError("--frames must be at least 1")
    if args.out_format not in ("csv", "json"):
        raise ConfigError("--format must be csv or json")
    threads = int(os.environ.get("SQUEEZELAB_THREADS", "1"))
    return RunConfig(
        spec=spec, frame=frame,
        grid_min=args.grid_min, grid_max=args.grid_max, grid_points=args.grid_points,
        truncation=args.truncation, tol=args.tol,
        out_format=args.out_format, out=args.out, seed=args.seed,
        frames=args.frames, period_fraction=args.period_fraction,
        threads=max(1, threads),
    )


def _spec_dict(config: RunConfig) -> dict:
    s, f = config.spec, config.frame
    return {
        "r": s.r, "phi": s.phi, "x0": s.x0, "p0": s.p0,
        "alpha_re": s.alpha(f).real, "alpha_im": s.alpha(f).imag,
    }


def _frame_dict(frame: OscillatorFrame) -> dict:
    return {"mass": frame.mass, "omega": frame.omega, "hbar": frame.hbar}


def spec_hash(config: RunConfig) -> str:
    payload = {
        "spec": _spec_dict(config),
        "frame": _frame_dict(config.frame),
        "grid": [config.grid_min, config.grid_max, config.grid_points],
        "frames": config.frames,
        "period_fraction": config.period_fraction,
        "seed": config.seed,
    }
    blob = json.dumps(payload, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


# ---------------------------------------------------------------------------
# sampled-waveform I/O

def write_wavefunction_csv(path, sw: SampledWavefunction):
    with open(path, "w", newline="") as fh:
        fh.write("coordinate,re,im,abs2\n")
        for u, v in zip(sw.grid, sw.values):
            fh.write(f"{_fmt(u)},{_fmt(v.real)},{_fmt(v.imag)},{_fmt(abs(v) ** 2)}\n")


def read_wavefunction_csv(path, kind="position", meta=None) -> SampledWavefunction:
    grid, values = [], []
    with open(path) as fh:
        header = fh.readline().strip()
        if header != "coordinate,re,im,abs2":
            raise ValueError(f"unexpected CSV header {header!r}")
        for line in fh:
            u, re_, im_, _ = line.strip().split(",")
            grid.append(float(u))
            values.append(complex(float(re_), float(im_)))
    return SampledWavefunction(kind=kind, grid=np.array(grid),
                               values=np.array(values), meta=meta or {})


def _write_wavefunction_json(path, sw: SampledWavefunction):
    payload = {
        "kind": sw.kind,
        "coordinate": [float(u) for u in sw.grid],
        "re": [float(v.real) for v in sw.values],
        "im": [float(v.imag) for v in sw.values],
        "abs2": [float(abs(v) ** 2) for v in sw.values],
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, sort_keys=True, indent=1)
        fh.write("\n")


def _emit(path_base: str, sw: SampledWavefunction, out_format: str) -> str:
    path = f"{path_base}.{out_format}"
    if out_format == "csv":
        write_wavefunction_csv(path, sw)
    else:
        _write_wavefunction_json(path, sw)
    return path


# ---------------------------------------------------------------------------
# subcommands

def cmd_eval(config: RunConfig) -> int:
    """Sample the closed-form waveforms; write data files plus a JSON sidecar."""
    spec, frame = config.spec, config.frame
    units = np.linspace(config.grid_min, config.grid_max, config.grid_points)
    gx = closedform.position_wavefunction(spec, frame)
    gp = closedform.momentum_wavefunction(spec, frame)
    meta = {"method": "closedform", "time": 0.0, "spec": _spec_dict(config)}
    pos = SampledWavefunction("position", units * frame.x_scale,
                              gx(units * frame.x_scale), meta)
    mom = SampledWavefunction("momentum", units * frame.p_scale,
                              gp(units * frame.p_scale), meta)

    # quadrature cross-check of the closed-form norm at the configured tol
    lo, hi = pos.grid[0], pos.grid[-1]
    quad_norm = quadrature_integrate(lambda x: np.abs(gx(x)) ** 2, (lo, hi),
                                     min(config.tol, 1e-8)).real

    files = {
        "position": _emit(f"{config.out}_position", pos, config.out_format),
        "momentum": _emit(f"{config.out}_momentum", mom, config.out_format),
    }
    unc = closedform.uncertainties(spec, frame)
    sidecar = {
        "spec": _spec_dict(config),
        "frame": _frame_dict(frame),
        "method": "closedform",
        "files": files,
        "norm": closedform.position_wavefunction(spec, frame).norm,
        "quadrature_norm": quad_norm,
        "uncertainties": {
            "delta_x": unc.delta_x, "delta_p": unc.delta_p,
            "product": unc.product, "is_minimal": unc.is_minimal,
        },
        "spec_hash": spec_hash(config),
    }
    with open(f"{config.out}_meta.json", "w") as fh:
        json.dump(sidecar, fh, sort_keys=True, indent=1)
        fh.write("\n")
    return EXIT_OK


def run_method_triangle(config: RunConfig) -> dict:
    """Closed form vs series limit vs operator synthesis on one grid."""
    spec, frame = config.spec, config.frame
    units = np.linspace(config.grid_min, config.grid_max, config.grid_points)
    grid = spec.x0 + units * frame.x_scale

    closed_vals = closedform.position_wavefunction(spec, frame)(grid)
    series_vals = np.array([
        fockexp.series_wavefunction(spec, frame, x, config.series_terms).limit
        for x in grid
    ])
    caught = []
    with warnings.catch_warnings(record=True) as rec:
        warnings.simplefilter("always")
        vec = operator_engine.squeezed_coherent_vector(spec, config.truncation, frame)
        op_vals = operator_engine.synthesize_wavefunction(vec, grid, frame).values
        caught = [str(w.message) for w in rec if issubclass(w.category, TruncationWarning)]

    dev = {
        "series_vs_closed": max_normalized_deviation(closed_vals, series_vals),
        "operator_vs_closed": max_normalized_deviation(closed_vals, op_vals),
        "series_vs_operator": max_normalized_deviation(series_vals, op_vals),
    }
    return {
        "spec": _spec_dict(config),
        "frame": _frame_dict(config.frame),
        "truncation": config.truncation,
        "series_terms": config.series_terms,
        "tolerance": config.tol,
        "deviations": dev,
        "warnings": caught,
        "pass": all(v <= config.tol for v in dev.values()),
    }


def cmd_verify(config: RunConfig) -> int:
    report = run_method_triangle(config)
    with open(f"{config.out}_verify.json", "w") as fh:
        json.dump(report, fh, sort_keys=True, indent=1)
        fh.write("\n")
    if not report["pass"]:
        worst = max(report["deviations"].items(), key=lambda kv: kv[1])
        print(f"verify failed: {worst[0]} = {worst[1]:.3e} > tol {config.tol:g}",
              file=sys.stderr)
        for msg in report["warnings"]:
            print(f"warning: {msg}", file=sys.stderr)
        return EXIT_TOLERANCE
    return EXIT_OK


def cmd_animate(config: RunConfig) -> int:
    """One CSV pair per frame plus a manifest; file naming frame_%05d."""
    spec, frame = config.spec, config.frame
    period = TWO_PI / frame.omega
    span = config.period_fraction * period
    count = config.frames
    times = [span * k / (count - 1) for k in range(count)] if count > 1 else [0.0]
    units = np.linspace(config.grid_min, config.grid_max, config.grid_points)

    def build(t):
        return dynamics.animation_frames(spec, frame, [t], units, units)[0]

    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            frames = list(pool.map(build, times))
    else:
        frames = [build(t) for t in times]

    manifest = {
        "spec": _spec_dict(config),
        "frame": _frame_dict(frame),
        "times": list(times),
        "bands": [],
        "global_phase": [],
        "spec_hash": spec_hash(config),
        "files": [],
    }
    for i, fr in enumerate(frames):
        fx = _emit(f"{config.out}_frame_{i:05d}", fr.position, config.out_format)
        fp = _emit(f"{config.out}_frame_{i:05d}_momentum", fr.momentum, config.out_format)
        manifest["files"].append({"position": fx, "momentum": fp})
        manifest["bands"].append({"x": list(fr.x_band), "p": list(fr.p_band)})
        manifest["global_phase"].append([fr.global_phase.real, fr.global_phase.imag])
    with open(f"{config.out}_manifest.json", "w") as fh:
        json.dump(manifest, fh, sort_keys=True, indent=1)
        fh.write("\n")
    return EXIT_OK


# Fock-space identity checks compare only guarded low-occupation blocks.
# Guards were calibrated against the truncation-reflection and cancellation
# floors at N = 300, r <= 1.5: disentangling reconstructions are clean to
# ~1e-11 on n < 32 while mid blocks degrade rapidly.  Growing directions of
# the shifted-quadratic generators (|1 + sign*t| < 1) have no N -> infinity
# limit at all (the quadratic form diverges) and are excluded; they are
# covered by the finite-representation cells instead.
FOCK_DISENTANGLE_GUARD = 32
FOCK_GENERAL_GUARD = 64


def _identity_cells(rep_name: str, rep, rng, draws: int, r_max: float, tol: float):
    """Residual row of the identity table for one representation."""
    cells = {}
    fock = rep_name == "fock"
    guard_dis = FOCK_DISENTANGLE_GUARD if fock else None
    guard_gen = FOCK_GENERAL_GUARD if fock else None

    def draw_params():
        return rng.uniform(0.0, r_max), rng.uniform(0.0, TWO_PI)

    worst = {"disentangle_squeeze": 0.0, "disentangle_minus": 0.0,
             "disentangle_plus": 0.0}
    for _ in range(draws):
        r, phi = draw_params()
        xi = r * cmath.exp(1j * phi)
        co = identities.disentangle_squeeze(xi)
        lhs = identities.matrix_exponential(identities.squeeze_generator(xi, rep))
        worst["disentangle_squeeze"] = max(
            worst["disentangle_squeeze"],
            identities.entry_residual(lhs, identities.ordered_product(co, rep), guard_dis))
        t = cmath.exp(1j * phi) * math.tanh(r)
        for sign, key in ((-1, "disentangle_minus"), (1, "disentangle_plus")):
            if fock and abs(1.0 + sign * t) < 1.0:
                continue
            co = identities.disentangle_shifted_quadratic(sign, phi, r)
            gen = identities.shifted_quadratic_generator(sign, phi, r, rep)
            lhs = identities.matrix_exponential(gen)
            worst[key] = max(
                worst[key],
                identities.entry_residual(lhs, identities.ordered_product(co, rep), guard_dis))
    for key, resid in worst.items():
        cells[key] = {"residual": resid, "tol": tol, "pass": resid <= tol}

    # reordering holds for arbitrary generators; draw bounded K combinations
    worst_re = 0.0
    for _ in range(max(3, draws // 20)):
        ca = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        cb = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        A = 0.3 * (ca[0] * rep.k_plus + ca[1] * rep.k_zero + ca[2] * rep.k_minus)
        B = 0.3 * (cb[0] * rep.k_plus + cb[1] * rep.k_zero + cb[2] * rep.k_minus)
        coeffs = rng.standard_normal(3)
        worst_re = max(worst_re, identities.exponential_reordering_check(
            A, B, coeffs, guard_gen))
    cells["reordering"] = {"residual": worst_re, "tol": tol, "pass": worst_re <= tol}

    if fock:
        # Weyl pair: position/momentum-like linear combinations of a, a^dag
        N = rep.dim
        a, ad = operator_engine.ladder_matrices(N)
        A = 0.4 * (a.matrix + ad.matrix)
        B = 0.3j * (a.matrix - ad.matrix)
        resid = identities.weyl_bch_check(A, B, block=guard_gen)
        cells["weyl_bch"] = {"residual": resid, "tol": tol, "pass": resid <= tol}
        # squeeze conjugation vs the cosh/sinh closed form, via e^A B e^{-A}
        r, phi = 0.5, rng.uniform(0.0, TWO_PI)
        xi = r * cmath.exp(1j * phi)
        gen = identities.squeeze_generator(xi, rep)
        conj = identities.exponential_conjugation(gen, a.matrix)
        target = math.cosh(r) * a.matrix + cmath.exp(1j * phi) * math.sinh(r) * ad.matrix
        resid = identities.entry_residual(conj, target, guard_dis)
        cells["hadamard_squeeze"] = {"residual": resid, "tol": tol, "pass": resid <= tol}
    elif rep_name == "3x3":
        worst_w = 0.0
        for _ in range(max(3, draws // 20)):
            vals = rng.standard_normal(6)
            A = np.array([[0, vals[0], vals[1]], [0, 0, vals[2]], [0, 0, 0]], dtype=complex)
            B = np.array([[0, vals[3], vals[4]], [0, 0, vals[5]], [0, 0, 0]], dtype=complex)
            worst_w = max(worst_w, identities.weyl_bch_check(A, B))
        cells["weyl_bch"] = {"residual": worst_w, "tol": tol, "pass": worst_w <= tol}
    else:
        # no nontrivial Weyl pair exists in 2x2; check the degenerate A = B case
        A = 0.7 * rep.k_minus
        resid = identities.weyl_bch_check(A, A)
        cells["weyl_bch"] = {"residual": resid, "tol": tol, "pass": resid <= tol}
        worst_c = 0.0
        for _ in range(draws):
            r, phi = draw_params()
            if r == 0:
                continue
            worst_c = max(worst_c, identities.closed_exponential_check(
                r * cmath.exp(1j * phi)))
        cells["closed_exponential"] = {"residual": worst_c, "tol": tol,
                                       "pass": worst_c <= tol}
    return cells


def cmd_identities(config: RunConfig, draws: int = 200, fock_draws: int = 3) -> int:
    """Residual table over representations x identities; exit 1 on any failure."""
    rng = np.random.default_rng(config.seed)
    N = config.truncation
    table = {
        "2x2": _identity_cells("2x2", identities.symplectic_rep(2), rng,
                               draws, 3.0, 1e-12),
        "3x3": _identity_cells("3x3", identities.symplectic_rep(3), rng,
                               draws, 3.0, 1e-12),
        "fock": _identity_cells("fock", identities.symplectic_rep("fock", N), rng,
                                fock_draws, 1.5, 1e-9),
    }
    ok = all(cell["pass"] for row in table.values() for cell in row.values())
    report = {
        "seed": config.seed, "draws": draws, "fock_draws": fock_draws,
        "truncation": N, "guard_block": FOCK_DISENTANGLE_GUARD,
        "cells": table, "pass": ok,
    }
    with open(f"{config.out}_identities.json", "w") as fh:
        json.dump(report, fh, sort_keys=True, indent=1)
        fh.write("\n")
    if not ok:
        failing = [(rep, name) for rep, row in table.items()
                   for name, cell in row.items() if not cell["pass"]]
        print(f"identity cells failed: {failing}", file=sys.stderr)
        return EXIT_TOLERANCE
    return EXIT_OK


# ---------------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--r", type=float, default=0.0, help="squeeze magnitude")
    p.add_argument("--phi", type=float, default=0.0, help="squeeze angle (rad)")
    p.add_argument("--x0", type=float, default=None, help="mean position")
    p.add_argument("--p0", type=float, default=None, help="mean momentum")
    p.add_argument("--alpha", type=str, default=None,
                   help="displacement as a complex number, e.g. 3+3i")
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--grid-min", dest="grid_min", type=float, default=-10.0,
                   help="grid start in natural units of the coordinate")
    p.add_argument("--grid-max", dest="grid_max", type=float, default=10.0)
    p.add_argument("--grid-points", dest="grid_points", type=int, default=201)
    p.add_argument("--truncation", type=int, default=400)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--format", dest="out_format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", type=str, default="squeezelab_out")
    p.add_argument("--seed", type=int, default=12345)
    p.add_argument("--frames", type=int, default=16)
    p.add_argument("--period-fraction", dest="period_fraction", type=float, default=1.0)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="squeezelab",
        description="Squeezed-coherent oscillator states: evaluation, "
                    "cross-validation, animation data, identity sweeps.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (("eval", "sample the closed-form waveforms"),
                       ("verify", "cross-validate the three evaluation methods"),
                       ("animate", "emit animation frame data over a period"),
                       ("identities", "sweep the operator-identity residual table")):
        p = sub.add_parser(name, help=text)
        _add_common(p)
        if name == "identities":
            p.add_argument("--draws", type=int, default=200)
            p.add_argument("--fock-draws", dest="fock_draws", type=int, default=3)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        config = build_config(args)
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "eval":
            return cmd_eval(config)
        if args.command == "verify":
            return cmd_verify(config)
        if args.command == "animate":
            return cmd_animate(config)
        if args.command == "identities":
            return cmd_identities(config, draws=args.draws, fock_draws=args.fock_draws)
        raise AssertionError(f"unhandled command {args.command}")
    except SqueezeLabError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
