"""otlab: command-line entry point.

Usage:
    otlab analyze  --poly "-1,-1,0,1"
    otlab units    --poly "-1,-1,0,1" --height 3
    otlab classify --poly "-1,-1,0,1"
    otlab geometry --poly "-1,-1,0,1" --samples 100 --seed 0 --tol 1e-9
    otlab density  --poly "-1,-1,0,1" --height 16 --box -1,1 --grid 201 --csv points.csv
    otlab leaf     --poly "-1,-1,0,1" --height 16 --alpha 1
    otlab report   --poly "-1,-1,0,1" --height 8 --out report.json

Exit status: 0 if every check passed, 1 if any failed, 2 on bad input.
Set OTLAB_THREADS to cap the worker threads.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Callable

import numpy as np

from . import __version__, suites
from .density import density_series, leaf_closure_experiment, orbit_projection
from .errors import MaybeNonMaximal, OTLabError
from .geometry import classify
from .number_field import DEFAULT_PRECISION, NumberField, analyze_polynomial, parse_coefficients
from .units import search_units, totally_positive

SCHEMA = "otlab-report/1"

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


@dataclass(frozen=True)
class RunConfig:
    poly: tuple[int, ...]
    height: int = 3
    unit_height: int | None = None
    precision_bits: int = DEFAULT_PRECISION
    samples: int = 100
    seed: int = 0
    tol: float = suites.PULLBACK_TOL
    box: tuple[float, float] | None = None
    grid: int | None = None
    alpha: float = 1.0
    out: str | None = None
    csv: str | None = None
    header: bool = True
    threads: int = 1

    def __post_init__(self):
        for name in ("height", "precision_bits", "samples", "threads"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.seed < 0:
            raise ValueError("seed must be >= 0")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.unit_height is not None and self.unit_height <= 0:
            raise ValueError("unit height must be positive")
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")

    @property
    def units_height(self) -> int:
        return self.unit_height or self.height

    def heights(self) -> tuple[int, ...]:
        """Doubling series ``2, 4, 8, ...`` up to and including ``height``."""
        hs = {h for h in (2**k for k in range(1, self.height.bit_length() + 1)) if h <= self.height}
        hs.add(self.height)
        return tuple(sorted(hs))

    def as_dict(self) -> dict:
        return {
            "poly": list(self.poly),
            "height": self.height,
            "unit_height": self.units_height,
            "precision_bits": self.precision_bits,
            "samples": self.samples,
            "seed": self.seed,
            "tol": self.tol,
            "box": list(self.box) if self.box else None,
            "grid": self.grid,
            "alpha": self.alpha,
        }


# -- deterministic JSON --------------------------------------------------------


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if obj is None or isinstance(obj, str):
        return obj
    return str(obj)


def _emit(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}  {json.dumps(k)}: {_emit(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list)) for v in obj):
            return "[" + ", ".join(_emit(v) for v in obj) + "]"
        items = [pad + "  " + _emit(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return json.dumps(str(obj))
        return "%.17g" % obj
    return json.dumps(obj)


def dumps(obj) -> str:
    """JSON with floats at 17 significant digits and insertion-ordered keys."""
    return _emit(_plain(obj)) + "\n"


# -- report sections -----------------------------------------------------------


def field_summary(fld: NumberField) -> dict:
    emb = fld.embeddings
    return {
        "poly": list(fld.poly),
        "degree": fld.degree,
        "signature": list(fld.signature),
        "discriminant": fld.discriminant,
        "maybe_nonmaximal": fld.maybe_nonmaximal,
        "irreducibility": fld.irreducibility_certificate,
        "real_roots": [float(iv.mid) for iv in emb.real_roots],
        "complex_roots": [[float(d.re), float(d.im)] for d in emb.complex_roots],
    }


def units_section(fld: NumberField, cfg: RunConfig):
    system = search_units(fld, cfg.units_height, cfg.precision_bits)
    admissible = totally_positive(system, fld)
    expected = fld.s + fld.t - 1
    section = {
        "height": system.height,
        "generators": [list(u.int_coords()) for u in system.generators],
        "log_matrix": [[float(v) for v in row] for row in system.log_matrix],
        "rank": system.rank,
        "regulator": system.regulator_estimate,
        "totally_positive_generators": [list(u.int_coords()) for u in admissible.generators],
        "verdict": admissible.verdict,
    }
    checks = {"unit_rank": suites.Check(float(system.rank), 0.0, system.rank == expected, {"expected": expected})}
    return section, checks, admissible


def _monotone_check(series) -> suites.Check:
    radii = [r for _, r in series]
    rise = max((b - a for a, b in zip(radii, radii[1:])), default=0.0)
    return suites.Check(max(rise, 0.0), 0.0, rise <= 0.0, {"strictly_decreasing": all(b < a for a, b in zip(radii, radii[1:]))})


def _box(cfg: RunConfig, s: int):
    return (tuple(cfg.box),) * s if cfg.box else None


def density_section(fld: NumberField, cfg: RunConfig):
    report = density_series(fld, cfg.heights(), _box(cfg, fld.s), cfg.grid, cfg.threads)
    section = {
        "box": [list(b) for b in report.box],
        "grid": report.grid_resolution,
        "covering_radius": report.covering_radius,
        "height_series": [[h, r] for h, r in report.height_series],
    }
    return section, {"density_monotone": _monotone_check(report.height_series)}


def leaf_section(ot, cfg: RunConfig):
    alpha = (cfg.alpha,) * ot.s
    sample, real_rep, cplx_rep = leaf_closure_experiment(
        ot, alpha, cfg.heights(), _box(cfg, ot.s), cfg.grid, workers=cfg.threads
    )
    section = {
        "alpha": list(sample.alpha),
        "real_parts": {
            "box": [list(b) for b in real_rep.box],
            "grid": real_rep.grid_resolution,
            "height_series": [[h, r] for h, r in real_rep.height_series],
        },
        "complex_coordinate": {
            "box": [list(b) for b in cplx_rep.box],
            "grid": cplx_rep.grid_resolution,
            "height_series": [[h, r] for h, r in cplx_rep.height_series],
        },
    }
    checks = {
        "leaf_im_invariance": suites.Check(0.0, 0.0, sample.im_invariant, {"exact": True}),
        "leaf_real_monotone": _monotone_check(real_rep.height_series),
        "leaf_complex_monotone": _monotone_check(cplx_rep.height_series),
    }
    return section, checks


def geometry_checks(ot, admissible, cfg: RunConfig, pool: ThreadPoolExecutor) -> dict:
    s, t = ot.s, ot.t
    jobs: list[Callable[[], dict]] = [
        lambda: suites.plurisubharmonic(s, t, cfg.samples, cfg.seed),
        lambda: suites.weight_spectrum(s, t, cfg.samples, cfg.seed),
        lambda: suites.group_laws(ot, admissible, cfg.samples, cfg.seed),
        lambda: suites.pullbacks(ot, admissible, cfg.samples, cfg.seed, cfg.tol),
    ]
    if t == 1:
        jobs.append(lambda: suites.norm_character(ot, admissible))
        jobs.append(lambda: suites.lck_identities(ot, cfg.samples, cfg.seed))
    out = {}
    for result in pool.map(lambda job: job(), jobs):
        out.update(result)
    return out


def _checks_dict(checks: dict) -> dict:
    return {k: v.as_dict() for k, v in checks.items()}


def _all_pass(checks: dict) -> bool:
    return all(c.passed for c in checks.values())


# -- commands ------------------------------------------------------------------


def _field(cfg: RunConfig) -> NumberField:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", MaybeNonMaximal)
        return analyze_polynomial(cfg.poly, cfg.precision_bits)


def _envelope(cfg: RunConfig, command: str, body: dict, checks: dict) -> dict:
    report = {"schema": SCHEMA, "command": command, "version": __version__, "config": cfg.as_dict()}
    report.update(body)
    if checks:
        report["checks"] = _checks_dict(checks)
    report["verdict"] = "pass" if _all_pass(checks) else "fail"
    report["meta"] = {"timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds")}
    return report


def _write(cfg: RunConfig, report: dict, echo: bool = True) -> None:
    text = dumps(report)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    elif echo:
        sys.stdout.write(text)


def _exit(checks: dict) -> int:
    return EXIT_OK if _all_pass(checks) else EXIT_FAILED


def cmd_analyze(cfg: RunConfig) -> int:
    fld = _field(cfg)
    _write(cfg, _envelope(cfg, "analyze", {"field": field_summary(fld)}, {}))
    return EXIT_OK


def cmd_units(cfg: RunConfig) -> int:
    fld = _field(cfg)
    section, checks, _ = units_section(fld, cfg)
    _write(cfg, _envelope(cfg, "units", {"field": field_summary(fld), "units": section}, checks))
    return _exit(checks)


def cmd_classify(cfg: RunConfig) -> int:
    fld = _field(cfg)
    ot = classify(fld, cfg.precision_bits)
    print(ot.lck_class)
    if cfg.out:
        _write(cfg, _envelope(cfg, "classify", {"field": field_summary(fld), "classification": ot.lck_class}, {}))
    return EXIT_OK


def cmd_geometry(cfg: RunConfig) -> int:
    fld = _field(cfg)
    ot = classify(fld, cfg.precision_bits)
    _, unit_checks, admissible = units_section(fld, cfg)
    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        checks = {**unit_checks, **geometry_checks(ot, admissible, cfg, pool)}
    body = {"field": field_summary(fld), "classification": ot.lck_class, "c0": _c0(checks)}
    _write(cfg, _envelope(cfg, "geometry", body, checks))
    return _exit(checks)


def _c0(checks: dict) -> dict | None:
    c = checks.get("c0_spread")
    if c is None:
        return None
    return {"value": c.extra["c0"], "spread": c.value, "tol": c.tol, "pass": c.passed}


def _write_csv(path: str, header: list[str] | None, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        if header:
            w.writerow(header)
        for row in rows:
            w.writerow(["%.17g" % v for v in row])


def cmd_density(cfg: RunConfig) -> int:
    fld = _field(cfg)
    section, checks = density_section(fld, cfg)
    if cfg.csv:
        cloud = orbit_projection(fld, cfg.height)
        header = [f"sigma_{i + 1}" for i in range(fld.s)] if cfg.header else None
        _write_csv(cfg.csv, header, cloud.points)
    _write(cfg, _envelope(cfg, "density", {"field": field_summary(fld), "density": section}, checks))
    return _exit(checks)


def cmd_leaf(cfg: RunConfig) -> int:
    fld = _field(cfg)
    ot = classify(fld, cfg.precision_bits)
    section, checks = leaf_section(ot, cfg)
    if cfg.csv:
        sample, _, _ = leaf_closure_experiment(ot, (cfg.alpha,) * ot.s, (cfg.height,), _box(cfg, ot.s), cfg.grid,
                                               keep_points=True)
        header = [f"x_{i + 1}" for i in range(ot.s)] + ["re_w", "im_w"] if cfg.header else None
        rows = ([*p.z[: ot.s].real, p.z[ot.s].real, p.z[ot.s].imag] for p in sample.translated_points)
        _write_csv(cfg.csv, header, rows)
    _write(cfg, _envelope(cfg, "leaf", {"field": field_summary(fld), "leaf": section}, checks))
    return _exit(checks)


def cmd_report(cfg: RunConfig) -> int:
    fld = _field(cfg)
    ot = classify(fld, cfg.precision_bits)
    units, unit_checks, admissible = units_section(fld, cfg)
    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        geo = geometry_checks(ot, admissible, cfg, pool)
    density, density_checks = density_section(fld, cfg)
    leaf, leaf_checks = leaf_section(ot, cfg)
    checks = {**unit_checks, **geo, **density_checks, **leaf_checks}
    body = {
        "field": field_summary(fld),
        "units": units,
        "classification": ot.lck_class,
        "c0": _c0(checks),
        "density": density,
        "leaf": leaf,
    }
    _write(cfg, _envelope(cfg, "report", body, checks))
    return _exit(checks)


COMMANDS = {
    "analyze": cmd_analyze,
    "units": cmd_units,
    "classify": cmd_classify,
    "geometry": cmd_geometry,
    "density": cmd_density,
    "leaf": cmd_leaf,
    "report": cmd_report,
}


# -- argument parsing ----------------------------------------------------------


VALUE_FLAGS = ("--poly", "--box")


def _pair(text: str) -> tuple[float, float]:
    parts = [float(p) for p in text.split(",")]
    if len(parts) != 2 or not parts[0] < parts[1]:
        raise argparse.ArgumentTypeError(f"expected 'lo,hi' with lo < hi, got {text!r}")
    return parts[0], parts[1]


def _threads() -> int:
    raw = os.environ.get("OTLAB_THREADS")
    if raw is None:
        return min(4, os.cpu_count() or 1)
    value = int(raw)
    if value <= 0:
        raise ValueError("OTLAB_THREADS must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="otlab", description="OT-manifold data from a number field.")
    parser.add_argument("--version", action="version", version=f"otlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--poly", required=True, help='ascending integer coefficients, e.g. "-1,-1,0,1"')
    common.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="working precision in bits")
    common.add_argument("--out", help="write the JSON report here instead of stdout")

    defaults = {"units": 3, "geometry": 3, "density": 16, "leaf": 16, "report": 8}
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "analyze" or name == "classify":
            continue
        p.add_argument("--height", type=int, default=defaults[name], help="coefficient box half-width")
        if name in ("geometry", "report"):
            p.add_argument("--unit-height", type=int, help="box for the unit search (default: --height)")
            p.add_argument("--samples", type=int, default=100)
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--tol", type=float, default=suites.PULLBACK_TOL, help="pullback tolerance")
        if name in ("density", "leaf", "report"):
            p.add_argument("--box", type=_pair, help="per-axis box 'lo,hi' (default -1,1)")
            p.add_argument("--grid", type=int, help="grid nodes per axis")
        if name in ("leaf", "report"):
            p.add_argument("--alpha", type=float, default=1.0, help="Im of the base point in each real place")
        if name in ("density", "leaf"):
            p.add_argument("--csv", help="dump plot points as CSV")
            p.add_argument("--no-header", action="store_true", help="omit the CSV header row")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        poly=tuple(parse_coefficients(args.poly)),
        height=getattr(args, "height", 3),
        unit_height=getattr(args, "unit_height", None),
        precision_bits=args.precision,
        samples=getattr(args, "samples", 100),
        seed=getattr(args, "seed", 0),
        tol=getattr(args, "tol", suites.PULLBACK_TOL),
        box=getattr(args, "box", None),
        grid=getattr(args, "grid", None),
        alpha=getattr(args, "alpha", 1.0),
        out=args.out,
        csv=getattr(args, "csv", None),
        header=not getattr(args, "no_header", False),
        threads=_threads(),
    )


def _error(exc: Exception) -> int:
    code = getattr(exc, "code", type(exc).__name__)
    sys.stdout.write(dumps({"schema": SCHEMA, "error": {"type": code, "message": str(exc)}}))
    return EXIT_INPUT


def _attach_values(argv: list[str]) -> list[str]:
    """Turn ``--poly -1,-1,0,1`` into ``--poly=-1,-1,0,1``; argparse reads a leading '-' as a flag."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] in VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_attach_values(argv))
    try:
        cfg = config_from_args(args)
        if cfg.grid is not None and cfg.grid < 2:
            raise ValueError("grid must be >= 2")
        return COMMANDS[args.command](cfg)
    except (OTLabError, ValueError) as exc:
        return _error(exc)


if __name__ == "__main__":
    sys.exit(main())
