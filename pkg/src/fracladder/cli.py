"""Command-line front end.

    fracladder <mode> [--config job.json] [--sigma X --rho X --r1 X --c1 X --depth N]
                      [--omega-min X --omega-max X --ppd N] [--out PATH] [--tol-rel X]

Modes: synthesize, bode, exponent, map, verify.  Flags override config-file
fields, which override defaults.  Exit status 0 on success, 1 on invalid
input, 2 on numerical diagnostics; errors go to stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .errors import FracLadderError, NumericalError, ValidationError
from .fracfit import auto_band, fit_power_law
from .ladder import (
    DiffusionProfile,
    FractalParams,
    LadderSpec,
    fractal_from_profile,
    generate_fractal,
    ladder_from_profile,
    profile_from_ladder,
)
from .transfer import BodeTable, bode_sweep

MODES = ("synthesize", "bode", "exponent", "verify", "map")
CSV_HEADER = "omega,re_h,im_h,mag_h,phase_rad"
SCHEMA = 1


@dataclass
class JobConfig:
    mode: str
    fractal: Optional[FractalParams] = None
    profile: Optional[DiffusionProfile] = None
    ladder: Optional[LadderSpec] = None
    depth: Optional[int] = None
    h: Optional[float] = None
    sweep: Optional[tuple[float, float, int]] = None
    band: Optional[tuple[float, float]] = None
    tolerances: dict = field(default_factory=dict)
    output_path: str = ""

    def validate(self):
        if self.mode not in MODES:
            raise ValidationError(f"unknown mode {self.mode!r}; expected one of {MODES}")
        sources = [x for x in (self.fractal, self.profile, self.ladder) if x is not None]
        if self.mode != "verify":
            if len(sources) != 1:
                raise ValidationError("supply exactly one of fractal, profile or ladder")
            if not self.output_path:
                raise ValidationError("output_path (--out) is required")
        if self.mode in ("bode", "exponent") and self.sweep is None:
            raise ValidationError(f"{self.mode} mode requires a sweep")
        if self.mode == "exponent" and self.ladder is not None:
            raise ValidationError("exponent mode needs fractal or profile parameters")
        return self


def fmt(x: float) -> str:
    """Locale-independent 17-significant-digit float text."""
    return "%.17g" % x


def _atomic_write(path: Path, text: str):
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _finite_or_none(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _finite_or_none(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite_or_none(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_finite_or_none(obj), indent=2, sort_keys=True, allow_nan=False) + "\n"


def bode_csv(table: BodeTable) -> str:
    lines = [CSV_HEADER]
    for w, v in zip(table.omegas, table.values):
        v = complex(v)
        lines.append(",".join(fmt(x) for x in (w, v.real, v.imag, abs(v), math.atan2(v.imag, v.real))))
    return "\n".join(lines) + "\n"


def parse_bode_csv(text: str) -> BodeTable:
    rows = text.strip("\n").split("\n")
    if rows[0] != CSV_HEADER:
        raise ValidationError(f"unexpected CSV header {rows[0]!r}")
    om, vals = [], []
    for row in rows[1:]:
        w, re, im, _, _ = (float(x) for x in row.split(","))
        om.append(w)
        vals.append(complex(re, im))
    return BodeTable.from_samples(om, vals)


def netlist(ladder: LadderSpec, header: dict) -> str:
    """Line-oriented RC netlist; node n0 is the driven port, 0 is ground."""
    lines = ["* fracladder RC Cauer ladder"]
    for key in sorted(header):
        lines.append(f"* {key} = {header[key]}")
    for k in range(1, ladder.depth + 1):
        lines.append(f"R{k} n{k - 1} n{k} {fmt(ladder.resistances[k - 1])}")
        lines.append(f"C{k} n{k} 0 {fmt(ladder.capacitances[k - 1])}")
    lines.append(".end")
    return "\n".join(lines) + "\n"


def _header_value(v):
    return fmt(v) if isinstance(v, float) else str(v)


def build_config(args: argparse.Namespace) -> JobConfig:
    raw: dict = {}
    if args.config:
        try:
            raw = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read config {args.config}: {exc}") from exc
    mode = args.mode
    if raw.get("mode", mode) != mode:
        raise ValidationError(f"config mode {raw['mode']!r} conflicts with command {mode!r}")

    fractal = dict(raw.get("fractal") or {})
    for key, flag in (("r1", args.r1), ("c1", args.c1), ("sigma", args.sigma), ("rho", args.rho)):
        if flag is not None:
            fractal[key] = flag
    depth = args.depth if args.depth is not None else raw.get("depth")
    if fractal and (args.depth is not None or "depth" not in fractal) and depth is not None:
        fractal["depth"] = depth

    sweep = raw.get("sweep")
    sweep = dict(sweep) if sweep else {}
    for key, flag in (("omega_min", args.omega_min), ("omega_max", args.omega_max),
                      ("points_per_decade", args.ppd)):
        if flag is not None:
            sweep[key] = flag

    tolerances = dict(raw.get("tolerances") or {})
    if args.tol_rel is not None:
        tolerances["rel"] = args.tol_rel

    try:
        cfg = JobConfig(
            mode=mode,
            fractal=FractalParams.from_dict(fractal) if fractal else None,
            profile=DiffusionProfile.from_dict(raw["profile"]) if raw.get("profile") else None,
            ladder=LadderSpec.from_dict(raw["ladder"]) if raw.get("ladder") else None,
            depth=int(depth) if depth is not None else None,
            h=float(raw["h"]) if raw.get("h") is not None else None,
            sweep=(float(sweep["omega_min"]), float(sweep["omega_max"]),
                   int(sweep["points_per_decade"])) if sweep else None,
            band=tuple(float(x) for x in raw["band"]) if raw.get("band") else None,
            tolerances=tolerances,
            output_path=args.out or raw.get("output_path", ""),
        )
    except KeyError as exc:
        raise ValidationError(f"missing config field {exc}") from exc
    except TypeError as exc:
        raise ValidationError(str(exc)) from exc
    return cfg.validate()


def _network(cfg: JobConfig) -> tuple[LadderSpec, Optional[FractalParams], dict]:
    """Ladder to operate on, its fractal generator when known, and provenance."""
    if cfg.fractal is not None:
        return generate_fractal(cfg.fractal), cfg.fractal, {"fractal": cfg.fractal.to_dict()}
    if cfg.profile is not None:
        if cfg.depth is None:
            raise ValidationError("profile input requires depth")
        return (ladder_from_profile(cfg.profile, cfg.depth),
                fractal_from_profile(cfg.profile, cfg.depth),
                {"profile": cfg.profile.to_dict(), "depth": cfg.depth})
    return cfg.ladder, None, {"ladder": cfg.ladder.to_dict()}


def _sibling(path: str, suffix: str) -> Path:
    p = Path(path)
    return p.with_suffix(suffix) if p.suffix else p.with_name(p.name + suffix)


def run_synthesize(cfg: JobConfig) -> int:
    ladder, _, source = _network(cfg)
    header = {}
    for group in source.values():
        if isinstance(group, dict):
            header.update({k: _header_value(v) for k, v in group.items() if not isinstance(v, list)})
    out = Path(cfg.output_path)
    _atomic_write(_sibling(cfg.output_path, ".cir"), netlist(ladder, header))
    _atomic_write(out, dumps({"schema": SCHEMA, "source": source, "ladder": ladder.to_dict()}))
    return 0


def run_bode(cfg: JobConfig) -> int:
    ladder, _, _ = _network(cfg)
    table = bode_sweep(ladder, *cfg.sweep)
    _atomic_write(Path(cfg.output_path), bode_csv(table))
    if not table.ok.all():
        bad = [i for i, ok in enumerate(table.ok) if not ok]
        raise NumericalError(f"pole diagnostics at grid indices {bad}")
    return 0


def run_exponent(cfg: JobConfig) -> int:
    _, params, source = _network(cfg)
    table = bode_sweep(params, *cfg.sweep)
    if cfg.band is not None:
        band = cfg.band
    else:
        band = auto_band(table, params,
                         min_g_magnitude=float(cfg.tolerances.get("min_g", 10.0)),
                         trunc_rtol=float(cfg.tolerances.get("rel", 1e-3)))
    rep = fit_power_law(table, band, params)
    doc = {"schema": SCHEMA, "source": source, "sweep": list(cfg.sweep)}
    doc.update(rep.to_dict())
    _atomic_write(Path(cfg.output_path), dumps(doc))
    return 0


def run_map(cfg: JobConfig) -> int:
    rtol = float(cfg.tolerances.get("rel", 1e-9))
    if cfg.profile is not None:
        if cfg.depth is None:
            raise ValidationError("map from profile requires depth")
        ladder = ladder_from_profile(cfg.profile, cfg.depth)
        doc = {"schema": SCHEMA, "h": cfg.profile.h, "ladder": ladder.to_dict()}
    else:
        ladder = generate_fractal(cfg.fractal) if cfg.fractal is not None else cfg.ladder
        if cfg.h is None:
            raise ValidationError("map from ladder requires h")
        doc = {"schema": SCHEMA, "profile": profile_from_ladder(ladder, cfg.h, rtol).to_dict(),
               "depth": ladder.depth}
    _atomic_write(Path(cfg.output_path), dumps(doc))
    return 0


def run_verify(cfg: JobConfig) -> int:
    from .verify import report, run_all

    results = run_all(seed=int(cfg.tolerances.get("seed", 20240101)))
    doc = report(results)
    text = dumps(doc)
    if cfg.output_path:
        _atomic_write(Path(cfg.output_path), text)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.name}: worst={r.worst:.3e} tol={r.tolerance:.1e}", file=sys.stderr)
    return 0 if doc["passed"] else 2


RUNNERS = {
    "synthesize": run_synthesize,
    "bode": run_bode,
    "exponent": run_exponent,
    "map": run_map,
    "verify": run_verify,
}


def run(cfg: JobConfig) -> int:
    return RUNNERS[cfg.mode](cfg)


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fracladder", description=__doc__.split("\n\n")[0])
    ap.add_argument("mode", choices=MODES)
    ap.add_argument("--config", help="JSON job file")
    ap.add_argument("--sigma", type=float)
    ap.add_argument("--rho", type=float)
    ap.add_argument("--r1", type=float)
    ap.add_argument("--c1", type=float)
    ap.add_argument("--depth", type=int)
    ap.add_argument("--omega-min", dest="omega_min", type=float)
    ap.add_argument("--omega-max", dest="omega_max", type=float)
    ap.add_argument("--ppd", type=int, help="points per decade")
    ap.add_argument("--out")
    ap.add_argument("--tol-rel", dest="tol_rel", type=float,
                    help="geometric-ratio tolerance (map) or truncation tolerance (exponent)")
    return ap


def _fail(kind: str, exc: Exception, status: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": str(exc), "status": status}) + "\n")
    return status


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return run(build_config(args))
    except NumericalError as exc:
        return _fail(type(exc).__name__, exc, 2)
    except (FracLadderError, ValueError) as exc:
        return _fail(type(exc).__name__, exc, 1)


if __name__ == "__main__":
    sys.exit(main())
