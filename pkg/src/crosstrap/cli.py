"""Command-line entry point.

Verbs: characterize, scan, sweep, table2, presets.  Exit codes: 0 ok,
2 configuration error, 3 no trap for the given parameters.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.constants import k as k_B

from . import __version__
from .analysis import find_minimum, minima_map
from .config_io import config_sha256, load_config
from .errors import ConfigError, NoTrap, TrapModelError
from .grids import grid_to_csv, grid_to_json
from .potential import PLANES, AXIS_DIRECTIONS, grid_scan, line_scan
from .presets import PRESET_NAMES, list_presets, load_preset, preset_text
from .report import characterize

_UK = k_B * 1e-6

TABLE2_ROWS = (
    ("rib width (um)", lambda c, r: f"{c.geometry.rib_width * 1e6:g}"),
    ("blue; red wavelength (nm)",
     lambda c, r: f"{c.blue.wavelength * 1e9:g}; {c.red.wavelength * 1e9:g}"),
    ("I_b; I_r (1e9 W/m^2)",
     lambda c, r: f"{c.blue.mode_i.peak_surface_intensity / 1e9:g}; "
                  f"{c.red.mode_i.peak_surface_intensity / 1e9:g}"),
    ("trap depth x /k_B (uK)", lambda c, r: f"{r.depth_x / _UK:.1f}"),
    ("trap depth y,z /k_B (uK)", lambda c, r: f"{r.depth_yz / _UK:.1f}"),
    ("trap depth l /k_B (uK)", lambda c, r: f"{r.depth_l / _UK:.2f}"),
    ("scattering rate blue (1/s)", lambda c, r: f"{r.gamma_scat_blue:.2f}"),
    ("scattering rate red (1/s)", lambda c, r: f"{r.gamma_scat_red:.2f}"),
    ("tunnelling rate l (1/s)",
     lambda c, r: "0" if r.tunnelling_l.rate_table == 0.0
     else f"{r.tunnelling_l.rate_table:.3g}"),
)


@dataclass
class RunManifest:
    """What a CLI invocation did, written next to its outputs."""

    command: str
    config_name: str
    config_sha256: str
    outputs: list

    def write(self, out_dir):
        path = Path(out_dir) / f"{self.config_name}_manifest.json"
        doc = dataclasses.asdict(self)
        with open(path, "w", newline="\n") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
        return path


def _resolve_config(args):
    if getattr(args, "config", None):
        config = load_config(args.config)
    elif getattr(args, "preset", None):
        config = load_preset(args.preset)
    else:
        raise ConfigError("give --preset NAME or --config PATH")
    if getattr(args, "fringe", None):
        config = _with_fringe(config, args.fringe)
    return config


def _with_fringe(config, model):
    def retag(pair):
        mode = dataclasses.replace(pair.mode_i, fringe_model=model)
        return dataclasses.replace(pair, mode_i=mode, mode_ii=mode)

    return dataclasses.replace(config, blue=retag(config.blue), red=retag(config.red))


def _report_lines(report):
    d = report.to_dict()
    pos = d["min_position_nm"]
    tau = d["coherence_time_s"]
    rows = [
        ("minimum position (nm)",
         f"x={pos['x']:.1f}  y={pos['y']:.1f}  z={pos['z']:.1f}"),
        ("minimum energy (uK)", f"{d['min_energy_uK']:.2f}"),
        ("trap depth x (uK)", f"{d['depths_uK']['x']:.2f}"),
        ("trap depth y,z (uK)", f"{d['depths_uK']['yz']:.2f}"),
        ("trap depth l (uK)", f"{d['depths_uK']['l']:.2f}"),
        ("trap depth t (uK)", f"{d['depths_uK']['t']:.2f}"),
        ("f_x (kHz)", f"{d['frequencies_kHz']['x']:.1f}"),
        ("f_y (kHz)", f"{d['frequencies_kHz']['y']:.2f}"),
        ("f_z (kHz)", f"{d['frequencies_kHz']['z']:.2f}"),
        ("aspect ratio w_x/w_y", f"{d['aspect_ratio_xy']:.1f}"),
        ("avg diag f_l; f_t (kHz)",
         f"{report.omega_bar_l / (2 * math.pi) / 1e3:.2f}; "
         f"{report.omega_bar_t / (2 * math.pi) / 1e3:.2f}"),
        ("tunnelling rate l (1/s)",
         f"{d['tunnelling_l']['rate_table_per_s']:g} "
         f"(raw {d['tunnelling_l']['rate_per_s']:.3g})"),
        ("scattering blue; red (1/s)",
         f"{d['scattering_per_s']['blue']:.3f}; {d['scattering_per_s']['red']:.3f}"),
        ("coherence time (s)", "inf" if tau is None else f"{tau:.3f}"),
    ]
    width = max(len(k) for k, _ in rows)
    return [f"{k:<{width}}  {v}" for k, v in rows]


def cmd_characterize(args):
    config = _resolve_config(args)
    report = characterize(config)
    print(f"configuration {config.name} ({config_sha256(config)[:12]})")
    for line in _report_lines(report):
        print(line)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        path = out / f"{config.name}_report.json"
        with open(path, "w", newline="\n") as fh:
            json.dump(report.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
        RunManifest("characterize", config.name, report.config_sha256,
                    [path.name]).write(out)
        print(f"wrote {path}")
    return 0


def _default_span(config):
    w_max = max(config.blue.mode_i.lateral_width, config.red.mode_i.lateral_width)
    return config.geometry.rib_width / 2.0 + 2.5 * w_max


def _write_grid(grid, out_dir, stem, fmt):
    out_dir.mkdir(parents=True, exist_ok=True)
    outputs = []
    if fmt in ("csv", "both"):
        path = out_dir / f"{stem}.csv"
        grid_to_csv(grid, path)
        outputs.append(path.name)
    if fmt in ("json", "both"):
        path = out_dir / f"{stem}.json"
        grid_to_json(grid, path)
        outputs.append(path.name)
    return outputs


def cmd_scan(args):
    config = _resolve_config(args)
    sha = config_sha256(config)
    meta = {"config_sha256": sha, "config_name": config.name}
    out = Path(args.out)
    n = args.resolution
    span = args.span * 1e-6 if args.span else _default_span(config)
    outputs = []
    if args.kind == "plane":
        if args.plane is None:
            raise ConfigError("scan --kind plane needs --plane", field="plane")
        if args.plane == "y0z":
            if args.at_x is not None:
                fixed = args.at_x * 1e-9
            else:
                (fixed, _, _), _ = find_minimum(config)
            grid = grid_scan(config, args.plane, (-span, span), (-span, span),
                             (n, n), fixed=fixed, metadata=meta)
        else:
            x_lo, x_hi = 50e-9, 600e-9
            grid = grid_scan(config, args.plane, (-span, span), (x_lo, x_hi),
                             (n, n), fixed=0.0, metadata=meta)
        outputs += _write_grid(grid, out, f"{config.name}_{args.plane}", args.format)
    elif args.kind == "axis":
        if args.axis is None:
            raise ConfigError("scan --kind axis needs --axis", field="axis")
        (x0, y0, z0), _ = find_minimum(config)
        if args.axis == "x":
            start, direction, length = (50e-9, y0, z0), (1.0, 0.0, 0.0), 550e-9
        else:
            dx, dy, dz = AXIS_DIRECTIONS[args.axis]
            start = (x0, y0 - span * dy, z0 - span * dz)
            direction, length = (0.0, dy, dz), 2.0 * span
        grid = line_scan(config, start, direction, length, n, metadata=meta)
        outputs += _write_grid(grid, out, f"{config.name}_{args.axis}_axis", args.format)
    else:  # minima
        if args.axis in ("l", "t"):
            from .analysis import channel_profile, diagonal_scan, trap_depths
            (x0, y0, z0), energy = find_minimum(config)
            plus = channel_profile(config, args.axis, 1, (y0, z0), span)
            minus = channel_profile(config, args.axis, -1, (y0, z0), span)
            grid = diagonal_scan(plus, minus)
            grid.metadata.update(meta)
            outputs += _write_grid(grid, out, f"{config.name}_min_{args.axis}",
                                   args.format)
        else:
            u_grid, x_grid = minima_map(config, (-span, span), (-span, span), (n, n))
            u_grid.metadata.update(meta)
            x_grid.metadata.update(meta)
            outputs += _write_grid(u_grid, out, f"{config.name}_minmap_U", args.format)
            outputs += _write_grid(x_grid, out, f"{config.name}_minmap_x", args.format)
    RunManifest("scan", config.name, sha, outputs).write(out)
    for name in outputs:
        print(f"wrote {out / name}")
    return 0


_SWEEP_FIELDS = (
    "status", "x_min_nm", "u_min_uK", "depth_x_uK", "depth_yz_uK", "depth_l_uK",
    "f_x_kHz", "f_y_kHz", "aspect_ratio", "gamma_blue_per_s", "gamma_red_per_s",
    "coherence_s",
)


def _scale_intensities(config, blue_scale, red_scale):
    def scale(pair, s):
        m = pair.mode_i
        mode = dataclasses.replace(
            m,
            peak_surface_intensity=m.peak_surface_intensity * s,
            power=m.power * s if m.power is not None else None,
        )
        return dataclasses.replace(pair, mode_i=mode, mode_ii=mode)

    return dataclasses.replace(
        config,
        blue=scale(config.blue, blue_scale),
        red=scale(config.red, red_scale),
    )


def cmd_sweep(args):
    config = _resolve_config(args)
    if args.steps < 1:
        raise ConfigError("sweep needs at least one step", field="steps")
    values = np.linspace(args.start, args.stop, args.steps)
    rows = []
    for v in values:
        blue_s = v if args.param in ("intensity_scale", "blue_scale") else 1.0
        red_s = v if args.param in ("intensity_scale", "red_scale") else 1.0
        scaled = _scale_intensities(config, blue_s, red_s)
        scaled = dataclasses.replace(scaled, name=f"{config.name}")
        try:
            r = characterize(scaled)
            rows.append((v, dict(
                status="ok",
                x_min_nm=r.min_position[0] * 1e9,
                u_min_uK=r.min_energy / _UK,
                depth_x_uK=r.depth_x / _UK,
                depth_yz_uK=r.depth_yz / _UK,
                depth_l_uK=r.depth_l / _UK,
                f_x_kHz=r.omega_x / (2 * math.pi) / 1e3,
                f_y_kHz=r.omega_y / (2 * math.pi) / 1e3,
                aspect_ratio=r.aspect_ratio_xy,
                gamma_blue_per_s=r.gamma_scat_blue,
                gamma_red_per_s=r.gamma_scat_red,
                coherence_s=r.coherence_time,
            )))
        except TrapModelError as exc:
            rows.append((v, {"status": type(exc).__name__}))
    lines = ["param_value," + ",".join(_SWEEP_FIELDS)]
    for v, row in rows:
        cells = [f"{v:.9g}"]
        for key in _SWEEP_FIELDS:
            val = row.get(key, "")
            cells.append(val if isinstance(val, str) else f"{val:.9g}")
        lines.append(",".join(cells))
    text = "\n".join(lines) + "\n"
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        path = out / f"{config.name}_sweep_{args.param}.csv"
        path.write_text(text, newline="\n")
        RunManifest("sweep", config.name, config_sha256(config),
                    [path.name]).write(out)
        print(f"wrote {path}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_table2(args):
    names = args.presets.split(",") if args.presets else list(PRESET_NAMES)
    configs, reports = [], []
    for name in names:
        config = load_preset(name)
        configs.append(config)
        reports.append(characterize(config))
    header = ["configuration"] + [c.name for c in configs]
    body = [[label] + [fn(c, r) for c, r in zip(configs, reports)]
            for label, fn in TABLE2_ROWS]
    if args.format == "csv":
        lines = [",".join(header)] + [",".join(row) for row in body]
    else:
        widths = [max(len(row[i]) for row in [header] + body)
                  for i in range(len(header))]
        def fmt(row):
            return "| " + " | ".join(c.ljust(w) for c, w in zip(row, widths)) + " |"
        lines = [fmt(header),
                 "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
        lines += [fmt(row) for row in body]
    text = "\n".join(lines) + "\n"
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        ext = "csv" if args.format == "csv" else "md"
        path = out / f"table2.{ext}"
        path.write_text(text, newline="\n")
        print(f"wrote {path}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_presets(args):
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for name in list_presets():
            path = out / f"{name}.json"
            path.write_text(preset_text(name), newline="")
            print(f"wrote {path}")
        return 0
    for name in list_presets():
        config = load_preset(name)
        print(f"{name}: rib {config.geometry.rib_width * 1e6:g} um, "
              f"{config.blue.wavelength * 1e9:g}/{config.red.wavelength * 1e9:g} nm, "
              f"I_b {config.blue.mode_i.peak_surface_intensity:.3g} W/m^2, "
              f"I_r {config.red.mode_i.peak_surface_intensity:.3g} W/m^2")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="crosstrap",
        description="Crossed-waveguide evanescent-wave trap calculator",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_out=False):
        p.add_argument("--preset", choices=PRESET_NAMES)
        p.add_argument("--config", metavar="PATH")
        p.add_argument("--fringe", choices=("none", "static", "smeared"))
        if needs_out:
            p.add_argument("--out", required=True, metavar="DIR")
        else:
            p.add_argument("--out", metavar="DIR")

    p = sub.add_parser("characterize", help="full trap report for one config")
    common(p)
    p.set_defaults(fn=cmd_characterize)

    p = sub.add_parser("scan", help="export potential grids")
    common(p, needs_out=True)
    p.add_argument("--kind", choices=("plane", "axis", "minima"), default="plane")
    p.add_argument("--plane", choices=PLANES)
    p.add_argument("--axis", choices=("x", "y", "z", "l", "t"))
    p.add_argument("--resolution", type=int, default=121)
    p.add_argument("--span", type=float, help="lateral half-span in um")
    p.add_argument("--at-x", type=float, dest="at_x",
                   help="height of the y0z plane in nm")
    p.add_argument("--format", choices=("csv", "json", "both"), default="csv")
    p.set_defaults(fn=cmd_scan)

    p = sub.add_parser("sweep", help="characterize over a parameter range")
    common(p)
    p.add_argument("--param", default="intensity_scale",
                   choices=("intensity_scale", "blue_scale", "red_scale"))
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("table2", help="summary table over the bundled presets")
    p.add_argument("--presets", metavar="NAMES", help="comma-separated subset")
    p.add_argument("--format", choices=("markdown", "csv"), default="markdown")
    p.add_argument("--out", metavar="DIR")
    p.set_defaults(fn=cmd_table2)

    p = sub.add_parser("presets", help="list or export the bundled presets")
    p.add_argument("--out", metavar="DIR")
    p.set_defaults(fn=cmd_presets)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except NoTrap as exc:
        print(f"no trap: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
