"""Command-line front end.

    phasekit <command> --config PATH | --inline JSON [--out PATH] [--format csv|json]

Commands: two-slit, ab, quantize, hydrogen, fit-kappa. Exit status is 0 on
success, 1 for invalid input and 2 when a computation fails.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path as FsPath
from typing import Any, Optional

from .core import FringePattern, ModelParams, QuantizationProblem, Rule
from .errors import NumericalError, ParseError, PhaseKitError, ValidationError
from .fields import IdealSolenoid
from .interference import ABGeometry, TwoSlitGeometry, ab_pattern, extract_kappa_details, pattern
from .potentials import CoulombCircular, Harmonic, LinearWell, Tabulated
from .quantization import hydrogen_circular_levels, quantize_level

COMMANDS = ("two-slit", "ab", "quantize", "hydrogen", "fit-kappa")
FORMATS = ("csv", "json")

_COMMON_KEYS = {"command", "kappa", "mass", "charge", "coulomb_constant", "output", "output_path", "units"}
_COMMAND_KEYS = {
    "two-slit": {"geometry", "momentum"},
    "ab": {"geometry", "momentum", "solenoid"},
    "quantize": {"potential", "rule", "n"},
    "hydrogen": {"n_max"},
    "fit-kappa": {"geometry", "momentum", "pattern_csv"},
}
_GEOMETRY_KEYS = {"source", "slit_a", "slit_b", "screen_x", "screen_span", "n_samples"}
_SOLENOID_KEYS = {"center", "flux", "core_radius"}
_UNIT_KEYS = {"system", "length", "energy", "action"}


@dataclass
class RunConfig:
    command: str
    params: ModelParams
    output: str = "csv"
    output_path: Optional[str] = None
    units: dict = field(default_factory=lambda: {"length": 1.0, "energy": 1.0, "action": 1.0})
    geometry: Optional[TwoSlitGeometry] = None
    momentum: Optional[float] = None
    solenoid: Optional[IdealSolenoid] = None
    potential: Any = None
    rule: Rule = Rule.HALF_INTEGER
    levels: tuple = ()
    n_max: Optional[int] = None
    pattern_csv: Optional[FsPath] = None
    raw: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        """Validated config with every default filled in."""
        out: dict[str, Any] = {"command": self.command, **self.params.as_dict()}
        out["output"] = self.output
        out["units"] = dict(self.units)
        if self.geometry is not None:
            out["geometry"] = self.geometry.describe()
            out["momentum"] = self.momentum
        if self.solenoid is not None:
            sol = self.solenoid.describe()
            sol.pop("type")
            out["solenoid"] = sol
        if self.potential is not None:
            out["potential"] = self.potential.describe()
            out["rule"] = self.rule.value
            out["n"] = list(self.levels)
        if self.n_max is not None:
            out["n_max"] = self.n_max
        if self.pattern_csv is not None:
            out["pattern_csv"] = self.raw.get("pattern_csv")
        return out


def _reject_constant(name):
    raise ValidationError("config", f"non-finite number {name} is not allowed")


def _load_json(text: str) -> Any:
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def _check_keys(block: dict, allowed: set, where: str) -> None:
    if not isinstance(block, dict):
        raise ValidationError(where, "must be a JSON object")
    unknown = sorted(set(block) - allowed)
    if unknown:
        raise ValidationError(f"{where}.{unknown[0]}" if where else unknown[0], "unknown key")


def _number(block: dict, key: str, where: str, default=None) -> float:
    if key not in block:
        if default is None:
            raise ValidationError(f"{where}{key}", "is required")
        return default
    value = block[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ValidationError(f"{where}{key}", f"must be a finite number, got {value!r}")
    return float(value)


def _integer(value, name: str, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ValidationError(name, f"must be an integer >= {minimum}, got {value!r}")
    return value


def _pair(value, name: str) -> list[float]:
    if (
        not isinstance(value, list)
        or len(value) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v) for v in value)
    ):
        raise ValidationError(name, f"must be a list of two finite numbers, got {value!r}")
    return [float(v) for v in value]


def _geometry(block: Any) -> TwoSlitGeometry:
    if block is None:
        raise ValidationError("geometry", "is required")
    _check_keys(block, _GEOMETRY_KEYS, "geometry")
    for key in ("source", "slit_a", "slit_b", "screen_span"):
        if key not in block:
            raise ValidationError(f"geometry.{key}", "is required")
    try:
        return TwoSlitGeometry(
            source=_pair(block["source"], "geometry.source"),
            slit_a=_pair(block["slit_a"], "geometry.slit_a"),
            slit_b=_pair(block["slit_b"], "geometry.slit_b"),
            screen_x=_number(block, "screen_x", "geometry."),
            screen_span=tuple(_pair(block["screen_span"], "geometry.screen_span")),
            n_samples=_integer(block.get("n_samples", 512), "geometry.n_samples", 8),
        )
    except ValidationError as exc:
        if exc.field.startswith("geometry"):
            raise
        raise ValidationError(f"geometry.{exc.field}", exc.constraint) from None


def _momentum(doc: dict) -> float:
    p = _number(doc, "momentum", "")
    if p <= 0:
        raise ValidationError("momentum", f"must be > 0, got {p!r}")
    return p


def _potential(block: Any):
    if not isinstance(block, dict) or len(block) != 1:
        raise ValidationError("potential", "must be an object with exactly one potential kind")
    (kind, spec), = block.items()
    where = f"potential.{kind}."
    if kind == "harmonic":
        _check_keys(spec, {"omega"}, f"potential.{kind}")
        omega = _number(spec, "omega", where)
        if omega <= 0:
            raise ValidationError(f"{where}omega", "must be > 0")
        return Harmonic(omega)
    if kind == "linear-well":
        _check_keys(spec, {"slope"}, f"potential.{kind}")
        slope = _number(spec, "slope", where)
        if slope <= 0:
            raise ValidationError(f"{where}slope", "must be > 0")
        return LinearWell(slope)
    if kind == "coulomb-circular":
        _check_keys(spec, set(), f"potential.{kind}")
        return CoulombCircular()
    if kind == "tabulated":
        _check_keys(spec, {"x", "V"}, f"potential.{kind}")
        xs, vs = spec.get("x"), spec.get("V")
        for name, vals in (("x", xs), ("V", vs)):
            if not isinstance(vals, list) or not all(
                isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v) for v in vals
            ):
                raise ValidationError(f"{where}{name}", "must be a list of finite numbers")
        try:
            return Tabulated(xs, vs)
        except ValidationError as exc:
            raise ValidationError(f"{where}{exc.field}", exc.constraint) from None
    raise ValidationError("potential", f"unknown kind {kind!r}")


def _units(block: Any) -> dict:
    if block is None:
        return {"length": 1.0, "energy": 1.0, "action": 1.0}
    _check_keys(block, _UNIT_KEYS, "units")
    if "system" in block and not isinstance(block["system"], str):
        raise ValidationError("units.system", "must be a string label")
    out = {}
    for key in ("length", "energy", "action"):
        out[key] = _number(block, key, "units.", 1.0)
        if out[key] <= 0:
            raise ValidationError(f"units.{key}", "must be > 0")
    return out


def parse_config(text: str, command: Optional[str] = None, base_dir: Optional[FsPath] = None) -> RunConfig:
    """Parse and validate a JSON run configuration.

    ``command`` (from the command line) fills in a missing "command" key and
    must agree with it when both are given. Relative ``pattern_csv`` paths
    resolve against ``base_dir``.
    """
    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise ValidationError("config", "must be a JSON object")
    if command is not None:
        if "command" in doc and doc["command"] != command:
            raise ValidationError("command", f"config says {doc['command']!r}, command line says {command!r}")
        doc = {**doc, "command": command}
    if "command" not in doc:
        raise ValidationError("command", "is required")
    cmd = doc["command"]
    if cmd not in COMMANDS:
        raise ValidationError("command", f"must be one of {', '.join(COMMANDS)}, got {cmd!r}")
    _check_keys(doc, _COMMON_KEYS | _COMMAND_KEYS[cmd], "")

    try:
        params = ModelParams(
            kappa=_number(doc, "kappa", "", 1.0),
            mass=_number(doc, "mass", "", 1.0),
            charge=_number(doc, "charge", "", 1.0),
            coulomb_constant=_number(doc, "coulomb_constant", "", 1.0),
        )
    except ValidationError as exc:
        raise ValidationError(exc.field, exc.constraint) from None
    output = doc.get("output", "csv")
    if output not in FORMATS:
        raise ValidationError("output", f"must be csv or json, got {output!r}")
    output_path = doc.get("output_path")
    if output_path is not None and not isinstance(output_path, str):
        raise ValidationError("output_path", "must be a string")

    cfg = RunConfig(cmd, params, output, output_path, _units(doc.get("units")))
    if cmd in ("two-slit", "ab", "fit-kappa"):
        cfg.geometry = _geometry(doc.get("geometry"))
        cfg.momentum = _momentum(doc)
    if cmd == "ab":
        block = doc.get("solenoid")
        if block is None:
            raise ValidationError("solenoid", "is required")
        _check_keys(block, _SOLENOID_KEYS, "solenoid")
        if "center" not in block:
            raise ValidationError("solenoid.center", "is required")
        try:
            cfg.solenoid = IdealSolenoid(
                _pair(block["center"], "solenoid.center"),
                _number(block, "flux", "solenoid."),
                _number(block, "core_radius", "solenoid."),
            )
        except ValidationError as exc:
            if exc.field.startswith("solenoid"):
                raise
            raise ValidationError(f"solenoid.{exc.field}", exc.constraint) from None
        ABGeometry(cfg.geometry, cfg.solenoid)
    if cmd == "quantize":
        cfg.potential = _potential(doc.get("potential"))
        try:
            cfg.rule = Rule(doc.get("rule", "half-integer"))
        except ValueError:
            raise ValidationError("rule", "must be 'integer' or 'half-integer'") from None
        n = doc.get("n", 0)
        levels = n if isinstance(n, list) else [n]
        if not levels:
            raise ValidationError("n", "must list at least one level")
        cfg.levels = tuple(_integer(v, "n", 0) for v in levels)
    if cmd == "hydrogen":
        cfg.n_max = _integer(doc.get("n_max", 1), "n_max", 1)
        if params.charge == 0:
            raise ValidationError("charge", "must be nonzero for hydrogen")
    if cmd == "fit-kappa" and "pattern_csv" in doc:
        if not isinstance(doc["pattern_csv"], str):
            raise ValidationError("pattern_csv", "must be a path string")
        path = FsPath(doc["pattern_csv"])
        cfg.pattern_csv = path if path.is_absolute() or base_dir is None else base_dir / path
    cfg.raw = doc
    return cfg


def _fmt(x) -> str:
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".17g")


def _csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def read_pattern_csv(path: FsPath, length_unit: float = 1.0) -> FringePattern:
    """Load a ``screen_coord,intensity`` table written by the two-slit or ab commands."""
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise ValidationError("pattern_csv", f"cannot read {str(path)!r}: {exc.strerror}") from None
    if not rows or [h.strip() for h in rows[0]] != ["screen_coord", "intensity"]:
        raise ValidationError("pattern_csv", "header must be 'screen_coord,intensity'")
    try:
        data = [(float(r[0]), float(r[1])) for r in rows[1:] if r and len(r) == 2]
        if any(r and len(r) != 2 for r in rows[1:]):
            raise ValueError
    except ValueError:
        raise ValidationError("pattern_csv", "rows must hold two numbers") from None
    xs = [a / length_unit for a, _ in data]
    try:
        return FringePattern(xs, [b for _, b in data], {"source": str(path)})
    except ValidationError as exc:
        raise ValidationError(f"pattern_csv.{exc.field}", exc.constraint) from None


def compute(cfg: RunConfig) -> tuple[list[str], list[tuple]]:
    """Run the engine for ``cfg``; returns a header and rows in output units."""
    u = cfg.units
    if cfg.command in ("two-slit", "ab"):
        if cfg.command == "ab":
            patt = ab_pattern(ABGeometry(cfg.geometry, cfg.solenoid), cfg.params, cfg.momentum)
        else:
            patt = pattern(cfg.geometry, cfg.params, cfg.momentum)
        rows = [(x * u["length"], w) for x, w in zip(patt.screen_coords.tolist(), patt.intensities.tolist())]
        return ["screen_coord", "intensity"], rows
    if cfg.command == "quantize":
        rows = []
        for n in cfg.levels:
            level = quantize_level(QuantizationProblem(cfg.potential, cfg.rule, n), cfg.params)
            rows.append((n, level.energy * u["energy"], level.action * u["action"]))
        return ["n", "energy", "action"], rows
    if cfg.command == "hydrogen":
        rows = [
            (lv.n, lv.energy * u["energy"], lv.radius * u["length"])
            for lv in hydrogen_circular_levels(cfg.params, cfg.n_max)
        ]
        return ["n", "energy", "radius"], rows
    if cfg.pattern_csv is not None:
        patt = read_pattern_csv(cfg.pattern_csv, u["length"])
    else:
        patt = pattern(cfg.geometry, cfg.params, cfg.momentum)
    fit = extract_kappa_details(patt, cfg.momentum, cfg.geometry)
    return ["kappa_hat", "fringe_spacing", "peaks_used"], [
        (fit["kappa_hat"] * u["action"], fit["fringe_spacing"] * u["length"], fit["peaks_used"])
    ]


def render(cfg: RunConfig, header: list[str], rows: list[tuple]) -> str:
    if cfg.output == "csv":
        return _csv(header, rows)
    records = [dict(zip(header, row)) for row in rows]
    if cfg.command == "fit-kappa":
        return json.dumps(records[0], indent=2) + "\n"
    return json.dumps({"config": cfg.as_dict(), "results": records}, indent=2) + "\n"


def run(cfg: RunConfig, stdout=None) -> int:
    """Execute ``cfg`` and emit the artifact to ``cfg.output_path`` or ``stdout``."""
    header, rows = compute(cfg)
    text = render(cfg, header, rows)
    if cfg.output_path:
        FsPath(cfg.output_path).write_text(text, encoding="utf-8")
    else:
        (stdout or sys.stdout).write(text)
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="phasekit", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    src = ap.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", help="path to a JSON config file")
    src.add_argument("--inline", help="JSON config given directly")
    ap.add_argument("--out", help="write the result here instead of standard output")
    ap.add_argument("--format", choices=FORMATS, help="override the config's output format")
    return ap


def main(argv=None, stdout=None, stderr=None) -> int:
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.config is not None:
            try:
                text = FsPath(args.config).read_text(encoding="utf-8")
            except OSError as exc:
                raise ValidationError("config", f"cannot read {args.config!r}: {exc.strerror}") from None
            base = FsPath(args.config).resolve().parent
        else:
            text, base = args.inline, FsPath.cwd()
        cfg = parse_config(text, args.command, base)
        if args.format:
            cfg.output = args.format
        if args.out:
            cfg.output_path = args.out
        return run(cfg, stdout)
    except (ValidationError, ParseError) as exc:
        print(f"phasekit: error: {exc}", file=stderr)
        return 1
    except (NumericalError, PhaseKitError) as exc:
        print(f"phasekit: numerical failure: {exc}", file=stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
