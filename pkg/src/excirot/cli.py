"""Command line front end.

    excirot sweep-delay     --config run.toml --out delay.csv [--method analytic|numeric]
    excirot sweep-detuning  --config run.toml --out detuning.csv
    excirot design          --config run.toml [--out design.csv]
    excirot verify          [--out report.txt]

Configuration is TOML. Energies are in micro-eV, times in ps, angles in rad.
Every key is optional (the defaults give the reference two-pulse setup);
unknown keys are rejected.
"""

import argparse
import csv
from dataclasses import dataclass, field, replace
import io
import math
import sys

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .core import CircPolarization, DotParams
from .designer import DesignTarget, SignPreference, design_detuning
from .errors import ConfigError, ExcirotError, InfeasibleError
from .experiment import ExperimentConfig, METHODS, normalized_difference, sweep_delay, sweep_detuning
from .propagator import PropagationSettings
from .rosenzener import PulseParams
from .verification import run_checks

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3
EXIT_VERIFY = 4

DELAY_COLUMNS = ("tau_ps", "p_xx", "i_h", "i_v", "d_vh_norm")
DETUNING_COLUMNS = ("delta_ueV", "delta_over_sigma", "p_xx", "d0_vh", "theta_rad")
DESIGN_COLUMNS = ("theta_target_rad", "alpha", "bandwidth_ueV", "detuning_ueV",
                  "delta_over_sigma", "achieved_theta_rad", "residual_p_xx", "iterations")
RELATIONS = ("co", "cross", "both")

_SCHEMA = {
    "method": str,
    "first_pol": str,
    "output_path": str,
    "dot": {"splitting_ueV": float},
    "pulse": {"rabi_ratio": float, "area_over_pi": float, "bandwidth_ueV": float,
              "detuning_ueV": float, "polarization": str},
    "propagation": {"window": float, "rel_tol": float,
                    "include_splitting_during_pulse": bool},
    "delay_ps": {"start": float, "stop": float, "step": float},
    "detuning_ueV": {"start": float, "stop": float, "step": float},
    "sweep_detuning": {"tau_ps": float},
    "design": {"theta_rad": float, "sign_preference": str},
}


@dataclass(frozen=True)
class Grid:
    start: float
    stop: float
    step: float

    def values(self):
        """Points ``start, start + step, ...`` up to and including ``stop``."""
        n = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return self.start + self.step * np.arange(n)


@dataclass(frozen=True)
class RunConfig:
    experiment: ExperimentConfig = field(default_factory=ExperimentConfig)
    relation: str = "co"
    delay: Grid = Grid(-60.0, 500.0, 1.0)
    detuning: Grid = Grid(-435.0, 435.0, 5.0)
    tau_ps: float = 30.0
    theta_rad: float = 0.0
    sign_preference: SignPreference = SignPreference.POSITIVE
    output_path: str = None

    def experiment_for(self, relation):
        first = self.experiment.first_pol
        pol = first if relation == "co" else first.opposite
        return self.experiment.with_pulse(pol=pol)


def _check_types(data, schema, path=""):
    for key, value in data.items():
        where = f"{path}{key}"
        if key not in schema:
            raise ConfigError(f"unknown key '{where}'")
        expected = schema[key]
        if isinstance(expected, dict):
            if not isinstance(value, dict):
                raise ConfigError(f"'{where}' must be a table/section")
            _check_types(value, expected, where + ".")
        elif expected is float:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"'{where}' must be a number, got {value!r}")
            if not math.isfinite(value):
                raise ConfigError(f"'{where}' must be finite")
        elif not isinstance(value, expected):
            raise ConfigError(f"'{where}' must be of type {expected.__name__}, got {value!r}")


def _grid(section, default, name):
    if not section:
        return default
    merged = {"start": default.start, "stop": default.stop, "step": default.step}
    merged.update(section)
    grid = Grid(float(merged["start"]), float(merged["stop"]), float(merged["step"]))
    if not grid.step > 0:
        raise ConfigError(f"'{name}.step' must be > 0")
    if not grid.stop > grid.start:
        raise ConfigError(f"'{name}.stop' must exceed '{name}.start'")
    return grid


def parse_config(data):
    """Build a :class:`RunConfig` from a parsed TOML mapping."""
    _check_types(data, _SCHEMA)
    pulse_cfg = dict(data.get("pulse", {}))
    if "rabi_ratio" in pulse_cfg and "area_over_pi" in pulse_cfg:
        raise ConfigError("give either 'pulse.rabi_ratio' or 'pulse.area_over_pi', not both")
    if "area_over_pi" in pulse_cfg:
        alpha = 0.5 * pulse_cfg["area_over_pi"]
    else:
        alpha = pulse_cfg.get("rabi_ratio", 0.35)
    relation = pulse_cfg.get("polarization", "co").strip().lower()
    if relation not in RELATIONS:
        raise ConfigError(f"'pulse.polarization' must be one of {RELATIONS}, got {relation!r}")
    method = data.get("method", "analytic")
    if method not in METHODS:
        raise ConfigError(f"'method' must be one of {METHODS}, got {method!r}")

    def build(what, fn):
        try:
            return fn()
        except ValueError as exc:
            raise ConfigError(f"invalid {what}: {exc}") from None

    first_pol = build("'first_pol'", lambda: CircPolarization.parse(data.get("first_pol", "R")))
    dot = build("'dot'", lambda: DotParams(float(data.get("dot", {}).get("splitting_ueV", 34.0))))
    pulse = build("'pulse'", lambda: PulseParams(
        float(alpha),
        float(pulse_cfg.get("bandwidth_ueV", 145.0)),
        float(pulse_cfg.get("detuning_ueV", -63.0)),
        first_pol,
    ))
    prop = data.get("propagation", {})
    settings = build("'propagation'", lambda: PropagationSettings(
        float(prop.get("window", 20.0)), float(prop.get("rel_tol", 1e-10)),
        bool(prop.get("include_splitting_during_pulse", False))))
    experiment = ExperimentConfig(dot, first_pol, pulse, method, settings)
    design = data.get("design", {})
    theta = float(design.get("theta_rad", 0.0))
    if abs(theta) > math.pi / 2:
        raise ConfigError("'design.theta_rad' must lie in [-pi/2, pi/2]")
    sign = build("'design.sign_preference'",
                 lambda: SignPreference.parse(design.get("sign_preference", "positive_detuning")))
    return RunConfig(
        experiment=experiment,
        relation=relation,
        delay=_grid(data.get("delay_ps"), RunConfig.delay, "delay_ps"),
        detuning=_grid(data.get("detuning_ueV"), RunConfig.detuning, "detuning_ueV"),
        tau_ps=float(data.get("sweep_detuning", {}).get("tau_ps", 30.0)),
        theta_rad=theta,
        sign_preference=sign,
        output_path=data.get("output_path"),
    )


def load_config(path):
    """Read and validate a TOML configuration file."""
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config '{path}': {exc.strerror}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    try:
        return parse_config(data)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from None


def _fmt(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    value = float(value)
    if math.isnan(value):
        return "nan"
    if value == 0.0:
        value = 0.0  # drop the sign of -0.0
    return format(value, ".12g")


def render_csv(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _write(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def delay_rows(cfg):
    if cfg.relation == "both":
        raise ConfigError("sweep-delay needs 'pulse.polarization' = 'co' or 'cross'")
    series = sweep_delay(cfg.experiment_for(cfg.relation), cfg.delay.values())
    if np.any(series.x < 0):
        series = normalized_difference(series)
    return [(x, o.p_xx, o.i_h, o.i_v, o.d_vh) for x, o in series.points]


def detuning_rows(cfg):
    relations = ("co", "cross") if cfg.relation == "both" else (cfg.relation,)
    bandwidth = cfg.experiment.pulse.bandwidth_ueV
    rows = []
    for relation in relations:
        series = sweep_detuning(cfg.experiment_for(relation), cfg.detuning.values(), cfg.tau_ps)
        for x, o in series.points:
            row = (x, x / bandwidth, o.p_xx, o.d0_vh, o.theta_rad)
            rows.append(row + (relation,) if cfg.relation == "both" else row)
    return rows


def cmd_sweep_delay(cfg, out):
    _write(render_csv(DELAY_COLUMNS, delay_rows(cfg)), out)
    return EXIT_OK


def cmd_sweep_detuning(cfg, out):
    header = DETUNING_COLUMNS + (("relation",) if cfg.relation == "both" else ())
    _write(render_csv(header, detuning_rows(cfg)), out)
    return EXIT_OK


def cmd_design(cfg, out):
    pulse = cfg.experiment.pulse
    target = DesignTarget(cfg.theta_rad, pulse.alpha, pulse.bandwidth_ueV, cfg.sign_preference)
    try:
        result = design_detuning(target)
    except InfeasibleError as exc:
        print(f"infeasible: {exc} (theta_max = {exc.theta_max:.12g} rad)", file=sys.stderr)
        return EXIT_INFEASIBLE
    ratio = result.detuning_ueV / pulse.bandwidth_ueV
    print(f"target theta      : {target.theta_rad:.12g} rad")
    print(f"pulse             : alpha = {pulse.alpha:g}, hbar*sigma = {pulse.bandwidth_ueV:g} ueV")
    print(f"detuning          : {result.detuning_ueV:.12g} ueV (delta/sigma = {ratio:.12g})")
    print(f"achieved theta    : {result.achieved_theta:.12g} rad")
    print(f"residual P_XX     : {result.residual_p_xx:.12g}")
    print(f"iterations        : {result.iterations}")
    if result.alternatives_ueV:
        alts = ", ".join(f"{d:.9g}" for d in result.alternatives_ueV)
        print(f"other solutions   : {alts} ueV")
    row = (target.theta_rad, pulse.alpha, pulse.bandwidth_ueV, result.detuning_ueV, ratio,
           result.achieved_theta, result.residual_p_xx, result.iterations)
    text = render_csv(DESIGN_COLUMNS, [row])
    if out is not None:
        _write(text, out)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(cfg, out):
    results = run_checks(cfg.experiment.settings)
    lines = [r.line() for r in results]
    ok = all(r.passed for r in results)
    lines.append("verification " + ("passed" if ok else "FAILED"))
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if out is not None:
        _write(text, out)
    return EXIT_OK if ok else EXIT_VERIFY


COMMANDS = {
    "sweep-delay": cmd_sweep_delay,
    "sweep-detuning": cmd_sweep_detuning,
    "design": cmd_design,
    "verify": cmd_verify,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="excirot", description="Optical rotation of a quantum-dot exciton spin.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", help="TOML run configuration")
    parser.add_argument("--out", help="output file (default: stdout or 'output_path' from the config)")
    parser.add_argument("--method", choices=METHODS, help="override the configured method")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.config is not None:
            cfg = load_config(args.config)
        elif args.command == "verify":
            cfg = RunConfig()
        else:
            raise ConfigError(f"'{args.command}' requires --config")
        if args.method is not None:
            cfg = replace(cfg, experiment=replace(cfg.experiment, method=args.method))
        out = args.out if args.out is not None else cfg.output_path
        return COMMANDS[args.command](cfg, out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ExcirotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
