"""Command line front end.

Five subcommands map onto the library layers: ``spectrum`` and
``wavefunction`` drive the shooting solver, ``dipole`` adds the transition
moment, ``levelset`` works in the two-mode product space, and ``plan``
turns a pair of product states into a resonant pulse sequence.

Output is CSV (ten significant digits, optional ``#`` comment lines, then
a single header row) or JSON.  Every document is assembled in memory and
written in one piece, so identical invocations are byte-identical.

Exit codes: 0 success, 2 invalid input, 3 numerical failure (a
NoConvergence somewhere in the run, reported after all rows were
attempted).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, replace

from .control import ZeroDipole, plan_pulses, plan_rotation
from .levelset import (
    ModeSpectrum,
    ProductState,
    TwoModeSystem,
    analytic_mode,
    energy_expectation,
    level_set,
)
from .observables import dipole_depth_sweep, transition_dipole
from .potential import MorsePotential, analytic_spectrum, bound_state_count
from .solver import (
    Grid,
    GridTooCoarse,
    NoConvergence,
    NoSuchBoundState,
    ShootingOptions,
    domain_for_level,
    fd_reference_spectrum,
    find_bound_state,
)

__all__ = ["main"]

# Benchmark transition dipoles shipped for side-by-side comparison in the
# depth sweep (column d_reference); signed, keyed by well depth.
_REFERENCE_DIPOLE = {
    6.0: -0.0003,
    7.0: -0.0003,
    8.0: -0.588,
    9.0: -0.604,
    10.0: -0.609,
    11.0: -0.6089,
    12.0: -0.607,
    13.0: -0.602,
    14.0: -0.597,
}


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


def _parse_bool(text: str) -> bool:
    low = text.lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


_COMMON_DEFAULTS = {
    "alpha": 2.0,
    "x0": 1.0,
    "mass": 1.0,
    "hbar": 1.0,
    "h": 1e-3,
    "x_max": 12.0,
    "adaptive_domain": False,
    "tolerance": 1e-9,
    "format": "csv",
    "out": None,
}

_CONFIG_PARSERS = {
    "alpha": float,
    "x0": float,
    "mass": float,
    "hbar": float,
    "h": float,
    "x_max": float,
    "tolerance": float,
    "adaptive_domain": _parse_bool,
    "format": str,
    "out": str,
}


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved shared options: flags, then config file, then defaults."""

    alpha: float
    x0: float
    mass: float
    hbar: float
    h: float
    x_max: float
    adaptive_domain: bool
    tolerance: float
    format: str
    out: str | None

    def potential(self, depth: float) -> MorsePotential:
        try:
            return MorsePotential(
                depth=depth, alpha=self.alpha, x0=self.x0, mass=self.mass, hbar=self.hbar
            )
        except ValueError as exc:
            raise _CliError(2, str(exc)) from exc

    def options(self) -> ShootingOptions:
        try:
            grid = Grid(0.0, self.x_max, self.h)
            return ShootingOptions(
                tolerance=self.tolerance, grid=grid, adaptive_domain=self.adaptive_domain
            )
        except ValueError as exc:
            raise _CliError(2, str(exc)) from exc


def _load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise _CliError(2, f"cannot read config file: {exc}") from exc
    pairs: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise _CliError(2, f"{path}:{lineno}: expected key=value, got {line!r}")
        key = key.strip().lower().replace("-", "_")
        if key not in _CONFIG_PARSERS:
            raise _CliError(2, f"{path}:{lineno}: unknown config key {key!r}")
        try:
            pairs[key] = _CONFIG_PARSERS[key](value.strip())
        except ValueError as exc:
            raise _CliError(2, f"{path}:{lineno}: {exc}") from exc
    return pairs


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    from_file = _load_config(args.config) if args.config else {}
    merged = {}
    for key, fallback in _COMMON_DEFAULTS.items():
        flag = getattr(args, key)
        merged[key] = flag if flag is not None else from_file.get(key, fallback)
    if merged["format"] not in ("csv", "json"):
        raise _CliError(2, f"format must be csv or json, got {merged['format']!r}")
    return RunConfig(**merged)


# ---------------------------------------------------------------------------
# Serialization helpers


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return "%.10g" % value
    return str(value)


def _csv_document(comments: list[str], header: list[str], rows: list[list]) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(",".join(header))
    lines.extend(",".join(_fmt(cell) for cell in row) for row in rows)
    return "\n".join(lines) + "\n"


def _json_document(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# spectrum


def _spectrum_depths(args: argparse.Namespace) -> list[float]:
    has_range = any(v is not None for v in (args.c_min, args.c_max, args.c_step))
    if args.c is not None and has_range:
        raise _CliError(2, "give either --c or a --c-min/--c-max range, not both")
    if args.c is not None:
        return [args.c]
    if args.c_min is None or args.c_max is None:
        raise _CliError(2, "specify --c, or both --c-min and --c-max")
    step = 1.0 if args.c_step is None else args.c_step
    if step <= 0.0:
        raise _CliError(2, f"--c-step must be > 0, got {step}")
    if args.c_max < args.c_min:
        raise _CliError(2, "--c-max is below --c-min")
    count = int((args.c_max - args.c_min) / step + 1e-9) + 1
    return [args.c_min + i * step for i in range(count)]


def _fd_level(p: MorsePotential, grid: Grid, n: int, want: int, cache: dict):
    """n-th oracle eigenvalue on this grid, or None when the box holds fewer."""
    key = (p, grid)
    if key not in cache:
        k = want
        spectrum: list = []
        while k > 0:
            try:
                spectrum = fd_reference_spectrum(p, grid, k)
                break
            except GridTooCoarse:
                k -= 1
        cache[key] = spectrum
    levels = cache[key]
    return levels[n] if n < len(levels) else None


def _cmd_spectrum(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    depths = _spectrum_depths(args)
    for c in depths:
        cfg.potential(c)
    options = cfg.options()
    fd_cache: dict = {}
    rows: list[list] = []
    convergence_failures = 0
    for c in depths:
        p = cfg.potential(c)
        analytic = analytic_spectrum(p)
        scan_cache: dict = {}
        for n in range(bound_state_count(p)):
            e_shoot = None
            try:
                e_shoot = find_bound_state(p, n, options, _scan_cache=scan_cache).energy
            except NoSuchBoundState as exc:
                print(f"spectrum: c={_fmt(c)} n={n}: {exc}", file=sys.stderr)
            except NoConvergence as exc:
                convergence_failures += 1
                print(f"spectrum: c={_fmt(c)} n={n}: {exc}", file=sys.stderr)
            grid = domain_for_level(p, n, options) if cfg.adaptive_domain else options.grid
            rows.append(
                [c, n, e_shoot, _fd_level(p, grid, n, len(analytic), fd_cache), analytic[n]]
            )
    if cfg.format == "json":
        payload = [
            {"c": c, "n": n, "E_shooting": es, "E_fd_oracle": ef, "E_analytic": ea}
            for c, n, es, ef, ea in rows
        ]
        _emit(_json_document(payload), cfg.out)
    else:
        _emit(
            _csv_document([], ["c", "n", "E_shooting", "E_fd_oracle", "E_analytic"], rows),
            cfg.out,
        )
    return 3 if convergence_failures else 0


# ---------------------------------------------------------------------------
# dipole


def _parse_c_list(text: str) -> list[float]:
    try:
        depths = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise _CliError(2, f"bad --c-list: {exc}") from exc
    if not depths:
        raise _CliError(2, "--c-list is empty")
    return depths


def _cmd_dipole(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    depths = _parse_c_list(args.c_list)
    for c in depths:
        cfg.potential(c)
    entries = dipole_depth_sweep(
        depths,
        cfg.options(),
        alpha=cfg.alpha,
        x0=cfg.x0,
        mass=cfg.mass,
        hbar=cfg.hbar,
    )
    rows: list[list] = []
    convergence_failures = 0
    for entry in entries:
        reference = _REFERENCE_DIPOLE.get(entry.depth)
        if entry.failure is None:
            value = entry.dipole.value
            rows.append([entry.depth, value, abs(value), reference, "ok"])
        else:
            if entry.failure == "NoConvergence":
                convergence_failures += 1
            rows.append([entry.depth, None, None, reference, entry.failure])
    if cfg.format == "json":
        payload = [
            {"c": c, "d": d, "d_abs": da, "d_reference": ref, "status": status}
            for c, d, da, ref, status in rows
        ]
        _emit(_json_document(payload), cfg.out)
    else:
        _emit(
            _csv_document([], ["c", "d_signed", "d_abs", "d_reference", "status"], rows),
            cfg.out,
        )
    return 3 if convergence_failures else 0


# ---------------------------------------------------------------------------
# wavefunction


def _cmd_wavefunction(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    if args.n < 0:
        raise _CliError(2, f"--n must be >= 0, got {args.n}")
    if args.decimate < 1:
        raise _CliError(2, f"--decimate must be >= 1, got {args.decimate}")
    p = cfg.potential(args.c)
    options = cfg.options()
    if cfg.adaptive_domain:
        # All levels go on one grid: the domain the highest level needs.
        options = replace(
            options, grid=domain_for_level(p, args.n, options), adaptive_domain=False
        )
    states = []
    scan_cache: dict = {}
    try:
        for n in range(args.n + 1):
            states.append(find_bound_state(p, n, options, _scan_cache=scan_cache))
    except NoSuchBoundState as exc:
        raise _CliError(2, f"wavefunction: {exc}") from exc
    except NoConvergence as exc:
        raise _CliError(3, f"wavefunction: {exc}") from exc
    xs = states[0].wavefunction.grid.xs()
    names = [f"phi_{n}" for n in range(args.n + 1)]
    picks = range(0, xs.size, args.decimate)
    if cfg.format == "json":
        payload = {"x": [float(xs[i]) for i in picks]}
        for name, state in zip(names, states):
            payload[name] = [float(state.wavefunction.values[i]) for i in picks]
        _emit(_json_document(payload), cfg.out)
    else:
        rows = [
            [float(xs[i])] + [float(s.wavefunction.values[i]) for s in states]
            for i in picks
        ]
        _emit(_csv_document([], ["x"] + names, rows), cfg.out)
    return 0


# ---------------------------------------------------------------------------
# levelset


def _two_mode_system(cfg: RunConfig, c1: float, c2: float) -> TwoModeSystem:
    p1 = cfg.potential(c1)
    p2 = cfg.potential(c2)
    try:
        return TwoModeSystem(analytic_mode(p1, 1), analytic_mode(p2, 2), hbar=cfg.hbar)
    except ValueError as exc:
        raise _CliError(2, str(exc)) from exc


def _cmd_levelset(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    if args.samples < 8:
        raise _CliError(2, f"--samples must be >= 8, got {args.samples}")
    system = _two_mode_system(cfg, args.c1, args.c2)
    curve = level_set(system, args.energy, args.samples)
    if cfg.format == "json":
        payload = {
            "target": curve.target,
            "classification": curve.classification.value,
            "semi_axis_1": curve.semi_axis_1,
            "semi_axis_2": curve.semi_axis_2,
            "samples": [[a1, a2] for a1, a2 in curve.samples],
        }
        _emit(_json_document(payload), cfg.out)
    else:
        comments = [
            f"classification = {curve.classification.value}",
            f"target = {_fmt(curve.target)}",
            f"semi_axis_1 = {_fmt(curve.semi_axis_1)}",
            f"semi_axis_2 = {_fmt(curve.semi_axis_2)}",
        ]
        rows = [[a1, a2] for a1, a2 in curve.samples]
        _emit(_csv_document(comments, ["a1", "a2"], rows), cfg.out)
    return 0


# ---------------------------------------------------------------------------
# plan


def _solved_mode(cfg: RunConfig, label: int, depth: float) -> ModeSpectrum:
    p = cfg.potential(depth)
    options = cfg.options()
    scan_cache: dict = {}
    try:
        s0 = find_bound_state(p, 0, options, _scan_cache=scan_cache)
        s1 = find_bound_state(p, 1, options, _scan_cache=scan_cache)
    except NoSuchBoundState as exc:
        raise _CliError(2, f"plan: well {label} (depth {_fmt(depth)}): {exc}") from exc
    except NoConvergence as exc:
        raise _CliError(3, f"plan: well {label} (depth {_fmt(depth)}): {exc}") from exc
    dipole = transition_dipole(s0, s1).value
    return ModeSpectrum(e0=s0.energy, e1=s1.energy, dipole=dipole, label=label)


def _cmd_plan(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    if not args.amplitude > 0.0:
        raise _CliError(2, f"--amplitude must be > 0, got {_fmt(args.amplitude)}")
    system = TwoModeSystem(
        _solved_mode(cfg, 1, args.c1), _solved_mode(cfg, 2, args.c2), hbar=cfg.hbar
    )
    from_state = ProductState(args.from_theta1, args.from_theta2)
    to_state = ProductState(args.to_theta1, args.to_theta2)
    rotation = plan_rotation(from_state, to_state)
    try:
        plan = plan_pulses(system, rotation, args.amplitude)
    except ZeroDipole as exc:
        raise _CliError(2, f"plan: {exc}") from exc
    payload = {
        "initial_energy": energy_expectation(system, from_state),
        "final_energy": energy_expectation(system, to_state),
        "amplitude": args.amplitude,
        "pulses": [
            {"mode": pu.mode, "carrier": pu.carrier, "area": pu.area, "duration": pu.duration}
            for pu in plan.pulses
        ],
    }
    _emit(_json_document(payload), cfg.out)
    return 0


# ---------------------------------------------------------------------------
# wiring


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    shared = common.add_argument_group("shared options")
    shared.add_argument("--alpha", type=float, help="potential steepness (default 2)")
    shared.add_argument("--x0", type=float, help="well minimum position (default 1)")
    shared.add_argument("--mass", type=float, help="particle mass (default 1)")
    shared.add_argument("--hbar", type=float, help="Planck constant over 2 pi (default 1)")
    shared.add_argument("--h", type=float, help="grid spacing (default 1e-3)")
    shared.add_argument("--x-max", type=float, help="right edge of the domain (default 12)")
    shared.add_argument(
        "--adaptive-domain",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="stretch the domain per level for shallow states",
    )
    shared.add_argument("--tolerance", type=float, help="bisection tolerance (default 1e-9)")
    shared.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")
    shared.add_argument("--out", help="output path (default standard output)")
    shared.add_argument("--config", help="key=value file supplying shared options")

    parser = argparse.ArgumentParser(
        prog="morsekit",
        description="Bound states, transition dipoles, level sets, and pulse plans "
        "for Morse wells.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser(
        "spectrum", parents=[common], help="bound energies by three routes"
    )
    sp.add_argument("--c", type=float, help="single well depth")
    sp.add_argument("--c-min", type=float, help="sweep start depth")
    sp.add_argument("--c-max", type=float, help="sweep end depth (inclusive)")
    sp.add_argument("--c-step", type=float, help="sweep step (default 1)")

    dp = sub.add_parser(
        "dipole", parents=[common], help="ground-to-first transition dipole sweep"
    )
    dp.add_argument("--c-list", required=True, help="comma-separated well depths")

    wf = sub.add_parser(
        "wavefunction", parents=[common], help="normalized bound wavefunctions on the grid"
    )
    wf.add_argument("--c", type=float, required=True, help="well depth")
    wf.add_argument("--n", type=int, default=1, help="highest level to include (default 1)")
    wf.add_argument(
        "--decimate", type=int, default=1, help="keep every k-th grid row (default 1)"
    )

    ls = sub.add_parser(
        "levelset", parents=[common], help="constant-energy curve of a two-well pair"
    )
    ls.add_argument("--c1", type=float, required=True, help="depth of well 1")
    ls.add_argument("--c2", type=float, required=True, help="depth of well 2")
    ls.add_argument("--energy", type=float, required=True, help="target energy expectation")
    ls.add_argument("--samples", type=int, default=64, help="points on the curve (default 64)")

    pl = sub.add_parser(
        "plan", parents=[common], help="resonant pulse sequence between product states"
    )
    pl.add_argument("--c1", type=float, required=True, help="depth of well 1")
    pl.add_argument("--c2", type=float, required=True, help="depth of well 2")
    pl.add_argument("--from-theta1", type=float, default=0.0, help="initial angle, mode 1")
    pl.add_argument("--from-theta2", type=float, default=0.0, help="initial angle, mode 2")
    pl.add_argument("--to-theta1", type=float, default=0.0, help="target angle, mode 1")
    pl.add_argument("--to-theta2", type=float, default=0.0, help="target angle, mode 2")
    pl.add_argument("--amplitude", type=float, required=True, help="field strength, > 0")

    return parser


_DISPATCH = {
    "spectrum": _cmd_spectrum,
    "dipole": _cmd_dipole,
    "wavefunction": _cmd_wavefunction,
    "levelset": _cmd_levelset,
    "plan": _cmd_plan,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except _CliError as err:
        print(f"morsekit: {err.message}", file=sys.stderr)
        return err.code


if __name__ == "__main__":
    sys.exit(main())
