# src/main.py
import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from dotenv import load_dotenv
from scipy.constants import c as SPEED_OF_LIGHT

from console import fail, status, warn
from errors import NumericalError
from medium import build_system_matrix, gain_regions, shifted_detunings, solve_steady_state, spectrum
from optics import (
    delay_table,
    dispersion_slopes,
    group_index,
    group_index_at,
    omega3_sweep,
    superluminal_crossover,
    track_refractive_index,
)
from params import Config, PulseSpec
from pulse import (
    DispersionCoefficients,
    PulseGrid,
    band_mask,
    dispersion_coefficients,
    input_spectrum,
    input_time_trace,
    medium_wavenumber,
    output_spectrum,
    predicted_peak_shift,
    propagate_analytic,
    propagate_numeric,
    pulse_grid,
    pulse_metrics,
    to_frequency,
    vacuum_wavenumber,
)
from reports import (
    REPORT_COLUMNS,
    crossover_report,
    discrepancy_report,
    dispersion_report,
    pulse_report,
    write_table,
)
from scenarios import PRESETS, Scenario, calibrate, counter_propagating, get_preset, load_stanza, write_stanza
from validate import ValidationError, ValidationIssue, load_config, merge_documents, raise_if_invalid

PROJECT_ROOT = Path(__file__).resolve().parents[1]

DEFAULT_GRID = "-10:10:2001"

SPECTRUM_COLUMNS = (
    "mode",
    "v_doppler",
    "delta_p",
    "chi_e_re",
    "chi_e_im",
    "chi_m_re",
    "chi_m_im",
    "xi_eh_re",
    "xi_eh_im",
    "xi_he_re",
    "xi_he_im",
    "n_r",
    "N_g",
    "tau_ns",
)
DELAY_COLUMNS = ("scenario", "mode", "omega_3", "N_g", "v_g", "tau_ns", "error")
CROSSOVER_COLUMNS = ("kind", "omega_3", "N_g_cold", "N_g_hot", "v_g_cold", "v_g_hot", "difference")
CALIBRATION_COLUMNS = ("scenario", "quantity", "mode", "target", "kappa_e", "achieved", "relative_error", "stanza")
# window doublings tried when the numeric pulse oracle aliases
WINDOW_DOUBLINGS = 3


# -----------------------------
# Helpers
# -----------------------------

def _invalid(code: str, field: str, message: str) -> ValidationError:
    return ValidationError("Config validation failed:\n- " + str(ValidationIssue(code, field, message)))


def parse_grid(text: str) -> np.ndarray:
    try:
        lo, hi, count = text.split(":")
        lo, hi, n = float(lo), float(hi), int(count)
    except ValueError:
        raise _invalid("BadGrid", "--grid", f"expected lo:hi:count, got '{text}'") from None
    if n < 1:
        raise _invalid("BadGrid", "--grid", "grid is empty")
    if n > 1 and not hi > lo:
        raise _invalid("BadGrid", "--grid", "hi must exceed lo")
    return np.linspace(lo, hi, n)


def parse_floats(text: Optional[str], flag: str) -> List[float]:
    if not text:
        return []
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise _invalid("InvalidValue", flag, f"expected comma-separated numbers, got '{text}'") from None


def parse_range(text: str, flag: str) -> Tuple[float, float]:
    values = parse_floats(text.replace(":", ","), flag)
    if len(values) != 2:
        raise _invalid("InvalidValue", flag, f"expected lo:hi, got '{text}'")
    return values[0], values[1]


def _override(config: Config, section: str, **values: Any) -> Config:
    return raise_if_invalid(merge_documents(config.model_dump(), {section: values}))


def resolve_config(args) -> Tuple[Config, Optional[Scenario]]:
    """Defaults <- preset <- config file <- calibration stanza <- flags."""
    scenario = None
    docs: List[Dict[str, Any]] = []

    if args.preset:
        try:
            scenario = get_preset(args.preset)
        except KeyError as e:
            raise _invalid("UnknownPreset", "--preset", str(e.args[0])) from None
        docs.append(scenario.document())

    config_path = args.config or os.getenv("CONFIG_PATH")
    if config_path:
        docs.append(load_config(Path(config_path)))

    if args.calibration:
        try:
            docs.append(load_stanza(Path(args.calibration)))
        except (OSError, json.JSONDecodeError) as e:
            raise _invalid("BadDocument", "--calibration", str(e)) from None

    flags: Dict[str, Dict[str, Any]] = {"system": {}, "medium": {}}
    if args.kappa_e is not None:
        flags["medium"]["density_coupling"] = args.kappa_e
    if args.convention:
        flags["medium"]["group_index_convention"] = args.convention
    if getattr(args, "omega3", None) and args.command != "delay":
        values = parse_floats(args.omega3, "--omega3")
        if len(values) != 1:
            raise _invalid("InvalidValue", "--omega3", "takes a single value for this command")
        flags["system"]["omega_3"] = values[0]

    raw = merge_documents(*docs, {k: v for k, v in flags.items() if v})
    if args.counter:
        raw = counter_propagating(raw)
    return raise_if_invalid(raw), scenario


def _write_report(report: List[Dict[str, Any]], args) -> None:
    write_table(report, REPORT_COLUMNS, args.format, Path(args.report))
    outside = sum(1 for r in report if not r["within_tolerance"])
    if outside:
        warn("report", f"{outside} of {len(report)} reference checks outside tolerance ({args.report})")
    else:
        status("report", f"all {len(report)} reference checks within tolerance ({args.report})")


def resolve_modes(args, scenario: Optional[Scenario], default: str) -> Tuple[str, ...]:
    mode = args.mode or (scenario.mode if scenario else default)
    return ("cold", "hot") if mode == "both" else (mode,)


def emit(text: str, out: Optional[str]) -> None:
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        status("out", f"wrote {path}")
    else:
        sys.stdout.write(text)


# -----------------------------
# Subcommands
# -----------------------------

def _dispersion_check(config: Config, mode: str, scenario: Optional[Scenario]) -> List[Dict[str, Any]]:
    try:
        slopes = dispersion_slopes(config, 0.0, mode)
    except NumericalError as e:
        warn("spectrum", f"{mode}: dispersion slope at resonance unavailable: {e.name}: {e}")
        return []
    name = scenario.name if scenario else "custom"
    report = dispersion_report(name, mode, config.system.omega_3, slopes)
    message = f"{mode}: Re(chi_e) {slopes.electric}, Re(chi_m) {slopes.magnetic} dispersion at resonance"
    if all(r["within_tolerance"] for r in report):
        status("spectrum", message)
    else:
        warn("spectrum", f"{message} ({config.medium.group_index_convention} orientation)")
    return report


def run_spectrum(args) -> int:
    config, scenario = resolve_config(args)
    grid = parse_grid(DEFAULT_GRID if args.grid is None else args.grid)

    vd_series = parse_floats(args.vd, "--vd")
    if vd_series:
        series = [("hot", _override(config, "medium", v_doppler=v)) for v in vd_series]
    else:
        # the cold curve unless --mode asks for more
        series = [(mode, config) for mode in resolve_modes(args, None, "cold")]

    rows: List[Dict[str, Any]] = []
    report: List[Dict[str, Any]] = []
    for mode, cfg in series:
        status("spectrum", f"{mode} V_D={cfg.medium.v_doppler:g} on {grid.size} points")
        resp = spectrum(cfg, grid, mode)
        if grid.size >= 3:
            profile = group_index(grid, track_refractive_index(resp), cfg.medium)
            n_r, n_g, tau = profile.n_r, profile.N_g, profile.tau
        else:
            points = [group_index_at(cfg, float(dp), mode) for dp in grid]
            n_r = np.array([p.n_r for p in points])
            n_g = np.array([p.N_g for p in points])
            tau = np.array([p.tau for p in points])

        for lo, hi in gain_regions(grid, resp):
            warn("spectrum", f"{mode}: Im(chi_e) < 0 on [{lo:g}, {hi:g}]")
        report.extend(_dispersion_check(cfg, mode, scenario))
        if mode == "cold":
            betas = solve_steady_state(*build_system_matrix(cfg.system, shifted_detunings(cfg.system, delta_p=grid)))
            status("spectrum", f"max |beta_EB - conj(beta_BE)| / |beta| = {float(np.max(betas.conjugate_deviation())):.3g}")

        for i, dp in enumerate(grid):
            row: Dict[str, Any] = {"mode": mode, "v_doppler": cfg.medium.v_doppler, "delta_p": float(dp)}
            for name in ("chi_e", "chi_m", "xi_eh", "xi_he"):
                value = complex(np.asarray(getattr(resp, name))[i])
                row[f"{name}_re"] = value.real
                row[f"{name}_im"] = value.imag
            row.update(n_r=float(n_r[i]), N_g=float(n_g[i]), tau_ns=float(tau[i]) * 1e9)
            rows.append(row)

    emit(write_table(rows, SPECTRUM_COLUMNS, args.format), args.out)
    if args.report:
        _write_report(report, args)
    return 0


def run_delay(args) -> int:
    config, scenario = resolve_config(args)
    name = scenario.name if scenario else "custom"
    omega3 = parse_floats(args.omega3, "--omega3")
    if not omega3:
        omega3 = list(scenario.omega3_series) if scenario and scenario.omega3_series else [config.system.omega_3]

    configs = [(f"{name}[omega_3={o:g}]", _override(config, "system", omega_3=o)) for o in omega3]
    rows = delay_table(configs, resolve_modes(args, scenario, "cold"))
    table = [{c: getattr(r, c) for c in DELAY_COLUMNS} for r in rows]
    emit(write_table(table, DELAY_COLUMNS, args.format), args.out)

    if args.report:
        _write_report(discrepancy_report(rows), args)
    return 0


def run_crossover(args) -> int:
    config, scenario = resolve_config(args)
    if args.range:
        lo, hi = parse_range(args.range, "--range")
    elif scenario and scenario.omega3_range:
        lo, hi = scenario.omega3_range
    else:
        lo, hi = 0.5, 6.0

    sweep = omega3_sweep(config, np.linspace(lo, hi, args.samples))
    rows = [
        {
            "kind": "sweep",
            "omega_3": r.omega_3,
            "N_g_cold": r.N_g_cold,
            "N_g_hot": r.N_g_hot,
            "v_g_cold": r.v_g_cold,
            "v_g_hot": r.v_g_hot,
            "difference": r.difference,
        }
        for r in sweep
    ]
    try:
        root = superluminal_crossover(config, (lo, hi), samples=args.samples)
    except NumericalError:
        emit(write_table(rows, CROSSOVER_COLUMNS, args.format), args.out)
        raise
    rows.append({"kind": "crossover", "omega_3": root})
    emit(write_table(rows, CROSSOVER_COLUMNS, args.format), args.out)

    if args.report:
        _write_report([crossover_report(root)], args)
    return 0


def _envelope_l2(a: np.ndarray, b: np.ndarray) -> float:
    ma = np.abs(a) / np.linalg.norm(a)
    mb = np.abs(b) / np.linalg.norm(b)
    return float(np.linalg.norm(ma - mb))


def _pair_l2(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(a / np.linalg.norm(a) - b / np.linalg.norm(b)))


@dataclass
class PulsePass:
    grid: PulseGrid
    band: np.ndarray
    time_cols: Dict[str, np.ndarray]
    freq_cols: Dict[str, np.ndarray]
    metrics: Dict[str, Dict[str, float]]
    numeric_errors: Dict[str, str]

    @property
    def aliased(self) -> bool:
        return any(name.startswith("AliasingDetected") for name in self.numeric_errors.values())


def _pulse_pass(
    config: Config, spec: PulseSpec, labelled: List[Tuple[str, DispersionCoefficients]], scale: int
) -> PulsePass:
    """Analytic and numeric propagation on a window `scale` times the base one, same time step."""
    medium = config.medium
    length, omega_0 = medium.length_L, medium.carrier

    shifts = [predicted_peak_shift(spec, co, length) for _, co in labelled]
    widths = [np.hypot(spec.tau_0, 2.0 * length * co.g_vd / spec.tau_0) for _, co in labelled]
    lo, hi = min(0.0, *shifts), max(0.0, *shifts)
    extra = (hi - lo) + spec.window * (max(widths) - spec.tau_0)
    sized = spec.model_copy(update={"samples": spec.samples * scale, "window": spec.window * scale})
    grid = pulse_grid(sized, center=0.5 * (lo + hi), extra_span=extra * scale)

    trace_in = input_time_trace(spec, grid)
    spec_in = input_spectrum(spec, grid)
    band = band_mask(spec, grid)

    run = PulsePass(grid, band, {"input": trace_in.intensity()}, {"input": spec_in.intensity()}, {}, {})
    for label, co in labelled:
        out_t = propagate_analytic(spec, grid, co, length, omega_0)
        out_w = output_spectrum(spec, grid, co, length, omega_0)
        m = pulse_metrics(trace_in, out_t)
        run.time_cols[label] = out_t.intensity()
        run.freq_cols[label] = out_w.intensity()
        run.metrics[label] = {
            "n_0": co.n_0,
            "g_vd_times_c": co.g_vd_times_c,
            "c_g_vd_per_gamma": co.g_vd_times_c * medium.gamma_unit,
            "predicted_shift_ns": predicted_peak_shift(spec, co, length) * 1e9,
            "group_delay_ns": length * co.n_0 / SPEED_OF_LIGHT * 1e9,
            "peak_shift_ns": m.peak_shift * 1e9,
            "width_ratio": m.width_ratio,
            "distortion": m.distortion,
            "fourier_l2": _pair_l2(to_frequency(grid, out_t.samples), out_w.samples),
        }

        k = vacuum_wavenumber(grid, omega_0) if label == "vacuum" else medium_wavenumber(config, grid, label, band)
        try:
            numeric = propagate_numeric(spec, grid, k, length)
            numeric_shift = pulse_metrics(trace_in, numeric).peak_shift
        except NumericalError as e:
            run.numeric_errors[label] = f"{e.name}: {e}"
            continue
        run.time_cols[f"{label}_numeric"] = numeric.intensity()
        run.metrics[label]["numeric_l2"] = _envelope_l2(out_t.samples, numeric.samples)
        run.metrics[label]["numeric_peak_shift_ns"] = numeric_shift * 1e9
    return run


def run_pulse(args) -> int:
    config, scenario = resolve_config(args)
    spec = config.pulse

    if args.vacuum:
        labelled = [("vacuum", DispersionCoefficients(n_0=1.0, g_vd=0.0))]
    else:
        labelled = [(m, dispersion_coefficients(config, m)) for m in resolve_modes(args, scenario, "both")]

    run = _pulse_pass(config, spec, labelled, 1)
    for doubling in range(1, WINDOW_DOUBLINGS + 1):
        if not run.aliased:
            break
        status("pulse", f"numeric oracle aliased, retrying on a {2**doubling}x window")
        run = _pulse_pass(config, spec, labelled, 2**doubling)
    for label, error in run.numeric_errors.items():
        warn("pulse", f"{label}: numeric oracle failed: {error}")

    metrics = run.metrics
    if len(labelled) == 2:
        gap = metrics["hot"]["peak_shift_ns"] - metrics["cold"]["peak_shift_ns"]
        status("pulse", f"hot - cold peak separation {gap:.6g} ns")

    grid, band = run.grid, run.band
    labels = list(run.time_cols)
    columns = ["block", "label", "x"] + labels
    rows: List[Dict[str, Any]] = []
    stride = max(1, args.stride)
    for i in range(0, grid.t.size, stride):
        rows.append(
            {"block": "time", "x": float(grid.t[i] / spec.tau_0), **{k: float(v[i]) for k, v in run.time_cols.items()}}
        )
    delta_w = 2.0 * np.pi / spec.tau_0
    for i in np.flatnonzero(band)[::stride]:
        rows.append(
            {"block": "frequency", "x": float(grid.nu[i] / delta_w), **{k: float(v[i]) for k, v in run.freq_cols.items()}}
        )
    names = sorted({name for values in metrics.values() for name in values})
    for name in names:
        rows.append({"block": "metrics", "label": name, **{label: metrics[label].get(name) for label in metrics}})

    emit(write_table(rows, columns, args.format), args.out)

    if args.report:
        name = scenario.name if scenario else "custom"
        report = [
            entry
            for label, values in metrics.items()
            for entry in pulse_report(name, label, config.system.omega_3, values, run.numeric_errors.get(label))
        ]
        _write_report(report, args)
    return 0


def run_calibrate(args) -> int:
    config, scenario = resolve_config(args)
    name = scenario.name if scenario else "custom"
    mode = args.mode or "cold"
    if mode == "both":
        raise _invalid("InvalidValue", "--mode", "calibration needs a single mode")

    result = calibrate(config, args.target, scenario=name, quantity=args.quantity, mode=mode)

    if args.out:
        path = Path(args.out)
    else:
        out_root = Path(os.getenv("OUTPUT_DIR", str(PROJECT_ROOT / "data" / "out")))
        path = out_root / "calibrations" / f"{name}_{args.quantity}_{mode}.json"
    write_stanza(result, path)
    status("calibrate", f"stanza written to {path}")

    row = {**{c: getattr(result, c, None) for c in CALIBRATION_COLUMNS}, "stanza": str(path)}
    sys.stdout.write(write_table([row], CALIBRATION_COLUMNS, args.format))
    return 0


def run_preset_dump(args) -> int:
    names = [args.preset] if args.preset else sorted(PRESETS)
    dumped: Dict[str, Any] = {}
    for name in names:
        try:
            scenario = get_preset(name)
        except KeyError as e:
            raise _invalid("UnknownPreset", "--preset", str(e.args[0])) from None
        config = raise_if_invalid(scenario.document())
        dumped[name] = {"scenario": scenario.provenance(), "config": config.model_dump()}

    doc = dumped[names[0]] if args.preset else dumped
    emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    return 0


# -----------------------------
# CLI
# -----------------------------

# flags whose values may start with "-" (lo:hi:count with a negative lo)
RANGE_FLAGS = ("--grid", "--range")


def join_range_values(argv: Sequence[str]) -> List[str]:
    """Rewrite `--grid -10:10:5` as `--grid=-10:10:5` so argparse keeps the value."""
    out: List[str] = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in RANGE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and ":" in argv[i + 1]:
            out.append(f"{token}={argv[i + 1]}")
            i += 2
            continue
        out.append(token)
        i += 1
    return out


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, default=None, help="JSON or YAML config document.")
    common.add_argument("--preset", type=str, default=None, help="Scenario preset (see preset-dump).")
    common.add_argument("--calibration", type=str, default=None, help="Calibration stanza to apply.")
    common.add_argument("--kappa-e", dest="kappa_e", type=float, default=None, help="Override density_coupling.")
    common.add_argument("--convention", choices=["literal", "frequency"], default=None, help="Group-index convention.")
    common.add_argument("--counter", action="store_true", help="Counter-propagating fields (all alpha_i = -1).")
    common.add_argument("--omega3", type=str, default=None, help="Omega_3 value (delay: comma-separated list).")
    common.add_argument("--mode", choices=["cold", "hot", "both"], default=None)
    common.add_argument("--out", type=str, default=None, help="Write output here instead of stdout.")
    common.add_argument("--format", choices=["csv", "json"], default="csv")

    p = argparse.ArgumentParser(description="chiral_eit: chiral four-level medium optics")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", parents=[common], help="Response spectra versus probe detuning.")
    sp.add_argument("--grid", type=str, default=None, help=f"lo:hi:count in units of gamma (default {DEFAULT_GRID}).")
    sp.add_argument("--vd", type=str, default=None, help="Comma-separated Doppler widths, one hot series each.")
    sp.add_argument("--report", type=str, default=None, help="Write the dispersion sign checks here.")
    sp.set_defaults(handler=run_spectrum)

    dp = sub.add_parser("delay", parents=[common], help="Group index and delay at resonance.")
    dp.add_argument("--report", type=str, default=None, help="Write the reference comparison here.")
    dp.set_defaults(handler=run_delay)

    cp = sub.add_parser("crossover", parents=[common], help="Omega_3 sweep and cold/hot crossover.")
    cp.add_argument("--range", type=str, default=None, help="lo:hi for omega_3.")
    cp.add_argument("--samples", type=int, default=25)
    cp.add_argument("--report", type=str, default=None)
    cp.set_defaults(handler=run_crossover)

    pp = sub.add_parser("pulse", parents=[common], help="Gaussian pulse propagation.")
    pp.add_argument("--vacuum", action="store_true", help="Propagate through vacuum instead of the medium.")
    pp.add_argument("--stride", type=int, default=16, help="Keep every n-th sample in the output.")
    pp.add_argument("--report", type=str, default=None, help="Write the pulse reference checks here.")
    pp.set_defaults(handler=run_pulse)

    kp = sub.add_parser("calibrate", parents=[common], help="Fit kappa_e to a target group index.")
    kp.add_argument("--quantity", choices=["N_g", "n_0"], default="N_g")
    kp.add_argument("--target", type=float, required=True)
    kp.set_defaults(handler=run_calibrate)

    dp = sub.add_parser("preset-dump", parents=[common], help="Print preset parameters as JSON.")
    dp.set_defaults(handler=run_preset_dump)

    return p.parse_args(join_range_values(sys.argv[1:] if argv is None else list(argv)))


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    args = parse_args(argv)
    try:
        return args.handler(args)
    except ValidationError as e:
        fail("config", str(e))
        return 2
    except NumericalError as e:
        fail(e.name, str(e))
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
