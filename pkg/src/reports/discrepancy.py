# src/reports/discrepancy.py
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from optics import DelayRow, DispersionSlopes

TOLERANCE = 0.10

AMBIGUOUS = (
    "two-photon denominator reading (Omega_2/Omega_3 pairing with A_2/A_3); "
    "group-index frequency factor sign (group_index_convention)"
)


@dataclass(frozen=True)
class Reference:
    omega_3: float
    mode: str
    N_g: float
    tau_ns: Optional[float] = None


# Reference group indices and delays at gamma_i = 2, omega_1 = omega_2 = 2, V_D = 1.5, L = 6 cm
REFERENCES: Sequence[Reference] = (
    Reference(0.7, "cold", 1415.65, 121.0),
    Reference(0.7, "hot", 1618.15, 917.0),
    Reference(1.0, "cold", 110.96, 219.0),
    Reference(1.0, "hot", 164.013),
    Reference(1.5, "cold", -2023.81, -404.0),
    Reference(1.5, "hot", -1487.22),
    # "-119.36 s" as quoted is read as nanoseconds
    Reference(5.0, "cold", -595.818, -119.36),
    Reference(5.0, "hot", -751.666, -150.53),
)

# hot minus cold delay at omega_3 = 0.7: from the two delays, and the separately quoted gap
DELAY_GAP_FROM_DELAYS_NS = 796.0
DELAY_GAP_QUOTED_NS = 896.0
CROSSOVER_OMEGA_3 = 3.6
CROSSOVER_TOLERANCE = 0.5


def _lookup(omega_3: float, mode: str) -> Optional[Reference]:
    for ref in REFERENCES:
        if ref.mode == mode and abs(ref.omega_3 - omega_3) < 1e-9:
            return ref
    return None


def _deviation(reference: float, computed: Optional[float]) -> Optional[float]:
    if computed is None:
        return None
    return abs(computed - reference) / abs(reference)


def _row(scenario: str, mode: str, omega_3: float, quantity: str, reference: float, computed: Optional[float]) -> Dict:
    dev = _deviation(reference, computed)
    ok = dev is not None and dev <= TOLERANCE
    return {
        "scenario": scenario,
        "mode": mode,
        "omega_3": omega_3,
        "quantity": quantity,
        "reference": reference,
        "computed": computed,
        "relative_deviation": dev,
        "within_tolerance": ok,
        "note": "" if ok else AMBIGUOUS,
    }


def discrepancy_report(rows: Sequence[DelayRow]) -> List[Dict]:
    """Compare computed delay rows with the reference values they correspond to."""
    report: List[Dict] = []
    by_key: Dict[tuple, DelayRow] = {}
    for row in rows:
        by_key[(round(row.omega_3, 9), row.mode)] = row
        ref = _lookup(row.omega_3, row.mode)
        if ref is None:
            continue
        report.append(_row(row.scenario, row.mode, row.omega_3, "N_g", ref.N_g, row.N_g))
        if ref.tau_ns is not None:
            report.append(_row(row.scenario, row.mode, row.omega_3, "tau_ns", ref.tau_ns, row.tau_ns))

    cold = by_key.get((0.7, "cold"))
    hot = by_key.get((0.7, "hot"))
    if cold and hot and cold.tau_ns is not None and hot.tau_ns is not None:
        gap = hot.tau_ns - cold.tau_ns
        for reference in (DELAY_GAP_FROM_DELAYS_NS, DELAY_GAP_QUOTED_NS):
            entry = _row(hot.scenario, "hot-cold", 0.7, "delay_gap_ns", reference, gap)
            if reference != DELAY_GAP_FROM_DELAYS_NS:
                entry["note"] = "quoted gap disagrees with the difference of the quoted delays"
            report.append(entry)
    return report


def crossover_report(omega_3: Optional[float]) -> Dict:
    entry = _row("crossover", "cold-hot", CROSSOVER_OMEGA_3, "omega_3_star", CROSSOVER_OMEGA_3, omega_3)
    ok = omega_3 is not None and abs(omega_3 - CROSSOVER_OMEGA_3) <= CROSSOVER_TOLERANCE
    entry["within_tolerance"] = ok
    entry["note"] = "" if ok else AMBIGUOUS
    return entry


ORIENTATION_NOTE = (
    "dispersion sign follows the detuning orientation of group_index_convention "
    "(literal: omega_p = omega_14 + delta_p, frequency: omega_p = omega_14 - delta_p)"
)


def dispersion_report(
    scenario: str, mode: str, omega_3: float, slopes: DispersionSlopes
) -> List[Dict]:
    """Normal dispersion in chi_e and anomalous in chi_m at resonance, as sign checks."""
    report = []
    for quantity, expected, found in (
        ("chi_e_dispersion", "normal", slopes.electric),
        ("chi_m_dispersion", "anomalous", slopes.magnetic),
    ):
        ok = found == expected
        report.append(
            {
                "scenario": scenario,
                "mode": mode,
                "omega_3": omega_3,
                "quantity": quantity,
                "reference": expected,
                "computed": found,
                "relative_deviation": None,
                "within_tolerance": ok,
                "note": "" if ok else ORIENTATION_NOTE,
            }
        )
    return report


# (omega_3, mode) -> (n_0, c G_vd in units of 1/gamma) for the pulse regimes
PULSE_REFERENCES: Mapping[Tuple[float, str], Tuple[float, Optional[float]]] = {
    (0.7, "cold"): (1415.65, 759.44),
    (0.7, "hot"): (1618.15, 18.92),
    (1.5, "cold"): (-2023.81, -9006.67),
    (1.5, "hot"): (-1487.22, None),
}
PEAK_SHIFT_TOLERANCE = 0.02
DISTORTION_BOUND = 1e-2
NUMERIC_L2_BOUND = 1e-3
FOURIER_L2_BOUND = 1e-6

EXPANSION_NOTE = (
    "first-order expansion of k about omega_14 does not hold over the pulse band "
    "centred at omega_14 + delta (higher-order dispersion and absorption)"
)
SHIFT_NOTE = "predicted shift L(n_0/c + G_vd delta) carries the carrier-offset term G_vd delta"
FOURIER_NOTE = "time and frequency outputs are not a transform pair on this grid"


def _bound_row(
    scenario: str, mode: str, omega_3: float, quantity: str, bound: float, computed: Optional[float], note: str
) -> Dict:
    ok = computed is not None and abs(computed) < bound
    return {
        "scenario": scenario,
        "mode": mode,
        "omega_3": omega_3,
        "quantity": quantity,
        "reference": bound,
        "computed": computed,
        "relative_deviation": None,
        "within_tolerance": ok,
        "note": "" if ok else note,
    }


def _pulse_reference(omega_3: float, mode: str) -> Optional[Tuple[float, Optional[float]]]:
    for (o3, m), values in PULSE_REFERENCES.items():
        if m == mode and abs(o3 - omega_3) < 1e-9:
            return values
    return None


def pulse_report(
    scenario: str,
    mode: str,
    omega_3: float,
    metrics: Mapping[str, Optional[float]],
    numeric_error: Optional[str] = None,
) -> List[Dict]:
    """Pulse quantities against the quoted coefficients and the first-order claims.

    `metrics` holds n_0, c_g_vd_per_gamma, peak_shift_ns, group_delay_ns,
    distortion, fourier_l2 and, when the numeric oracle ran, numeric_l2.
    """
    report: List[Dict] = []
    ref = _pulse_reference(omega_3, mode)
    if ref is not None:
        n_0, c_g_vd = ref
        report.append(_row(scenario, mode, omega_3, "n_0", n_0, metrics.get("n_0")))
        if c_g_vd is not None:
            report.append(
                _row(scenario, mode, omega_3, "c_G_vd_per_gamma", c_g_vd, metrics.get("c_g_vd_per_gamma"))
            )

    shift = _row(scenario, mode, omega_3, "peak_shift_ns", metrics["group_delay_ns"], metrics.get("peak_shift_ns"))
    dev = shift["relative_deviation"]
    shift["within_tolerance"] = dev is not None and dev <= PEAK_SHIFT_TOLERANCE
    shift["note"] = "" if shift["within_tolerance"] else SHIFT_NOTE
    report.append(shift)

    report.append(
        _bound_row(scenario, mode, omega_3, "distortion", DISTORTION_BOUND, metrics.get("distortion"), EXPANSION_NOTE)
    )
    report.append(
        _bound_row(
            scenario, mode, omega_3, "fourier_pair_l2", FOURIER_L2_BOUND, metrics.get("fourier_l2"), FOURIER_NOTE
        )
    )
    numeric_note = f"numeric oracle failed: {numeric_error}" if numeric_error else EXPANSION_NOTE
    report.append(
        _bound_row(
            scenario, mode, omega_3, "analytic_vs_numeric_l2", NUMERIC_L2_BOUND, metrics.get("numeric_l2"), numeric_note
        )
    )
    return report


REPORT_COLUMNS = (
    "scenario",
    "mode",
    "omega_3",
    "quantity",
    "reference",
    "computed",
    "relative_deviation",
    "within_tolerance",
    "note",
)
