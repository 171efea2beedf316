# src/scenarios/presets.py
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Literal, Tuple

Mode = Literal["cold", "hot", "both"]


@dataclass(frozen=True)
class Scenario:
    name: str
    note: str
    system: Dict[str, Any] = field(default_factory=dict)
    medium: Dict[str, Any] = field(default_factory=dict)
    pulse: Dict[str, Any] = field(default_factory=dict)
    mode: Mode = "both"
    # optional sweeps the CLI expands into labelled series
    v_doppler_series: Tuple[float, ...] = ()
    omega3_series: Tuple[float, ...] = ()
    omega3_range: Tuple[float, float] | None = None

    def document(self) -> Dict[str, Any]:
        """Raw config overrides, ready to merge under a config file."""
        doc: Dict[str, Any] = {}
        for section in ("system", "medium", "pulse"):
            values = getattr(self, section)
            if values:
                doc[section] = dict(values)
        return doc

    def provenance(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"name": self.name, "note": self.note, "mode": self.mode}
        if self.v_doppler_series:
            out["v_doppler_series"] = list(self.v_doppler_series)
        if self.omega3_series:
            out["omega3_series"] = list(self.omega3_series)
        if self.omega3_range:
            out["omega3_range"] = list(self.omega3_range)
        return out


def _equal_decays(gamma: float) -> Dict[str, float]:
    return {f"gamma_{i}": gamma for i in range(1, 5)}


_ZERO_DETUNINGS = {"delta_p": 0.0, "delta_b": 0.0, "delta_1": 0.0, "delta_2": 0.0}
_CO_PROPAGATING = {"alpha_1": 1, "alpha_2": 1, "alpha_3": 1}

NARROW_LINE = {
    **_equal_decays(0.1),
    **_ZERO_DETUNINGS,
    **_CO_PROPAGATING,
    "omega_1": 0.1,
    "omega_2": 1.0,
    "phi": math.pi / 2,
}
BROAD_LINE = {
    **_equal_decays(2.0),
    **_ZERO_DETUNINGS,
    **_CO_PROPAGATING,
    "omega_1": 2.0,
    "omega_2": 2.0,
    "phi": math.pi / 2,
}
SLAB = {"omega_14": 1e4, "length_L": 0.06, "gamma_unit": 1e9, "dipole_ratio": 5.3e-5}
FIG8_PULSE = {"tau_0": 5.5e-9, "delta": 2e9}
FIG8_REMARK = "caption cites the fig2 parameters but the broad-line set is used"


def _narrow(name: str, what: str, omega_3: float, **extra: float) -> Scenario:
    system = {**NARROW_LINE, "omega_3": omega_3}
    v_doppler = extra.pop("v_doppler", 0.5)
    system.update(extra)
    return Scenario(
        name=name,
        note=f"{what}; gamma_i = 0.1, omega_1 = 0.1, omega_2 = {system['omega_2']:g}, "
        f"omega_3 = {omega_3:g}, V_D = {v_doppler:g}",
        system=system,
        medium={**SLAB, "v_doppler": v_doppler},
    )


def _broad(name: str, what: str, omega_3: float, remark: str = "", **kw: Any) -> Scenario:
    note = f"{what}; gamma_i = 2, omega_1 = omega_2 = 2, omega_3 = {omega_3:g}, V_D = 1.5, L = 6 cm"
    return Scenario(
        name=name,
        note=f"{note}; {remark}" if remark else note,
        system={**BROAD_LINE, "omega_3": omega_3},
        medium={**SLAB, "v_doppler": 1.5},
        **kw,
    )


def _build() -> Dict[str, Scenario]:
    presets: List[Scenario] = []

    for fig, what in (("fig2", "susceptibilities"), ("fig3", "chiralities")):
        presets += [
            _narrow(f"{fig}a", what, 0.7),
            _narrow(f"{fig}b", what, 1.0),
            _narrow(f"{fig}c", what, 0.7),
            _narrow(f"{fig}d", what, 1.0),
            _narrow(f"{fig}e", what, 0.7, omega_2=4.0, v_doppler=0.1),
            _narrow(f"{fig}f", what, 0.7, omega_2=4.0, v_doppler=0.1),
        ]

    for fig, what in (("fig4", "susceptibilities"), ("fig5", "chiralities")):
        presets += [
            _broad(f"{fig}a", what, 1.5),
            _broad(f"{fig}b", what, 5.0),
            _broad(f"{fig}c", what, 1.5),
            _broad(f"{fig}d", what, 5.0),
        ]

    fig6 = _narrow("fig6", "Doppler-width family", 0.7, omega_2=4.0, v_doppler=0.3)
    presets.append(
        Scenario(
            name=fig6.name,
            note=fig6.note.replace("V_D = 0.3", "V_D = 0, 0.1, 0.2, 0.3"),
            system=fig6.system,
            medium=fig6.medium,
            mode="hot",
            v_doppler_series=(0.0, 0.1, 0.2, 0.3),
        )
    )

    group = "group index and delay"
    presets += [
        _broad("fig7", group, 1.5, omega3_series=(0.7, 1.0, 1.5, 5.0), omega3_range=(0.5, 6.0)),
        _broad("fig7a", group + ", subluminal", 0.7),
        _broad("fig7b", group + ", subluminal", 1.0),
        _broad("fig7c", group + ", superluminal", 1.5),
        _broad("fig7d", group + ", superluminal", 5.0),
        _broad("fig7e", "group index versus omega_3 at resonance", 1.5, omega3_range=(0.5, 6.0)),
        _broad("fig7f", "group velocity versus omega_3 at resonance", 1.5, omega3_range=(0.5, 6.0)),
    ]

    pulse_families = (
        (("fig8ab", "fig8a", "fig8b"), 0.7, "delayed"),
        (("fig8cd", "fig8c", "fig8d"), 1.5, "advanced"),
    )
    for names, omega_3, regime in pulse_families:
        presets += [
            _broad(name, f"Gaussian pulse, {regime}", omega_3, FIG8_REMARK, pulse=dict(FIG8_PULSE))
            for name in names
        ]

    return {s.name: s for s in presets}


PRESETS: Dict[str, Scenario] = _build()


def get_preset(name: str) -> Scenario:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset '{name}' (known: {', '.join(sorted(PRESETS))})") from None


def counter_propagating(scenario_doc: Dict[str, Any]) -> Dict[str, Any]:
    """Flip every propagation sign to -1 on top of a raw document."""
    system = {**scenario_doc.get("system", {}), "alpha_1": -1, "alpha_2": -1, "alpha_3": -1}
    return {**scenario_doc, "system": system}
