# src/scenarios/calibrate.py
"""Root-find of the density coupling kappa_e against a target group index."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict, Literal, Tuple

import numpy as np
from scipy.optimize import brentq

from console import status
from errors import NoRootInBracket, NumericalError
from optics import group_index_at
from params import Config

Quantity = Literal["N_g", "n_0"]
Mode = Literal["cold", "hot"]

# kappa_e is scanned over whole decades 10**lo .. 10**hi
KAPPA_DECADES = (-6, 6)


@dataclass(frozen=True)
class CalibrationResult:
    scenario: str
    quantity: str
    mode: str
    target: float
    kappa_e: float
    achieved: float

    @property
    def relative_error(self) -> float:
        return abs(self.achieved - self.target) / abs(self.target) if self.target else abs(self.achieved)

    def stanza(self) -> Dict[str, Any]:
        """Config fragment that reproduces the calibration."""
        return {
            "medium": {"density_coupling": self.kappa_e},
            "calibration": {**asdict(self), "relative_error": self.relative_error},
        }


def calibrate(
    config: Config,
    target: float,
    *,
    scenario: str = "custom",
    quantity: Quantity = "N_g",
    mode: Mode = "cold",
    delta_p: float = 0.0,
    decades: Tuple[int, int] = KAPPA_DECADES,
) -> CalibrationResult:
    """kappa_e such that the group index at `delta_p` equals `target`.

    n_0 is the group index at resonance, so both quantities evaluate N_g; for n_0
    the detuning is forced to 0.
    """
    at = 0.0 if quantity == "n_0" else delta_p

    def residual(kappa: float) -> float:
        cfg = config.with_medium(density_coupling=float(kappa))
        return group_index_at(cfg, at, mode).N_g - target

    kappas = 10.0 ** np.arange(decades[0], decades[1] + 1)
    previous = None
    for kappa in kappas:
        try:
            value = residual(kappa)
        except NumericalError as e:
            status("calibrate", f"kappa_e={kappa:.3g} skipped: {e.name}")
            previous = None
            continue
        if value == 0.0:
            root = float(kappa)
            break
        if previous is not None and np.sign(value) != np.sign(previous[1]):
            root = float(brentq(residual, previous[0], kappa, xtol=1e-14, rtol=1e-13))
            break
        previous = (float(kappa), value)
    else:
        raise NoRootInBracket(
            f"{quantity} = {target:g} not reached for kappa_e in [1e{decades[0]}, 1e{decades[1]}]"
        )

    achieved = residual(root) + target
    status("calibrate", f"{scenario}: kappa_e = {root:.12g} gives {quantity} = {achieved:.12g} ({mode})")
    return CalibrationResult(scenario, quantity, mode, float(target), root, float(achieved))


def write_stanza(result: CalibrationResult, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(result.stanza(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def load_stanza(path: Path) -> Dict[str, Any]:
    """Config overrides stored in a calibration stanza (the `calibration` record is dropped)."""
    data = json.loads(path.read_text(encoding="utf-8"))
    return {k: v for k, v in data.items() if k != "calibration"}
