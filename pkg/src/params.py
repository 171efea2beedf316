# src/params.py
"""Configuration models for the four-level chiral medium.

All frequencies inside `SystemParams` are in units of the decay scale gamma;
`MediumParams.gamma_unit` converts them to SI only where velocities, delays and
pulse times are reported.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Dict, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

_MODEL_CONFIG = ConfigDict(extra="forbid", frozen=True, allow_inf_nan=False)


class SystemParams(BaseModel):
    model_config = _MODEL_CONFIG

    # control and probe Rabi frequencies
    omega_1: float = Field(0.1, ge=0)
    omega_2: float = Field(1.0, ge=0)
    omega_3: float = Field(0.7, ge=0)
    omega_p: float = Field(0.01, ge=0)
    omega_b: float = Field(0.01, ge=0)

    delta_p: float = 0.0
    delta_b: float = 0.0
    delta_1: float = 0.0
    delta_2: float = 0.0

    gamma_1: float = Field(0.1, gt=0)
    gamma_2: float = Field(0.1, gt=0)
    gamma_3: float = Field(0.1, gt=0)
    gamma_4: float = Field(0.1, gt=0)

    phi: float = math.pi / 2

    alpha_1: int = 1
    alpha_2: int = 1
    alpha_3: int = 1

    @field_validator("alpha_1", "alpha_2", "alpha_3")
    @classmethod
    def _unit_sign(cls, v: int) -> int:
        if v not in (-1, 1):
            raise ValueError("propagation sign must be +1 or -1")
        return v

    @property
    def half_width_probe(self) -> float:
        """(gamma_1 + gamma_2) / 2, the decay part of A1 and A3."""
        return 0.5 * (self.gamma_1 + self.gamma_2)

    @property
    def half_width_two_photon(self) -> float:
        return 0.5 * (self.gamma_1 + self.gamma_2 + self.gamma_3 + self.gamma_4)


class MediumParams(BaseModel):
    model_config = _MODEL_CONFIG

    gamma_unit: float = Field(1e9, gt=0)
    omega_14: float = Field(1e4, gt=0)
    length_L: float = Field(0.06, gt=0)
    v_doppler: float = Field(0.0, ge=0)
    density_coupling: float = Field(1.0, gt=0)
    dipole_ratio: float = Field(5.3e-5, gt=0, lt=1)
    group_index_convention: Literal["literal", "frequency"] = "literal"

    @property
    def carrier(self) -> float:
        """Carrier angular frequency omega_0 = omega_14 in rad/s."""
        return self.omega_14 * self.gamma_unit


class QuadratureSpec(BaseModel):
    model_config = _MODEL_CONFIG

    method: Literal["gauss-hermite", "adaptive-trapezoid"] = "gauss-hermite"
    node_count: int = Field(64, ge=8)
    # half-width of the adaptive window in units of V_D
    truncation: float = Field(4.0, gt=0)
    rel_tol: float = Field(1e-8, gt=0)
    max_panels: int = Field(2**20, ge=64)


class PulseSpec(BaseModel):
    model_config = _MODEL_CONFIG

    tau_0: float = Field(5.5e-9, gt=0)
    delta: float = 2e9
    samples: int = Field(2**14, ge=256)
    # time window length in units of tau_0
    window: float = Field(64.0, ge=8)
    include_absorption: bool = True


class Config(BaseModel):
    model_config = _MODEL_CONFIG

    system: SystemParams = SystemParams()
    medium: MediumParams = MediumParams()
    quadrature: QuadratureSpec = QuadratureSpec()
    pulse: PulseSpec = PulseSpec()

    def with_system(self, **changes: Any) -> "Config":
        return self._replace("system", changes)

    def with_medium(self, **changes: Any) -> "Config":
        return self._replace("medium", changes)

    def _replace(self, section: str, changes: Dict[str, Any]) -> "Config":
        raw = self.model_dump()
        raw[section].update(changes)
        return Config.model_validate(raw)


@dataclass(frozen=True)
class Couplings:
    kappa_e: float
    kappa_m: float
    kappa_x: float


def derived_couplings(medium: MediumParams) -> Couplings:
    """Electric, magnetic and cross couplings.

    kappa_m = kappa_e * r**2 and kappa_x = kappa_e * r, with r the dipole ratio
    mu_13 / (c sigma_14).
    """
    k_e = medium.density_coupling
    r = medium.dipole_ratio
    return Couplings(kappa_e=k_e, kappa_m=k_e * r * r, kappa_x=k_e * r)
