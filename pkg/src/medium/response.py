# src/medium/response.py
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Literal, Tuple

import numpy as np

from errors import DegenerateMagnetic, NumericalError
from params import Config, Couplings, derived_couplings

from .coherences import (
    ArrayLike,
    CoherenceCoefficients,
    build_system_matrix,
    shifted_detunings,
    solve_steady_state,
)

Mode = Literal["cold", "hot"]

COMPONENTS = ("chi_e", "chi_m", "xi_eh", "xi_he")
MAGNETIC_TOLERANCE = 1e-12


@dataclass(frozen=True)
class OpticalResponse:
    """Electric/magnetic susceptibilities and the two chirality coefficients.

    Each field is a complex array shaped like the detuning grid it was evaluated on.
    """

    chi_e: np.ndarray
    chi_m: np.ndarray
    xi_eh: np.ndarray
    xi_he: np.ndarray

    @classmethod
    def from_stack(cls, stacked: np.ndarray) -> "OpticalResponse":
        """Inverse of `stack`: leading axis ordered as COMPONENTS."""
        return cls(*(np.asarray(stacked[i]) for i in range(len(COMPONENTS))))

    def stack(self) -> np.ndarray:
        return np.stack([np.asarray(getattr(self, name)) for name in COMPONENTS])

    def __len__(self) -> int:
        return int(np.size(self.chi_e))

    def __getitem__(self, index) -> "OpticalResponse":
        return OpticalResponse(*(np.asarray(getattr(self, n))[index] for n in COMPONENTS))

    def points(self) -> Iterator["OpticalResponse"]:
        for i in range(len(self)):
            yield self[i]


def response_from_betas(betas: CoherenceCoefficients, couplings: Couplings) -> OpticalResponse:
    k_e, k_m, k_x = couplings.kappa_e, couplings.kappa_m, couplings.kappa_x
    magnetic = 1.0 - k_m * betas.beta_bb

    small = np.abs(magnetic) < MAGNETIC_TOLERANCE
    if np.any(small):
        bad = tuple(int(i) for i in np.argwhere(small)[0])
        raise DegenerateMagnetic("1 - kappa_m * beta_BB vanishes", index=bad)

    return OpticalResponse(
        chi_e=k_x**2 * betas.beta_be * betas.beta_eb / magnetic + k_e * betas.beta_ee,
        chi_m=k_m * betas.beta_bb / magnetic,
        xi_eh=k_x * betas.beta_eb / magnetic,
        xi_he=k_x * betas.beta_be / magnetic,
    )


def response_at(config: Config, kv: ArrayLike = 0.0, delta_p: ArrayLike | None = None) -> OpticalResponse:
    """Response at velocity shift `kv`; `delta_p` and `kv` broadcast against each other."""
    s = shifted_detunings(config.system, kv=kv, delta_p=delta_p)
    m, x_p, x_b = build_system_matrix(config.system, s)
    betas = solve_steady_state(m, x_p, x_b)
    return response_from_betas(betas, derived_couplings(config.medium))


def _attach_grid_index(err: NumericalError, grid: np.ndarray) -> NumericalError:
    if err.index:
        pos = int(err.index[0])
        return err.at_grid_point(pos, float(grid[pos]))
    return err


def spectrum(config: Config, grid: ArrayLike, mode: Mode = "cold") -> OpticalResponse:
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    if mode == "hot":
        from .doppler import hot_spectrum

        return hot_spectrum(config, grid)
    try:
        return response_at(config, 0.0, grid)
    except NumericalError as e:
        raise _attach_grid_index(e, grid) from None


def gain_regions(grid: ArrayLike, response: OpticalResponse) -> List[Tuple[float, float]]:
    """Contiguous detuning ranges where Im(chi_e) < 0."""
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    gain = np.atleast_1d(np.imag(response.chi_e)) < 0
    regions: List[Tuple[float, float]] = []
    start = None
    for i, flag in enumerate(gain):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            regions.append((float(grid[start]), float(grid[i - 1])))
            start = None
    if start is not None:
        regions.append((float(grid[start]), float(grid[-1])))
    return regions
