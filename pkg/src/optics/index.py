# src/optics/index.py
from __future__ import annotations

import numpy as np

from errors import BranchJump
from medium import OpticalResponse

BRANCH_JUMP = 0.5


def _radicand(r: OpticalResponse) -> np.ndarray:
    chi_e = np.asarray(r.chi_e, dtype=complex)
    chi_m = np.asarray(r.chi_m, dtype=complex)
    xi_sum = np.asarray(r.xi_eh, dtype=complex) + np.asarray(r.xi_he, dtype=complex)
    return (1.0 + chi_e) * (1.0 + chi_m) - 0.25 * xi_sum**2


def _antisymmetric(r: OpticalResponse) -> np.ndarray:
    return 0.5j * (np.asarray(r.xi_eh, dtype=complex) - np.asarray(r.xi_he, dtype=complex))


def refractive_index(r: OpticalResponse) -> np.ndarray:
    """Chiral index with the principal square root (Re >= 0) at every point.

    Use `track_refractive_index` for spectra; it keeps the branch continuous.
    """
    return np.sqrt(_radicand(r)) + _antisymmetric(r)


def track_refractive_index(r: OpticalResponse) -> np.ndarray:
    """Complex index along a spectrum with a continuous square-root branch.

    Tracking starts at the point of largest |1 + chi_e| on the principal branch
    and walks outward, flipping the root sign only when the flipped root is
    strictly closer to the neighbour already fixed.
    """
    z = np.atleast_1d(_radicand(r))
    roots = np.sqrt(z)
    seed = int(np.argmax(np.abs(1.0 + np.atleast_1d(np.asarray(r.chi_e, dtype=complex)))))

    tracked = roots.copy()
    for order in (range(seed + 1, z.size), range(seed - 1, -1, -1)):
        for i in order:
            prev = tracked[i - 1] if i > seed else tracked[i + 1]
            if abs(-roots[i] - prev) < abs(roots[i] - prev):
                tracked[i] = -roots[i]

    n = tracked + np.atleast_1d(_antisymmetric(r))
    if n.size > 1:
        jumps = np.abs(np.diff(n))
        worst = int(np.argmax(jumps))
        if jumps[worst] > BRANCH_JUMP:
            raise BranchJump(
                f"index changes by {jumps[worst]:.3g} between points {worst} and {worst + 1}",
                index=(worst + 1,),
            )
    return n
