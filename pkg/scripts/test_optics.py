import numpy as np
import pytest
from scipy.constants import c

from errors import BranchJump, GridTooCoarse, NoCrossoverInRange
from medium import OpticalResponse
from optics import (
    DispersionPoint,
    delay_table,
    derivative,
    dispersion_slopes,
    frequency_orientation,
    group_index,
    group_index_at,
    omega3_sweep,
    refractive_index,
    superluminal_crossover,
    track_refractive_index,
    uniform_step,
)


def _response(chi_e, chi_m=0.0, xi_eh=0.0, xi_he=0.0):
    chi_e = np.asarray(chi_e, dtype=complex)
    full = lambda v: np.broadcast_to(np.asarray(v, dtype=complex), chi_e.shape).copy()  # noqa: E731
    return OpticalResponse(chi_e, full(chi_m), full(xi_eh), full(xi_he))


def test_vacuum_index_is_one():
    n = refractive_index(_response(np.zeros(3)))
    np.testing.assert_array_equal(n, np.ones(3))


def test_symmetric_chirality_enters_the_radicand():
    n = refractive_index(_response([0.0], xi_eh=0.3, xi_he=0.3))
    assert complex(n[0]) == pytest.approx(np.sqrt(1 - 0.09))


def test_mirrored_chirality_adds_imaginary_part():
    n = refractive_index(_response([0.0], xi_eh=0.2, xi_he=-0.2))
    assert complex(n[0]) == pytest.approx(1 + 0.2j)


def test_tracking_through_zero_radicand_reaches_plus_i():
    chi_e = np.linspace(0.1, -2.0, 2101)
    n = track_refractive_index(_response(chi_e))
    assert complex(n[0]) == pytest.approx(np.sqrt(1.1))
    assert complex(n[-1]) == pytest.approx(1j, abs=1e-12)


def test_tracking_keeps_sign_where_principal_root_flips():
    # radicand circles the origin and crosses the negative real axis
    theta = np.linspace(0.0, 1.5 * np.pi, 301)
    radius = 4.0 - 0.1 * theta
    radicand = radius * np.exp(1j * theta)
    n = track_refractive_index(_response(radicand - 1.0))
    expected = np.sqrt(radius) * np.exp(0.5j * theta)
    np.testing.assert_allclose(n, expected, rtol=1e-12)
    principal = refractive_index(_response(radicand - 1.0))
    assert complex(principal[-1]) == pytest.approx(-complex(expected[-1]))


def test_branch_jump_is_reported():
    with pytest.raises(BranchJump) as exc:
        track_refractive_index(_response([0.0, 0.0, 3.0, 3.0]))
    assert exc.value.index == (2,)


def test_derivative_of_complex_lorentzian():
    h = 1e-3
    x = np.arange(-2.0, 2.0 + h / 2, h)
    f = 1.0 / (x - 1j)
    d = derivative(f, h)
    exact = -1.0 / (x - 1j) ** 2
    np.testing.assert_allclose(d[2:-2], exact[2:-2], rtol=1e-6)
    np.testing.assert_allclose(d[[0, -1]], exact[[0, -1]], rtol=1e-4)


def test_derivative_rejects_coarse_grid():
    x = np.arange(0.0, 20.0, 1.0)
    with pytest.raises(GridTooCoarse):
        derivative(np.sin(3 * x), 1.0)
    with pytest.raises(GridTooCoarse):
        derivative(np.array([1.0, 2.0]), 0.1)


def test_uniform_step():
    assert uniform_step(np.linspace(-1, 1, 5)) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        uniform_step(np.array([0.0, 0.1, 0.3]))


def test_flat_index_gives_phase_index_as_group_index(fig7a):
    grid = np.linspace(-0.01, 0.01, 9)
    profile = group_index(grid, np.full(9, 1.5 + 0.01j), fig7a.medium)
    np.testing.assert_allclose(profile.N_g, 1.5, rtol=1e-12)
    np.testing.assert_allclose(profile.v_g * profile.N_g, c, rtol=1e-12)
    np.testing.assert_allclose(profile.tau, fig7a.medium.length_L * 0.5 / c, rtol=1e-12)


@pytest.mark.parametrize("convention", ["literal", "frequency"])
def test_linear_index_group_index_convention(make_config, convention):
    config = make_config("fig7a", medium={"group_index_convention": convention})
    grid = np.linspace(-0.004, 0.004, 9)
    slope = 1e-6
    profile = group_index(grid, 1.0 + slope * grid, config.medium)
    sign = frequency_orientation(config.medium)
    expected = 1.0 + slope * grid + sign * (config.medium.omega_14 - grid) * slope
    np.testing.assert_allclose(profile.N_g, expected, rtol=1e-7)


def test_resonant_group_index_invariants(fig7a):
    point = group_index_at(fig7a)
    assert point.v_g * point.N_g == pytest.approx(c, rel=1e-12)
    assert point.tau == pytest.approx(fig7a.medium.length_L * (point.N_g - 1) / c, rel=1e-12)
    assert point.tau_ns == pytest.approx(point.tau * 1e9)


def test_conventions_mirror_the_dispersive_part(make_config):
    literal = group_index_at(make_config("fig7c"))
    frequency = group_index_at(make_config("fig7c", medium={"group_index_convention": "frequency"}))
    assert literal.n_r == pytest.approx(frequency.n_r, rel=1e-14)
    assert literal.N_g - literal.n_r == pytest.approx(-(frequency.N_g - frequency.n_r), rel=1e-9)


def test_crossover_found_by_bisection(fig7a):
    root = superluminal_crossover(fig7a, (0.5, 6.0), difference=lambda w: w - 2.0)
    assert root == pytest.approx(2.0, abs=1e-3)


def test_no_crossover_in_range(fig7a):
    with pytest.raises(NoCrossoverInRange):
        superluminal_crossover(fig7a, (0.5, 6.0), difference=lambda w: 1.0)
    with pytest.raises(NoCrossoverInRange):
        superluminal_crossover(fig7a, (3.0, 3.0), difference=lambda w: w)


def _fake_point(n_g: float) -> DispersionPoint:
    return DispersionPoint(delta_p=0.0, n_r=1.0, n_complex=1.0 + 0j, N_g=n_g, v_g=c / n_g, tau=n_g * 1e-9)


def test_delay_table_annotates_failures(fig7a):
    def evaluate(config, delta_p, mode):
        if mode == "hot":
            raise GridTooCoarse("synthetic")
        return _fake_point(config.system.omega_3 * 10)

    rows = delay_table([("a", fig7a), ("b", fig7a.with_system(omega_3=5.0))], ("cold", "hot"), evaluate=evaluate)
    assert [(r.scenario, r.mode) for r in rows] == [("a", "cold"), ("a", "hot"), ("b", "cold"), ("b", "hot")]
    assert rows[0].N_g == pytest.approx(7.0)
    assert rows[0].tau_ns == pytest.approx(7.0)
    assert rows[1].error == "GridTooCoarse" and rows[1].N_g is None
    assert rows[2].omega_3 == 5.0 and rows[2].error is None


def test_omega3_sweep_uses_both_modes(fig7a):
    def evaluate(config, delta_p, mode):
        scale = 1.0 if mode == "cold" else 2.0
        return _fake_point(scale * config.system.omega_3)

    rows = omega3_sweep(fig7a, [1.0, 2.5], evaluate=evaluate)
    assert [r.omega_3 for r in rows] == [1.0, 2.5]
    assert [r.difference for r in rows] == pytest.approx([-1.0, -2.5])
    assert rows[1].v_g_hot == pytest.approx(c / 5.0)


def test_dispersion_character_follows_detuning_orientation(make_config):
    literal = dispersion_slopes(make_config("fig2a"))
    frequency = dispersion_slopes(make_config("fig2a", medium={"group_index_convention": "frequency"}))
    # Re(chi_e) falls and Re(chi_m) rises with delta_p
    assert literal.chi_e < 0 < literal.chi_m
    assert (literal.electric, literal.magnetic) == ("anomalous", "normal")
    assert (frequency.electric, frequency.magnetic) == ("normal", "anomalous")
    assert frequency.chi_e == pytest.approx(-literal.chi_e)
