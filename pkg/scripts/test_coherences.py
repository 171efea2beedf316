import math

import numpy as np
import pytest

from errors import SingularSystem
from medium import (
    build_system_matrix,
    closed_form_betas,
    denominator_terms,
    determinant_polynomial,
    shifted_detunings,
    singular_velocities,
    solve_steady_state,
    steady_state_vectors,
    unit_drives,
)
from medium.coherences import CONDITION_LIMIT
from params import SystemParams


def _system(**kw) -> SystemParams:
    base = dict(
        gamma_1=0.1, gamma_2=0.1, gamma_3=0.1, gamma_4=0.1,
        omega_1=0.1, omega_2=1.0, omega_3=0.7, phi=math.pi / 2,
    )
    base.update(kw)
    return SystemParams(**base)


def _random_system(rng) -> SystemParams:
    draw = lambda: float(rng.uniform(0.05, 5.0))  # noqa: E731
    return SystemParams(
        omega_1=draw(), omega_2=draw(), omega_3=draw(),
        omega_p=draw(), omega_b=draw(),
        delta_p=draw(), delta_b=draw(), delta_1=draw(), delta_2=draw(),
        gamma_1=draw(), gamma_2=draw(), gamma_3=draw(), gamma_4=draw(),
        phi=float(rng.uniform(0.0, 2.0 * math.pi)),
        alpha_1=int(rng.choice([-1, 1])), alpha_2=int(rng.choice([-1, 1])), alpha_3=int(rng.choice([-1, 1])),
    )


def _stack(b):
    return np.array([b.beta_ee, b.beta_eb, b.beta_be, b.beta_bb])


def test_shifted_detunings_follow_propagation_signs():
    p = _system(delta_p=0.3, delta_b=-0.2, delta_1=0.5, delta_2=1.5, alpha_1=-1, alpha_2=1, alpha_3=-1)
    s = shifted_detunings(p, kv=0.25)
    assert s.d_p == pytest.approx(0.55)
    assert s.d_b == pytest.approx(-0.45)
    assert s.d_1 == pytest.approx(0.25)
    assert s.d_2 == pytest.approx(1.75)


def test_denominator_terms_decay_and_detuning_parts():
    p = _system(gamma_1=0.2, gamma_2=0.4, gamma_3=1.0, gamma_4=2.0, delta_p=0.3, delta_b=0.1, delta_1=0.7)
    t = denominator_terms(p, shifted_detunings(p))
    assert complex(t.a1) == pytest.approx(complex(-0.3, 0.3))
    assert complex(t.a3) == pytest.approx(complex(-0.3, 0.1))
    assert complex(t.a2) == pytest.approx(complex(-1.8, 0.6))


def test_matrix_diagonal_without_control_fields():
    p = _system(omega_1=0.0, omega_2=0.0, omega_3=0.0, delta_p=0.4)
    m, _, _ = build_system_matrix(p, shifted_detunings(p))
    t = denominator_terms(p, shifted_detunings(p))
    assert np.count_nonzero(m - np.diag(np.diag(m))) == 0
    np.testing.assert_allclose(np.diag(m), [complex(t.a1), complex(t.a3), complex(t.a2)])


def test_matrix_without_microwave_coupling():
    p = _system(omega_3=0.0)
    m, _, _ = build_system_matrix(p, shifted_detunings(p))
    assert m[0, 1] == 0 and m[1, 0] == 0


def test_matrix_matches_hand_expansion_fig2():
    p = _system()
    m, x_p, x_b = build_system_matrix(p, shifted_detunings(p))
    a1 = -0.1
    a2 = -0.2
    expected = np.array(
        [
            [a1, 0.5j * 0.7 * 1j, 0.5j * 1.0],
            [0.5j * 0.7 * -1j, a1, 0.5j * 0.1],
            [0.5j * 1.0, -0.5j * 0.1, a2],
        ]
    )
    np.testing.assert_allclose(m, expected, rtol=0, atol=1e-15)
    np.testing.assert_allclose(x_p, [0.5j * p.omega_p, 0, 0])
    np.testing.assert_allclose(x_b, [0, 0.5j * p.omega_b, 0])


def test_two_level_limit():
    p = _system(omega_1=0.0, omega_2=0.0, omega_3=0.0, gamma_1=0.3, gamma_2=0.5)
    b = solve_steady_state(*build_system_matrix(p, shifted_detunings(p)))
    assert complex(b.beta_ee) == pytest.approx(1j / (0.3 + 0.5), rel=1e-12)
    assert b.beta_eb == 0 and b.beta_be == 0


def test_closed_form_agrees_with_solve_fig2():
    p = _system()
    s = shifted_detunings(p)
    solved = _stack(solve_steady_state(*build_system_matrix(p, s)))
    closed = _stack(closed_form_betas(p, s))
    np.testing.assert_allclose(closed, solved, rtol=1e-10, atol=0)


def test_closed_form_agrees_with_solve_on_random_draws():
    rng = np.random.default_rng(20240601)
    checked = 0
    for _ in range(1000):
        p = _random_system(rng)
        s = shifted_detunings(p, kv=float(rng.uniform(-5, 5)))
        m, x_p, x_b = build_system_matrix(p, s)
        cond = np.linalg.cond(m)
        if cond > CONDITION_LIMIT:
            continue
        solved = _stack(solve_steady_state(m, x_p, x_b))
        closed = _stack(closed_form_betas(p, s))
        # forward error of either route grows with the condition number
        assert np.linalg.norm(closed - solved) <= (1e-10 + 1e-12 * cond) * np.linalg.norm(solved)
        checked += 1
    assert checked >= 900


def test_solve_residual_on_random_draws():
    rng = np.random.default_rng(7)
    checked = 0
    for _ in range(1000):
        p = _random_system(rng)
        m, x_p, x_b = build_system_matrix(p, shifted_detunings(p, kv=float(rng.uniform(-5, 5))))
        if np.linalg.cond(m) > CONDITION_LIMIT:
            continue
        x = unit_drives(x_p, x_b)
        y = steady_state_vectors(m, x_p, x_b)
        residual = np.linalg.norm(m @ y + x)
        # normwise backward error
        assert residual <= 1e-12 * (np.linalg.norm(m, 2) * np.linalg.norm(y) + np.linalg.norm(x))
        checked += 1
    assert checked >= 900


def test_coherences_are_linear_in_probe_amplitudes():
    p = _system(omega_p=0.02, omega_b=0.03)
    b = solve_steady_state(*build_system_matrix(p, shifted_detunings(p)))
    p2 = p.model_copy(update={"omega_p": 0.06, "omega_b": 0.0})
    b2 = solve_steady_state(*build_system_matrix(p2, shifted_detunings(p2)))
    np.testing.assert_allclose(_stack(b2), _stack(b), rtol=1e-13)
    rho_14, rho_13 = b.coherences(0.06, 0.0)
    assert complex(rho_14) == pytest.approx(0.06 * complex(b.beta_ee))
    assert complex(rho_13) == pytest.approx(0.06 * complex(b.beta_be))


def test_microwave_off_closed_form():
    p = _system(omega_3=0.0, delta_p=0.2)
    s = shifted_detunings(p)
    t = denominator_terms(p, s)
    denom = 2.0 * (-(p.omega_1**2) * t.a1 + p.omega_2**2 * t.a3 + 4 * t.a1 * t.a2 * t.a3)
    b = closed_form_betas(p, s)
    assert complex(b.beta_eb) == pytest.approx(complex(-1j * p.omega_1 * p.omega_2 / denom), rel=1e-13)


def test_conjugate_relation_at_quadrature_phase_and_resonance():
    p = _system()
    b = solve_steady_state(*build_system_matrix(p, shifted_detunings(p)))
    assert float(b.conjugate_deviation()) < 1e-12
    detuned = _system(delta_p=0.4)
    b = solve_steady_state(*build_system_matrix(detuned, shifted_detunings(detuned)))
    assert float(b.conjugate_deviation()) > 1e-3


def test_betas_do_not_depend_on_probe_kv_grid_shape():
    p = _system()
    grid = np.linspace(-2, 2, 5)
    b = solve_steady_state(*build_system_matrix(p, shifted_detunings(p, kv=0.0, delta_p=grid)))
    for i, dp in enumerate(grid):
        single = solve_steady_state(*build_system_matrix(p, shifted_detunings(p, delta_p=dp)))
        assert complex(b.beta_ee[i]) == pytest.approx(complex(single.beta_ee), rel=1e-12)


def test_singular_matrix_raises():
    with pytest.raises(SingularSystem):
        solve_steady_state(np.zeros((3, 3)), np.array([0.5j, 0, 0]), np.array([0, 0.5j, 0]))


def test_singular_velocities_are_roots_of_the_determinant():
    p = _system(alpha_1=-1)
    roots = singular_velocities(p)
    assert roots.size == 3
    poly = determinant_polynomial(p)
    scale = np.abs(poly.coef).max()
    for kv in roots:
        assert abs(poly(kv)) < 1e-10 * scale


def test_determinant_polynomial_matches_matrix():
    p = _system(alpha_3=-1, delta_b=0.3)
    poly = determinant_polynomial(p)
    for kv in (-1.0, 0.0, 0.7):
        m, _, _ = build_system_matrix(p, shifted_detunings(p, kv=kv))
        assert poly(kv) == pytest.approx(4.0 * np.linalg.det(m), rel=1e-12, abs=1e-14)


def test_non_finite_matrix_is_a_singular_system():
    m = np.eye(3, dtype=complex)
    m[1, 2] = np.nan
    with pytest.raises(SingularSystem, match="non-finite"):
        solve_steady_state(m, np.array([0.5j, 0, 0]), np.array([0, 0.5j, 0]))


def test_non_finite_entry_in_a_batch_reports_its_index():
    m = np.broadcast_to(np.eye(3, dtype=complex), (4, 3, 3)).copy()
    m[2, 0, 0] = np.inf
    with pytest.raises(SingularSystem) as exc:
        steady_state_vectors(m, np.array([0.5j, 0, 0]), np.array([0, 0.5j, 0]))
    assert exc.value.index == (2,)
