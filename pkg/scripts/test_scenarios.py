import json
import math

import pytest

from errors import NoRootInBracket
from optics import delay_table, group_index_at, superluminal_crossover
from reports import discrepancy_report
from scenarios import PRESETS, calibrate, counter_propagating, get_preset, load_stanza, write_stanza
from validate import raise_if_invalid

from conftest import PROJECT_ROOT, preset_config

FIXTURES = PROJECT_ROOT / "scripts" / "fixtures" / "presets"


def test_every_preset_validates():
    for name, scenario in PRESETS.items():
        config = raise_if_invalid(scenario.document())
        assert config.system.phi == pytest.approx(math.pi / 2), name


@pytest.mark.parametrize(
    "name, omega_3, v_doppler",
    [("fig2a", 0.7, 0.5), ("fig2b", 1.0, 0.5), ("fig4b", 5.0, 1.5), ("fig7a", 0.7, 1.5), ("fig8cd", 1.5, 1.5)],
)
def test_preset_parameters(name, omega_3, v_doppler):
    config = preset_config(name)
    assert config.system.omega_3 == omega_3
    assert config.medium.v_doppler == v_doppler


def test_narrow_and_broad_bases():
    narrow = preset_config("fig3e").system
    assert (narrow.gamma_1, narrow.omega_1, narrow.omega_2) == (0.1, 0.1, 4.0)
    broad = preset_config("fig5c").system
    assert (broad.gamma_4, broad.omega_1, broad.omega_2) == (2.0, 2.0, 2.0)


def test_series_presets():
    assert get_preset("fig6").v_doppler_series == (0.0, 0.1, 0.2, 0.3)
    assert get_preset("fig6").mode == "hot"
    assert get_preset("fig7").omega3_series == (0.7, 1.0, 1.5, 5.0)
    assert get_preset("fig7e").omega3_range == (0.5, 6.0)


def test_pulse_presets_carry_the_pulse_section():
    config = preset_config("fig8ab")
    assert config.pulse.tau_0 == 5.5e-9
    assert config.pulse.delta == 2e9
    assert config.medium.length_L == 0.06


def test_unknown_preset_lists_known_names():
    with pytest.raises(KeyError, match="fig2a"):
        get_preset("fig9")


def test_counter_propagating_flips_all_signs():
    doc = counter_propagating(get_preset("fig2a").document())
    config = raise_if_invalid(doc)
    assert (config.system.alpha_1, config.system.alpha_2, config.system.alpha_3) == (-1, -1, -1)
    assert get_preset("fig2a").document()["system"]["alpha_1"] == 1


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_fixture_documents_match_presets(name):
    stored = json.loads((FIXTURES / f"{name}.json").read_text(encoding="utf-8"))
    scenario = get_preset(name)
    assert stored["scenario"] == scenario.provenance()
    assert raise_if_invalid(stored["config"]) == raise_if_invalid(scenario.document())


def test_calibration_fixed_point(fig7a):
    target = group_index_at(fig7a).N_g
    result = calibrate(fig7a, target, scenario="fig7a")
    assert result.kappa_e == 1.0
    assert result.relative_error == 0.0


def test_frequency_convention_reaches_reference_group_index(make_config):
    config = make_config("fig7a", medium={"group_index_convention": "frequency"})
    result = calibrate(config, 1415.65, scenario="fig7a")
    assert result.relative_error < 1e-6
    assert 1.0 < result.kappa_e < 10.0


def test_unreachable_target(fig7a):
    with pytest.raises(NoRootInBracket):
        calibrate(fig7a, 1e12, decades=(-2, 2))


def test_stanza_round_trip(tmp_path, fig7a):
    target = group_index_at(fig7a).N_g
    result = calibrate(fig7a, target, scenario="fig7a")
    path = write_stanza(result, tmp_path / "calibrations" / "fig7a.json")
    raw = json.loads(path.read_text(encoding="utf-8"))
    assert raw["calibration"]["scenario"] == "fig7a"
    assert load_stanza(path) == {"medium": {"density_coupling": 1.0}}


def test_every_preset_has_a_fixture():
    assert sorted(p.stem for p in FIXTURES.glob("*.json")) == sorted(PRESETS)


@pytest.fixture(scope="module")
def superluminal_family():
    config = preset_config("fig7c")
    result = calibrate(config, -2023.81, scenario="fig7c")
    return config.with_medium(density_coupling=result.kappa_e), result


def test_literal_convention_reproduces_the_superluminal_family(superluminal_family):
    config, result = superluminal_family
    assert 6.0 < result.kappa_e < 8.0
    hot = group_index_at(config, 0.0, "hot").N_g
    assert hot == pytest.approx(-1487.22, rel=0.1)

    strong = config.with_system(omega_3=5.0)
    cold_5 = group_index_at(strong, 0.0, "cold").N_g
    hot_5 = group_index_at(strong, 0.0, "hot").N_g
    assert cold_5 == pytest.approx(-595.818, rel=0.1)
    assert hot_5 == pytest.approx(-751.666, rel=0.1)
    assert max(hot, cold_5, hot_5) < 0


def test_calibrated_crossover_near_reference(superluminal_family):
    config, _ = superluminal_family
    root = superluminal_crossover(config, (0.5, 6.0))
    assert root == pytest.approx(3.6, abs=0.5)


def test_subluminal_references_beyond_the_cold_anchor_are_flagged(make_config):
    config = make_config("fig7a", medium={"group_index_convention": "frequency"})
    kappa = calibrate(config, 1415.65, scenario="fig7a").kappa_e
    config = config.with_medium(density_coupling=kappa)
    configs = [(f"fig7a[omega_3={o:g}]", config.with_system(omega_3=o)) for o in (0.7, 1.0)]
    report = discrepancy_report(delay_table(configs, ("cold", "hot")))
    by_key = {(r["omega_3"], r["mode"]): r for r in report if r["quantity"] == "N_g"}

    assert by_key[(0.7, "cold")]["within_tolerance"]
    for key in ((0.7, "hot"), (1.0, "cold")):
        assert not by_key[key]["within_tolerance"]
        assert "group_index_convention" in by_key[key]["note"]
