import json

import numpy as np
import pytest

import qgame


def test_catalog_lists_nine_procedures():
    names = qgame.catalog_names()
    assert len(names) == 9
    assert "mod4_ghz" in names


def test_su2_matches_explicit_matrix():
    u = qgame.su2(np.pi, 0.0, 0.0)
    np.testing.assert_allclose(u, [[0, 1], [-1, 0]], atol=1e-15)


def test_minority_p2_distribution_is_uniform_on_odd_parity():
    mass = qgame.outcome_distribution("minority_p2", ["identity"] * 4)
    for y, p in enumerate(mass):
        assert p == pytest.approx(0.125 if bin(y).count("1") % 2 else 0.0, abs=1e-12)


def test_ghz_winning_profile_and_classical_bound():
    prof = [("hadamard", "s_dagger_hadamard")] * 3
    assert qgame.payoff("mod4_ghz", prof) == pytest.approx([1.0] * 3, abs=1e-9)
    value, profile = qgame.classical_bound()
    assert value == 0.75
    assert len(profile) == 3


def test_matrix_strategies_are_accepted():
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    assert qgame.payoff("bos_p1", [x, x]) == [1.0, 2.0]


def test_bos_p1_equilibria():
    profiles = [r["profile"] for r in qgame.find_pure_nash("bos_p1")]
    assert profiles == [[0, 0], [1, 1]]


def test_budget_error():
    with pytest.raises(qgame.BudgetError):
        qgame.find_pure_nash("mod4_ghz", 0.0, budget=10, grid=(3, 2, 2))


def test_run_config_and_config_errors():
    out = qgame.run_config(json.dumps({"scenario": "modulo4", "analysis": "classical_bound"}))
    assert json.loads(out)["value"] == 0.75
    with pytest.raises(qgame.ConfigError):
        qgame.run_config(json.dumps({"procedure": "bos_p1", "analysis": ""}))


def test_operators_are_numpy_arrays():
    ops = qgame.operators("bos_p4")
    assert ops["j"].shape == (4, 4)
    np.testing.assert_allclose(ops["h"] @ ops["j"], np.eye(4), atol=1e-12)
    assert qgame.is_density_matrix(ops["rho"])
