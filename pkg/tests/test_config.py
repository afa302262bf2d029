import math

import numpy as np
import pytest

from ariswpc import (
    ConfigParseError,
    ConfigValidationError,
    RisMode,
    SystemConfig,
    dbm_to_linear,
    linear_to_dbm,
    load_config,
    path_loss,
    replace_config,
)


class TestLoadConfig:
    def test_empty_document_gives_defaults(self):
        cfg = load_config("")
        assert cfg == SystemConfig()
        assert cfg.M == 36
        assert cfg.b == 4
        assert cfg.epsilon == 3.0
        assert cfg.eta == 0.8
        assert cfg.d_p == 20.0
        assert cfg.d_f == 30.0
        assert cfg.d_h == (20.0,) * 36
        assert cfg.d_g == (20.0,) * 36
        assert cfg.rho == (6.0,) * 36

    def test_basic_overrides(self):
        cfg = load_config("M = 16\nP_p_dbm = 25\nb = 1\n")
        assert cfg.M == 16
        assert cfg.P_p_dbm == 25.0
        assert cfg.b == 1
        assert len(cfg.rho) == 16

    def test_comments_and_section_header(self):
        text = "[config]\n# a comment\nM = 8  # inline\nalpha = 0.25\n"
        cfg = load_config(text)
        assert cfg.M == 8
        assert cfg.alpha == 0.25

    def test_list_values(self):
        cfg = load_config("M = 3\nrho = 1, 2, 3\nd_h = 10, 20, 30\n")
        assert cfg.rho == (1.0, 2.0, 3.0)
        assert cfg.d_h == (10.0, 20.0, 30.0)

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigParseError, match="unknown config key"):
            load_config("bogus = 1\n")

    def test_malformed_document(self):
        with pytest.raises(ConfigParseError):
            load_config("M 36 no equals sign\n")

    def test_alpha_out_of_range_names_field(self):
        with pytest.raises(ConfigValidationError, match="alpha") as err:
            load_config("alpha = 1.5\n")
        assert err.value.field == "alpha"

    def test_passive_mode_overrides(self):
        cfg = load_config("ris_mode = Passive\nrho = 6\n")
        assert cfg.ris_mode is RisMode.PASSIVE
        assert np.all(cfg.rho_effective == 1.0)
        assert cfg.sigma_v2_mw == 0.0

    def test_purity(self):
        text = "M = 12\nrho = 2.5\nalpha = 0.3\n"
        assert load_config(text) == load_config(text)


class TestValidation:
    @pytest.mark.parametrize(
        "field,value",
        [
            ("alpha", 0.0),
            ("alpha", 1.0),
            ("eta", 0.0),
            ("eta", 1.2),
            ("d_p", 0.0),
            ("d_f", -3.0),
            ("epsilon", 0.0),
            ("M", -1),
            ("b", 0),
            ("mc_samples", 0),
            ("quadrature_points", 0),
            ("tau_c", 0.0),
            ("r_v", -1.0),
            ("P_R_mw", 0.0),
        ],
    )
    def test_invariant_violations(self, field, value):
        with pytest.raises(ConfigValidationError) as err:
            SystemConfig(**{field: value})
        assert err.value.field == field

    def test_rho_above_ceiling(self):
        with pytest.raises(ConfigValidationError) as err:
            SystemConfig(rho=7.0, rho_max=6.0)
        assert err.value.field == "rho"

    def test_rho_length_mismatch(self):
        with pytest.raises(ConfigValidationError):
            SystemConfig(M=4, rho=(1.0, 2.0))

    def test_m_zero_is_no_ris(self):
        cfg = SystemConfig(M=0)
        assert cfg.rho == ()
        assert cfg.zeta_h.shape == (0,)

    def test_eta_one_allowed(self):
        assert SystemConfig(eta=1.0).eta == 1.0

    def test_config_is_immutable(self):
        cfg = SystemConfig()
        with pytest.raises(Exception):
            cfg.M = 10
        assert not cfg.rho_effective.flags.writeable


class TestUnitConversions:
    @pytest.mark.parametrize("dbm,mw", [(0.0, 1.0), (20.0, 100.0), (-80.0, 1e-8)])
    def test_dbm_to_linear(self, dbm, mw):
        assert dbm_to_linear(dbm) == pytest.approx(mw, rel=1e-12)

    def test_round_trip(self):
        for x in np.linspace(-120.0, 60.0, 181):
            assert linear_to_dbm(dbm_to_linear(x)) == pytest.approx(x, abs=1e-12)

    def test_linear_to_dbm_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            linear_to_dbm(0.0)


class TestPathLoss:
    def test_unit_distance(self):
        assert path_loss(1.0, 3.0) == 1.0

    def test_direct_evaluation(self):
        assert path_loss(20.0, 3.0) == pytest.approx(20.0**-3, rel=1e-12)
        assert path_loss(20.0, 3.0) == pytest.approx(1.25e-4, rel=1e-9)
        assert path_loss(30.0, 3.0) == pytest.approx(1.0 / 27000.0, rel=1e-12)
        assert path_loss(30.0, 3.0) == pytest.approx(3.7037e-5, rel=1e-4)

    def test_strictly_decreasing_in_distance(self):
        ds = np.linspace(0.5, 100.0, 400)
        zetas = path_loss(ds, 3.0)
        assert np.all(np.diff(zetas) < 0)

    def test_rejects_nonpositive_distance(self):
        with pytest.raises(ValueError):
            path_loss(0.0, 3.0)
        with pytest.raises(ValueError):
            path_loss(-1.0, 2.0)


class TestReplaceConfig:
    def test_rebroadcast_on_m_change(self):
        cfg = replace_config(SystemConfig(), M=8)
        assert cfg.M == 8
        assert cfg.rho == (6.0,) * 8
        assert cfg.d_h == (20.0,) * 8

    def test_nonuniform_vector_blocks_m_change(self):
        cfg = SystemConfig(M=3, rho=(1.0, 2.0, 3.0))
        with pytest.raises(ConfigValidationError):
            replace_config(cfg, M=5)

    def test_plain_field_update(self):
        cfg = replace_config(SystemConfig(), alpha=0.42)
        assert cfg.alpha == 0.42
        assert cfg.M == 36
