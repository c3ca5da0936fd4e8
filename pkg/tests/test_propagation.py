import math

import numpy as np
import pytest

from ntnchan.channel_condition import LosState, NtnScenario
from ntnchan.geodesy import EARTH_RADIUS_M, EcefVector, LinkGeometry
from ntnchan.propagation import (
    CALIBRATION_FLAGS,
    Band,
    LossBreakdown,
    LossFlags,
    PropagationContext,
    ShadowFadingCache,
    atmospheric_loss,
    clutter_loss,
    default_tables,
    fspl,
    ionospheric_scintillation,
    sample_shadow_fading,
    shadow_fading_sigma,
    total_loss,
    tropospheric_scintillation,
)
from ntnchan.tables import ELEVATION_BUCKETS


def ctx(scenario=NtnScenario.SUBURBAN, condition=LosState.LOS, f=2.0,
        elevation=30.0, lat=45.0):
    return PropagationContext(scenario, condition, f, elevation, lat)


def geom(distance, elevation):
    g = EcefVector(EARTH_RADIUS_M, 0, 0)
    s = EcefVector(EARTH_RADIUS_M + distance, 0, 0)
    return LinkGeometry(distance, elevation, g, s)


class TestFspl:
    def test_closed_form_600km_2ghz(self):
        assert fspl(600_000, 2.0) == pytest.approx(154.03, abs=0.01)

    def test_leo_30deg_matches_calibration(self):
        assert fspl(1_075_100, 2.0) == pytest.approx(159.1, abs=0.05)

    def test_decade_slope_in_distance(self):
        assert fspl(1e7, 5.0) - fspl(1e6, 5.0) == pytest.approx(20.0, abs=1e-9)

    def test_decade_slope_in_frequency(self):
        assert fspl(1e6, 50.0) - fspl(1e6, 5.0) == pytest.approx(20.0, abs=1e-9)

    def test_strictly_increasing(self):
        ds = np.logspace(5, 7.6, 50)
        fs = np.linspace(0.5, 100, 50)
        pl_d = [fspl(float(d), 2.0) for d in ds]
        pl_f = [fspl(1e6, float(f)) for f in fs]
        assert all(a < b for a, b in zip(pl_d, pl_d[1:]))
        assert all(a < b for a, b in zip(pl_f, pl_f[1:]))

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            fspl(0.0, 2.0)
        with pytest.raises(ValueError):
            fspl(1e6, 0.4)


class TestShadowFading:
    def test_sample_statistics(self):
        c = ctx(NtnScenario.DENSE_URBAN, LosState.NLOS, 2.0, 30.0)
        sigma = shadow_fading_sigma(c)
        rng = np.random.default_rng(21)
        draws = np.array([sample_shadow_fading(c, rng) for _ in range(100_000)])
        assert draws.mean() == pytest.approx(0.0, abs=3 * sigma / math.sqrt(100_000))
        assert draws.std() == pytest.approx(sigma, rel=0.01)

    def test_calibration_mode_disables_shadowing(self):
        breakdown = total_loss(geom(600_000, 90.0), ctx(elevation=90.0),
                               flags=CALIBRATION_FLAGS)
        assert breakdown.sf_db == 0.0

    def test_cache_holds_value_per_link(self):
        c = ctx(NtnScenario.URBAN, LosState.NLOS)
        cache = ShadowFadingCache()
        rng = np.random.default_rng(22)
        a = cache.get("link", c, rng)
        assert cache.get("link", c, rng) == a
        cache.invalidate("link")
        assert cache.get("link", c, rng) != a


class TestClutterLoss:
    def test_los_is_zero(self):
        for s in NtnScenario:
            assert clutter_loss(ctx(s, LosState.LOS, 20.0)) == 0.0

    def test_monotone_non_increasing_in_elevation(self):
        tables = default_tables()
        for s in NtnScenario:
            for band in Band:
                values = [tables.clutter_loss(s, band, e) for e in ELEVATION_BUCKETS]
                assert values[0] >= values[-1]
                assert all(v >= 0 for v in values)

    def test_nlos_dense_urban_s_band_30deg(self):
        # cross-checked against a second read of the digitized table
        assert clutter_loss(ctx(NtnScenario.DENSE_URBAN, LosState.NLOS, 2.0, 30.0)) \
            == pytest.approx(29.0)


class TestAtmosphericLoss:
    def test_zenith_value_at_90deg(self):
        tables = default_tables()
        assert atmospheric_loss(90.0, 20.0) == pytest.approx(tables.zenith_attenuation(20.0))

    def test_45deg_20ghz(self):
        assert atmospheric_loss(45.0, 20.0) == pytest.approx(1.4, abs=0.3)

    def test_s_band_above_10deg_exempt(self):
        assert atmospheric_loss(45.0, 2.0) == 0.0

    def test_s_band_low_elevation_applies(self):
        assert atmospheric_loss(5.0, 2.0) > 0.0

    def test_non_increasing_in_elevation(self):
        values = [atmospheric_loss(e, 20.0) for e in np.linspace(10, 90, 50)]
        assert all(a >= b for a, b in zip(values, values[1:]))


class TestIonosphericScintillation:
    def test_zero_above_6ghz(self):
        assert ionospheric_scintillation(20.0, 0.0) == 0.0

    def test_s_band_equatorial(self):
        assert ionospheric_scintillation(2.0, 0.0) == pytest.approx(2.2, abs=0.05)

    def test_reference_frequency(self):
        assert ionospheric_scintillation(4.0, 0.0) == pytest.approx(1.1 / math.sqrt(2))

    def test_mid_latitude_exempt(self):
        assert ionospheric_scintillation(2.0, 45.0) == 0.0
        assert ionospheric_scintillation(2.0, -45.0) == 0.0

    def test_exponent_minus_1_5(self):
        ratio = ionospheric_scintillation(1.0, 0.0) / ionospheric_scintillation(4.0, 0.0)
        assert ratio == pytest.approx(8.0, rel=1e-9)

    def test_non_increasing_on_s_band(self):
        values = [ionospheric_scintillation(float(f), 0.0)
                  for f in np.linspace(0.5, 6.0, 40)]
        assert all(a >= b for a, b in zip(values, values[1:]))


class TestTroposphericScintillation:
    def test_s_band_exempt(self):
        for e in (10.0, 45.0, 90.0):
            assert tropospheric_scintillation(e, 2.0) == 0.0

    def test_45deg_20ghz(self):
        assert tropospheric_scintillation(45.0, 20.0) == pytest.approx(1.1, abs=0.1)

    def test_zenith_20ghz(self):
        assert tropospheric_scintillation(90.0, 20.0) == pytest.approx(0.3, abs=0.1)


class TestTotalLoss:
    def test_sc9_equivalent_composition(self):
        breakdown = total_loss(
            geom(1_075_100, 90.0),
            ctx(NtnScenario.SUBURBAN, LosState.LOS, 2.0, 90.0, lat=0.0),
            flags=CALIBRATION_FLAGS)
        assert breakdown.total_db == pytest.approx(159.1 + 0.0 + 2.2, abs=0.1)

    def test_all_other_terms_zero_at_zenith_s_band(self):
        breakdown = total_loss(geom(600_000, 90.0),
                               ctx(NtnScenario.RURAL, LosState.LOS, 2.0, 90.0, lat=45.0),
                               flags=LossFlags(shadow_fading=False))
        assert breakdown.total_db == breakdown.fspl_db

    def test_breakdown_sum_property(self):
        rng = np.random.default_rng(23)
        scenarios = list(NtnScenario)
        for _ in range(1000):
            c = PropagationContext(
                scenarios[rng.integers(0, 4)],
                LosState.NLOS if rng.random() < 0.5 else LosState.LOS,
                float(rng.uniform(0.5, 100.0)),
                float(rng.uniform(1.0, 90.0)),
                float(rng.uniform(-90.0, 90.0)))
            b = total_loss(geom(float(rng.uniform(1e5, 4e7)), c.elevation_deg), c,
                           rng=rng, flags=LossFlags(shadow_fading=True))
            expected = (b.fspl_db + b.sf_db + b.cl_db + b.atmospheric_db
                        + b.ionospheric_db + b.tropospheric_db)
            assert b.total_db == pytest.approx(expected, abs=1e-12)
            assert b.total_db - b.sf_db >= b.fspl_db - 1e-12

    def test_reproducible_with_fixed_seed(self):
        c = ctx(NtnScenario.URBAN, LosState.NLOS, 30.0, 20.0)
        g = geom(2_000_000, 20.0)
        a = total_loss(g, c, rng=np.random.default_rng(99), flags=LossFlags())
        b = total_loss(g, c, rng=np.random.default_rng(99), flags=LossFlags())
        assert a == b


def test_context_validation():
    with pytest.raises(ValueError):
        PropagationContext(NtnScenario.URBAN, LosState.LOS, 0.3, 45.0)
    with pytest.raises(ValueError):
        PropagationContext(NtnScenario.URBAN, LosState.LOS, 2.0, 0.0)
    assert ctx(f=2.0).band is Band.S
    assert ctx(f=20.0).band is Band.KA
