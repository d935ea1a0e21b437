import io
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nmeascene.linkbudget import (
    MATERIALS,
    DomainError,
    LinkBudgetParams,
    Material,
    RangeError,
    cn0_snr_convert,
    cn0_theoretical,
    material_attenuation_db,
    snr_from_powers,
    write_materials_csv,
)

finite = st.floats(-300, 300, allow_nan=False)


class TestCn0Theoretical:
    def test_unit_temperature(self):
        # -10 log10(1.38e-23) = 228.6012...
        assert cn0_theoretical(LinkBudgetParams(-160, 0, 1, 0)) == pytest.approx(68.60, abs=5e-3)

    def test_reference_point(self):
        # frozen from a 40-digit mpmath evaluation
        value = cn0_theoretical(LinkBudgetParams(-160, 3, 290, 2))
        assert value == pytest.approx(44.97722915699807, abs=1e-12)

    def test_loss_is_linear(self):
        a = cn0_theoretical(LinkBudgetParams(-158, 2, 300, 1))
        b = cn0_theoretical(LinkBudgetParams(-158, 2, 300, 4))
        assert a - b == pytest.approx(3.0, abs=1e-12)

    @pytest.mark.parametrize("tsys", [0.0, -10.0])
    def test_nonpositive_temperature(self, tsys):
        with pytest.raises(DomainError):
            cn0_theoretical(LinkBudgetParams(-160, 0, tsys, 0))

    @given(finite, finite, st.floats(1, 1e4), st.floats(0, 50), st.floats(0.01, 10))
    def test_monotonic(self, sr, ga, tsys, loss, d):
        base = cn0_theoretical(LinkBudgetParams(sr, ga, tsys, loss))
        assert cn0_theoretical(LinkBudgetParams(sr + d, ga, tsys, loss)) > base
        assert cn0_theoretical(LinkBudgetParams(sr, ga + d, tsys, loss)) > base
        assert cn0_theoretical(LinkBudgetParams(sr, ga, tsys * (1 + d), loss)) < base
        assert cn0_theoretical(LinkBudgetParams(sr, ga, tsys, loss + d)) < base


class TestSnr:
    @pytest.mark.parametrize("sr, n, expected", [(-160, -170, 10), (-150, -150, 0), (-158.5, -171.25, 12.75)])
    def test_powers(self, sr, n, expected):
        assert snr_from_powers(sr, n) == expected

    def test_conversions(self):
        assert cn0_snr_convert(10, 30, "snr_to_cn0") == 40
        assert cn0_snr_convert(45, 33, "cn0_to_snr") == 12

    def test_bad_direction(self):
        with pytest.raises(ValueError):
            cn0_snr_convert(1, 1, "sideways")

    @given(st.floats(-100, 100), st.floats(0, 80))
    def test_round_trip(self, value, bw):
        back = cn0_snr_convert(cn0_snr_convert(value, bw, "snr_to_cn0"), bw, "cn0_to_snr")
        assert abs(back - value) <= 1e-12


class TestMaterials:
    @pytest.mark.parametrize("material, lo, hi", [
        ("drywall", 1, 1), ("plywood", 1, 3), ("glass", 1, 4), ("wood", 2, 9),
        ("rebar_grid", 2, 11), ("brick", 5, 31), ("concrete", 12, 43), ("reinforced_concrete", 29, 33),
    ])
    def test_table_ranges(self, material, lo, hi):
        row = MATERIALS[Material(material)]
        assert (row.atten_min_db, row.atten_max_db) == (lo, hi)
        assert row.factor_min <= row.factor_max

    def test_concrete_ends(self):
        assert material_attenuation_db(Material.CONCRETE, 0) == 12
        assert material_attenuation_db(Material.CONCRETE, 1) == 43

    @pytest.mark.parametrize("pos", [0, 0.3, 1])
    def test_drywall_degenerate(self, pos):
        assert material_attenuation_db("drywall", pos) == 1

    def test_brick_midpoint(self):
        assert material_attenuation_db("brick", 0.5) == 18

    @pytest.mark.parametrize("pos", [-0.01, 1.01, math.nan])
    def test_position_range(self, pos):
        with pytest.raises(RangeError):
            material_attenuation_db("glass", pos)

    def test_factor_tracks_attenuation(self):
        # the factor column is roughly the linear power ratio of the dB range
        for row in MATERIALS.values():
            assert 10 ** (-row.atten_min_db / 10) == pytest.approx(row.factor_max, rel=0.3)

    def test_csv_export(self):
        buf = io.StringIO()
        write_materials_csv(buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == "material,atten_min_db,atten_max_db,factor_min,factor_max"
        assert "concrete,12,43,5e-05,0.06" in lines
        assert len(lines) == 9
