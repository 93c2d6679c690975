"""Unit testing of time-of-use tariffs."""
import json

import pytest

from farmgrid.data_structures.tariffs import (TariffSchedule, Tier,
                                              default_tariff, price_at)
from farmgrid.exceptions import TariffError
from farmgrid.importers.tariffs import load_tariff_json


class TestTariffSchedule(object):
    """Test class for `farmgrid.data_structures.tariffs`."""

    def setup_method(self):
        self.tariff = default_tariff()

    def test_tiers_of_hours(self):
        assert price_at(self.tariff, 3) == (Tier.REDUCED, 0.10)
        assert price_at(self.tariff, 18) == (Tier.PEAK, 0.25)
        assert price_at(self.tariff, 12) == (Tier.STANDARD, 0.15)
        assert price_at(self.tariff, 23)[0] == Tier.REDUCED
        for hour in [7, 16, 22]:
            assert price_at(self.tariff, hour)[0] == Tier.STANDARD

    def test_every_hour_priced(self):
        prices = self.tariff.hourly_prices()
        assert len(prices) == 24
        assert self.tariff.hours_of(Tier.PEAK) == [17, 18]
        assert self.tariff.export_price == 0.0

    def test_invalid_hour(self):
        for hour in [-1, 24, 3.5, True]:
            with pytest.raises(TariffError):
                price_at(self.tariff, hour)

    def test_json(self):
        assert TariffSchedule.from_json(self.tariff.to_json()) == self.tariff

    def test_invalid_tariffs(self):
        with pytest.raises(TariffError):
            TariffSchedule.from_json({"tiers": {"peak": 0.05}})
        with pytest.raises(TariffError):
            TariffSchedule.from_json({"tiers": {"reduced": -0.1}})
        with pytest.raises(TariffError):
            TariffSchedule.from_json({"tiers": {"super": 0.5}})
        with pytest.raises(TariffError):
            TariffSchedule.from_json({"hours": {"peak": [17, 18]}})
        with pytest.raises(TariffError):
            TariffSchedule.from_json({"currency": "EUR"})
        hours = self.tariff.to_json()["hours"]
        hours["peak"] = [17, 18, 3]
        with pytest.raises(TariffError):
            TariffSchedule.from_json({"hours": hours})

    def test_custom_prices(self):
        tariff = TariffSchedule.from_json(
            {"tiers": {"peak": 0.40}, "export": 0.05})
        assert price_at(tariff, 17) == (Tier.PEAK, 0.40)
        assert tariff.export_price == 0.05


class TestTariffImport(object):
    """Test class for `load_tariff_json`."""

    def test_load(self, tmp_path):
        path = tmp_path / "tariff.json"
        path.write_text(json.dumps(default_tariff().to_json()))
        assert load_tariff_json(path) == default_tariff()

    def test_bad_files(self, tmp_path):
        path = tmp_path / "tariff.json"
        path.write_text("{not json")
        with pytest.raises(TariffError):
            load_tariff_json(path)
        path.write_text("[1, 2]")
        with pytest.raises(TariffError):
            load_tariff_json(path)
        with pytest.raises(TariffError):
            load_tariff_json(tmp_path / "missing.json")
