"""Per-step dispatch decomposition and its settlement."""
from dataclasses import dataclass, asdict, fields


FLOW_FIELDS = (
    "pv_to_load", "pv_to_batt", "pv_to_grid",
    "batt_to_load", "grid_to_load", "grid_to_batt"
)


@dataclass(frozen=True)
class EnergyFlows:
    """Six directed energy flows of one step, kWh.

    PV generation splits into `pv_to_load + pv_to_batt + pv_to_grid`,
    the load is served by `pv_to_load + batt_to_load + grid_to_load`.
    Battery flows are measured on the AC side: `pv_to_batt` and
    `grid_to_batt` are energy drawn, `batt_to_load` is energy delivered.
    """

    pv_to_load: float = 0.0
    pv_to_batt: float = 0.0
    pv_to_grid: float = 0.0
    batt_to_load: float = 0.0
    grid_to_load: float = 0.0
    grid_to_batt: float = 0.0

    @property
    def pv_total(self):
        return self.pv_to_load + self.pv_to_batt + self.pv_to_grid

    @property
    def load_total(self):
        return self.pv_to_load + self.batt_to_load + self.grid_to_load

    @property
    def battery_power(self):
        """Net AC energy into the battery (discharge negative)."""
        return self.pv_to_batt + self.grid_to_batt - self.batt_to_load

    def negative_fields(self):
        """List the names of flows below zero."""
        return [f.name for f in fields(self) if getattr(self, f.name) < 0]

    def to_json(self):
        """Convert to its JSON repr."""
        return asdict(self)

    @classmethod
    def from_json(cls, json_data):
        """Create EnergyFlows object from JSON representation."""
        return cls(**{name: float(json_data.get(name, 0.0)) for name in FLOW_FIELDS})


@dataclass(frozen=True)
class StepOutcome:
    """Result of dispatching one step.

    Attributes
    ----------
    flows : EnergyFlows
        Dispatch decomposition of the step
    next_soc_kwh : float
        Stored energy at the end of the step
    grid_import_kwh : float
        `grid_to_load + grid_to_batt`
    grid_export_kwh : float
        `pv_to_grid`
    cost_eur : float
        Import bill minus export remuneration
    """

    flows: EnergyFlows
    next_soc_kwh: float
    grid_import_kwh: float
    grid_export_kwh: float
    cost_eur: float

    def to_json(self):
        """Convert to its JSON repr."""
        json_data = self.flows.to_json()
        json_data["next_soc_kwh"] = self.next_soc_kwh
        json_data["grid_import_kwh"] = self.grid_import_kwh
        json_data["grid_export_kwh"] = self.grid_export_kwh
        json_data["cost_eur"] = self.cost_eur
        return json_data
