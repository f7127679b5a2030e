from .config import (
    DltConfig,
    LatencyEnergyBreakdown,
    PowerProfile,
    RadioConfig,
    UnstableConfig,
)
from .model import (
    collision_probability,
    collision_probability_approx,
    e2e_latency,
    energy_breakdown,
    full_breakdown,
    latency_ra,
    latency_rar,
    latency_rr,
    latency_rx,
    latency_tx,
    pow_latency,
    reservation_probability,
    sweep_nprach_period,
)
from .oracles import monte_carlo_reservation, pow_latency_oracle

__all__ = [
    "DltConfig",
    "LatencyEnergyBreakdown",
    "PowerProfile",
    "RadioConfig",
    "UnstableConfig",
    "collision_probability",
    "collision_probability_approx",
    "e2e_latency",
    "energy_breakdown",
    "full_breakdown",
    "latency_ra",
    "latency_rar",
    "latency_rr",
    "latency_rx",
    "latency_tx",
    "pow_latency",
    "reservation_probability",
    "sweep_nprach_period",
    "monte_carlo_reservation",
    "pow_latency_oracle",
]
