"""Closed-form latency and energy model for NB-IoT access plus a
proof-of-work ledger round.

The end-to-end latency splits into the device-to-base-station half
(synchronization, resource reservation, data transmission/reception for
uplink and downlink) and the ledger half (the mining race plus the block
message exchange).  The reservation success probability comes from a drift
approximation: backlog means are treated as constants and iterated to a
fixed point.
"""
from __future__ import annotations

import math
from dataclasses import replace

from ..core import Probability, fixed_point
from .config import DltConfig, LatencyEnergyBreakdown, PowerProfile, RadioConfig, UnstableConfig


def collision_probability(lambda_tot: float, K: int) -> Probability:
    """Exact preamble-collision probability for one contender among
    lambda_tot: 1 - (1 - 1/K)^(lambda_tot - 1)."""
    if lambda_tot < 1:
        raise ValueError("lambda_tot must be >= 1")
    if K < 1:
        raise ValueError("K must be >= 1")
    return Probability(1.0 - (1.0 - 1.0 / K) ** (lambda_tot - 1.0))


def collision_probability_approx(lambda_tot: float, K: int) -> Probability:
    """Exponential approximation 1 - exp(-lambda_tot/K)."""
    if K < 1:
        raise ValueError("K must be >= 1")
    return Probability(1.0 - math.exp(-lambda_tot / K))


def reservation_probability(config: RadioConfig, tol: float = 1e-9, max_iter: int = 100_000) -> tuple[float, float]:
    """Steady-state (P_rr, lambda_tot) of the drift approximation.

    P_rr(x) = p_d * exp(-x/K); the retransmission backlog adds
    lambda_a * (1-P_rr)^(l-1) contenders at attempt l = 1..N_rmax, so the
    total contention rate is the fixed point of

        x = lambda_a * sum_{l=1}^{N_rmax} (1 - P_rr(x))^(l-1).
    """
    lam_a = config.lambda_a
    if lam_a == 0.0:
        return config.p_d, 0.0

    def total(x: float) -> float:
        p = config.p_d * math.exp(-x / config.K)
        q = 1.0 - p
        return lam_a * sum(q**l for l in range(config.N_rmax))

    lam_tot = fixed_point(total, lam_a, tol=tol, max_iter=max_iter)
    p_rr = config.p_d * math.exp(-lam_tot / config.K)
    return p_rr, lam_tot


def latency_ra(config: RadioConfig) -> float:
    """Expected latency of sending one random-access control message."""
    return 0.5 * config.t + config.tau


def latency_rar(config: RadioConfig) -> float:
    """Expected latency of receiving the random-access response."""
    return 0.5 * config.d + 0.5 * config.Q * config.f * config.u + config.u


def latency_rr(config: RadioConfig, P_rr: float) -> float:
    """Expected resource-reservation latency over up to N_rmax attempts."""
    if not 0.0 < P_rr <= 1.0:
        raise ValueError("P_rr must be in (0, 1]")
    per_attempt = latency_ra(config) + latency_rar(config)
    return sum(
        (1.0 - P_rr) ** (l - 1) * P_rr * l * per_attempt
        for l in range(1, config.N_rmax + 1)
    )


def latency_tx(config: RadioConfig) -> float:
    """Uplink data-transmission latency (queueing plus service time)."""
    s1, s2 = config.s1, config.s2
    lam = config.uplink_rate
    d1 = 1.0 - config.f * config.G * s1
    d2 = 1.0 - config.f * lam * s1
    if d1 <= 0 or d2 <= 0:
        raise UnstableConfig("uplink transmission queue is unstable")
    return (
        config.f * lam * s1 * s2 / (2.0 * s1 * d1)
        + config.f * lam * s1**2 / (2.0 * d2)
        + config.l1 / (config.R_u * config.w)
    )


def latency_rx(config: RadioConfig) -> float:
    """Downlink data-reception latency."""
    h1 = config.h1
    F = config.F
    den = 1.0 - F * h1 / config.t
    if den <= 0:
        raise UnstableConfig("downlink reception queue is unstable")
    if F == 0.0:
        return config.m2 / (config.R_d * config.y)
    return (
        0.5 * F * h1 / (config.t * h1 * den)
        + F * h1 / den
        + config.m2 / (config.R_d * config.y)
    )


def pow_latency(dlt: DltConfig) -> float:
    """Mean time for the fastest of M miners: 1 / (lambda_c * M)."""
    return 1.0 / (dlt.lambda_c * dlt.M)


def _block_exchange_latency(config: RadioConfig, dlt: DltConfig) -> float:
    """Latency of the post-mining block messages.

    The new-block hash and the block body are priced as uplink transmissions
    of the configured sizes; the block request as a downlink reception.
    """
    up_new = latency_tx(replace(config, l1=dlt.new_block_bits, l2=dlt.new_block_bits**2))
    up_trans = latency_tx(replace(config, l1=dlt.trans_block_bits, l2=dlt.trans_block_bits**2))
    down_get = latency_rx(replace(config, m1=dlt.get_block_bits, m2=dlt.get_block_bits**2))
    return up_new + up_trans + down_get


def e2e_latency(radio: RadioConfig, power: PowerProfile, dlt: DltConfig | None = None) -> LatencyEnergyBreakdown:
    """Latency half of the breakdown (energy values are all zero here)."""
    p_rr, _ = reservation_probability(radio)
    l_rr = latency_rr(radio, p_rr)
    lat = {
        "sync_up": radio.L_sync,
        "rr_up": l_rr,
        "tx_up": latency_tx(radio),
        "sync_down": radio.L_sync,
        "rr_down": l_rr,
        "rx_down": latency_rx(radio),
    }
    if dlt is not None:
        lat["pow"] = pow_latency(dlt)
        lat["block_exchange"] = _block_exchange_latency(radio, dlt)
    return LatencyEnergyBreakdown(latency=lat)


def energy_breakdown(
    radio: RadioConfig,
    power: PowerProfile,
    dlt: DltConfig | None = None,
    P_rr: float | None = None,
) -> LatencyEnergyBreakdown:
    """Energy half of the breakdown.

    The reservation-energy sum intentionally omits the attempt-multiplicity
    factor carried by the latency sum: both formulas are reproduced exactly
    as stated by the source model.
    """
    if P_rr is None:
        P_rr, _ = reservation_probability(radio)
    e_sync = power.P_l * radio.L_sync
    e_rar = power.P_l * latency_rar(radio)
    e_ra = (latency_ra(radio) - radio.tau) * power.P_I + radio.tau * (power.P_c + power.P_e * power.P_t)
    e_rr = sum(
        (1.0 - P_rr) ** (l - 1) * P_rr * (e_ra + e_rar)
        for l in range(1, radio.N_rmax + 1)
    )
    service_up = radio.l1 / (radio.R_u * radio.w)
    e_tx = (latency_tx(radio) - service_up) * power.P_I + (power.P_c + power.P_e * power.P_t) * service_up
    service_down = radio.m1 / (radio.R_d * radio.y)
    e_rx = (latency_rx(radio) - service_down) * power.P_I + power.P_l * service_down
    en = {
        "sync_up": e_sync,
        "rr_up": e_rr,
        "tx_up": e_tx,
        "sleep_up": power.E_s_up,
        "sync_down": e_sync,
        "rr_down": e_rr,
        "rx_down": e_rx,
        "sleep_down": power.E_s_down,
    }
    if dlt is not None:
        # the mining race is powered by the miner's compute draw, not the
        # device profile
        en["pow"] = dlt.P_c * pow_latency(dlt)
        en["block_exchange"] = power.P_t * _block_exchange_latency(radio, dlt)
    return LatencyEnergyBreakdown(energy=en)


def full_breakdown(radio: RadioConfig, power: PowerProfile, dlt: DltConfig | None = None) -> LatencyEnergyBreakdown:
    """Latency and energy terms together."""
    p_rr, _ = reservation_probability(radio)
    return e2e_latency(radio, power, dlt).merged(energy_breakdown(radio, power, dlt, P_rr=p_rr))


def sweep_nprach_period(
    radio: RadioConfig,
    power: PowerProfile,
    dlt: DltConfig | None,
    t_values,
    arrivals_per_second: float | None = None,
    derive_shares: bool = True,
) -> list[tuple[float, LatencyEnergyBreakdown]]:
    """Evaluate the full breakdown across NPRACH periods.

    Short periods starve the data channels (large w overhead), long periods
    inflate the reservation wait, so the end-to-end latency has an interior
    minimum over t.
    """
    out = []
    for t in t_values:
        cfg = radio.with_nprach_period(float(t), arrivals_per_second=arrivals_per_second, derive_shares=derive_shares)
        out.append((float(t), full_breakdown(cfg, power, dlt)))
    return out
