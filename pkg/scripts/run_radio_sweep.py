#!/usr/bin/env python3
"""Sweep the access-period length and print the end-to-end latency/energy.

Short periods starve the data channels, long ones inflate the reservation
wait, so the latency curve has an interior minimum.
"""
import argparse

from edgekit.radio import DltConfig, PowerProfile, RadioConfig, sweep_nprach_period


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--arrivals-per-second", type=float, default=10.0)
    ap.add_argument("--miners", type=int, default=5)
    ap.add_argument("--no-dlt", action="store_true")
    args = ap.parse_args()

    radio = RadioConfig(tau=0.0256, lambda_s=5.0, lambda_b=5.0)
    power = PowerProfile()
    dlt = None if args.no_dlt else DltConfig(M=args.miners)
    ts = [0.04 * 2**i for i in range(7)]
    print(f"{'t (s)':>8} {'L (s)':>10} {'E (J)':>10}")
    for t, b in sweep_nprach_period(radio, power, dlt, ts, arrivals_per_second=args.arrivals_per_second):
        print(f"{t:8.2f} {b.total_latency:10.4f} {b.total_energy:10.4f}")


if __name__ == "__main__":
    main()
