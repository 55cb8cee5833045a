#!/usr/bin/env python3
"""Pressure step response of the hydraulic drive.

The pump-driven pressure control behaves as a first-order lag with a
0.3 s time constant, independent of whether the finger is twisted. This
script samples the exact closed-form response, reports the classic
first-order landmarks, and saves the trace (CSV always, PNG when
matplotlib is available).
"""

from pathlib import Path

import numpy as np

from softfinger import pressure_step, rise_time_10_90

OUTPUT = Path(__file__).parent / "output"

TAU = 0.3        # s
REFERENCE = 1.0  # MPa


def main() -> None:
    trace = pressure_step(REFERENCE, TAU, dt=0.005, horizon=2.0)
    at_tau = float(np.interp(TAU, trace.times, trace.pressures))
    rise = rise_time_10_90(TAU)

    print(f"First-order lag, tau = {TAU:g} s, reference = {REFERENCE:g} MPa")
    print(f"  P(tau)/reference  = {at_tau / REFERENCE:.4f}   (theory 0.6321)")
    print(f"  10-90% rise time  = {rise:.4f} s (tau * ln 9, about 0.6 s)")
    print(f"  reaches 99%       at t = {-TAU * np.log(0.01):.3f} s")
    print("  the trace is monotone and asymptotes to the reference")

    OUTPUT.mkdir(exist_ok=True)
    csv_path = OUTPUT / "pressure_step.csv"
    with open(csv_path, "w", encoding="utf-8") as handle:
        handle.write("time_s,pressure_mpa\n")
        for t, p in zip(trace.times, trace.pressures):
            handle.write(f"{t:.9g},{p:.9g}\n")
    print(f"\nWrote {csv_path}")

    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not installed; skipping the PNG")
        return

    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.plot(trace.times, trace.pressures, lw=2)
    ax.axhline(REFERENCE, color="gray", ls="--", lw=1)
    ax.axvline(TAU, color="tab:red", ls=":", lw=1, label=f"tau = {TAU:g} s")
    ax.axhline(0.632 * REFERENCE, color="tab:red", ls=":", lw=1)
    ax.set_xlabel("time (s)")
    ax.set_ylabel("pressure (MPa)")
    ax.set_title("Pressure step response")
    ax.legend()
    fig.tight_layout()
    png_path = OUTPUT / "pressure_step.png"
    fig.savefig(png_path, dpi=120)
    print(f"Wrote {png_path}")


if __name__ == "__main__":
    main()
