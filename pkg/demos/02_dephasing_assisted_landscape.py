#!/usr/bin/env python3
"""The dephasing-assisted transport landscape over (lambda, kappa).

Sweeps the efficiency surface for a 20-site network with a strongly detuned
trap, locates the interior optimum, and compares it with the slow-decay
analytic prediction.  Writes `landscape.csv`; renders `landscape.png` when
matplotlib is importable.
"""
import numpy as np

from enaqt_fcn import (
    NetworkParams,
    SweepAxis,
    SweepSpec,
    enaqt_optimum,
    maximize,
    sweep,
)

template = NetworkParams.from_detuning(
    n_sites=20, coupling=1.0, detuning=100.0,
    trap_rate=0.0, decay_rate=0.01, dephasing_rate=0.0,
)

spec = SweepSpec(
    template=template,
    s=1,
    axes=(
        SweepAxis("lambda", 0.1, 100.0, 120, "log"),
        SweepAxis("kappa", 0.1, 100.0, 120, "log"),
    ),
)
rows = sweep(spec)

with open("landscape.csv", "w") as fh:
    fh.write("lambda,kappa,eta,tau,rate\n")
    for row in rows:
        fh.write(f"{row.coords[0]:.12g},{row.coords[1]:.12g},"
                 f"{row.eta:.12g},{row.tau:.12g},{row.rate:.12g}\n")
print(f"wrote landscape.csv ({len(rows)} rows)")

no_dephasing = max((r for r in rows if r.coords[0] == spec.axes[0].grid()[0]), key=lambda r: r.eta)
print(f"\nbest along the lowest-dephasing column: eta = {no_dephasing.eta:.4f}")

report = maximize("efficiency", ((0.0, 100.0), (0.0, 100.0)), template, 1)
print(f"global optimum: eta = {report.value:.4f} at "
      f"lambda = {report.lambda_opt:.2f}, kappa = {report.kappa_opt:.2f}")
print("dephasing raises the peak efficiency by "
      f"{report.value / no_dephasing.eta:.1f}x over the near-coherent column")

analytic = enaqt_optimum(20, 1.0, 100.0)
print(f"\nslow-decay analytic prediction: lambda_opt = {analytic.lambda_opt:.2f}, "
      f"kappa_opt = {analytic.kappa_opt:.2f} (ratio C = {analytic.c_ratio:.5f})")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    lams = spec.axes[0].grid()
    kaps = spec.axes[1].grid()
    surface = np.array([r.eta for r in rows]).reshape(len(lams), len(kaps))
    fig, ax = plt.subplots(figsize=(6, 5))
    mesh = ax.pcolormesh(kaps, lams, surface, shading="nearest", cmap="viridis")
    ax.plot(report.kappa_opt, report.lambda_opt, "r*", markersize=12, label="numeric optimum")
    ax.plot(analytic.kappa_opt, analytic.lambda_opt, "wo", markersize=6, label="analytic prediction")
    ax.set_xscale("log"); ax.set_yscale("log")
    ax.set_xlabel("trapping rate kappa / J"); ax.set_ylabel("dephasing rate lambda / J")
    ax.set_title("Transport efficiency, N=20, detuning=100J")
    fig.colorbar(mesh, label="eta"); ax.legend()
    fig.tight_layout(); fig.savefig("landscape.png", dpi=150)
    print("wrote landscape.png")
except ImportError:
    print("matplotlib not available; skipped the heatmap")
