#!/usr/bin/env python3
"""How the optimal rates scale with network size and trap detuning.

The decay-free transfer rate has a joint stationary point with
lambda_opt = C*kappa_opt, C = sqrt(2(N-2)/N) -> sqrt(2): trapping,
dephasing, and the system's energy scales converge at the optimum.  Numeric
maximization confirms the closed forms to parts in 1e7.
"""
import numpy as np

from enaqt_fcn import enaqt_optimum, verify_optimum

print(f"{'N':>4} {'Delta':>7} {'kappa_opt':>11} {'lambda_opt':>11} "
      f"{'C':>8} {'R_opt':>10} {'numeric mismatch':>17}")
for n in (3, 5, 10, 20, 50, 100):
    for delta in (0.0, 10.0, 100.0):
        opt = enaqt_optimum(n, 1.0, delta)
        if n <= 50:
            mismatch = max(verify_optimum(n, 1.0, delta).rel_errors.values())
            tail = f"{mismatch:>17.2e}"
        else:
            tail = f"{'(analytic only)':>17}"
        print(f"{n:>4} {delta:>7.1f} {opt.kappa_opt:>11.4f} {opt.lambda_opt:>11.4f} "
              f"{opt.c_ratio:>8.5f} {opt.rate_opt:>10.6f} {tail}")

print("\nconvergence of scales at zero detuning: kappa_opt = sqrt(N)*J, "
      "lambda_opt -> sqrt(2N)*J, R_opt ~ J/sqrt(N):")
for n in (10, 100, 1000):
    opt = enaqt_optimum(n, 1.0, 0.0)
    print(f"  N={n:5d}: kappa_opt/sqrt(N) = {opt.kappa_opt/np.sqrt(n):.4f}, "
          f"lambda_opt/sqrt(2N) = {opt.lambda_opt/np.sqrt(2*n):.4f}, "
          f"R_opt*sqrt(N) = {opt.rate_opt*np.sqrt(n):.4f}")
