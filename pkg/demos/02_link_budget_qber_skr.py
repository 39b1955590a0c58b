#!/usr/bin/env python3
"""Link budget walkthrough: one water type, QBER and SKR vs distance.

Prints the environment quantities feeding the closed forms, then a short
distance table with the 11% security limit and the key-rate cutoff.
"""

import numpy as np

from uwqkd import (
    arm_efficiencies,
    depolarization_probabilities,
    evaluate_link,
    loss_probabilities,
    make_link,
    noise_counts_y0,
)
from uwqkd.cli import solve_thresholds
from uwqkd.config import RunSettings

beta = np.pi / 4
link = make_link(2.0, water="clear", scenario=3)

eta_a, eta_b = arm_efficiencies(link)
p_a, p_b = loss_probabilities(link)
q_a, q_b = depolarization_probabilities(link)
print("Clear water, scenario 3, L = 2 m, source at 0.2 L:")
print(f"  arm efficiencies   eta_A = {eta_a:.4f}, eta_B = {eta_b:.4f}")
print(f"  loss probabilities p_A = {p_a:.4f}, p_B = {p_b:.4f}")
print(f"  depolarization     q_A = {q_a:.2e}, q_B = {q_b:.2e}")
print(f"  noise count per gate y0 = {noise_counts_y0(link):.3e}")

print("\n   L (m)     QBER      SKR (bits/pulse)")
for length in np.arange(0.0, 3.51, 0.5):
    res = evaluate_link(make_link(length, water="clear", scenario=3), beta)
    marker = "  <- no key" if res.skr == 0.0 else ""
    print(f"  {length:6.2f}  {res.qber:8.5f}  {res.skr:12.6f}{marker}")

report = solve_thresholds(RunSettings(), "clear", 3, beta, l_max=6.0)
print(f"\nQBER crosses 11% at      {report.qber_secure_distance:.4f} m")
print(f"Key rate reaches zero at {report.skr_zero_distance:.4f} m")
