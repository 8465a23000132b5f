#!/usr/bin/env python3
"""Tour of the potential catalog: branch families, level sets, validation.

The operator's potential is described by decreasing eigenvalue branches
alpha_j(x) = c_j * g(x).  This script builds the three envelope kinds,
inverts level sets, and runs the hypothesis checks.
"""
import math

import numpy as np

from spectral_tail import (
    BranchFamily,
    CoefficientP,
    Example33Envelope,
    GeometricCoefficients,
    InverseSquareCoefficients,
    LinearCutoffEnvelope,
    LogDecay,
    PowerDecay,
    PowerEnvelope,
    alpha_eval,
    iterated_log,
    l_epsilon,
    psi,
    validate_family,
)

# ------------------------------------------------------------------
# a power-decay family: alpha_j(x) = j^-2 (1+x)^(-1/2)
# ------------------------------------------------------------------
power = BranchFamily(
    envelope=PowerEnvelope(a0=0.5, scale=1.0),
    coefficients=InverseSquareCoefficients(),
    decay_class=PowerDecay(a0=0.5),
    m=0.6,
)

print("power-decay family, alpha_j(x) = j^-2 (1+x)^(-1/2)")
for j in (1, 2, 3):
    vals = ", ".join(f"{alpha_eval(power, j, x):.4f}" for x in (0.0, 3.0, 24.0))
    print(f"  branch {j}: alpha at x = 0, 3, 24 -> {vals}")

# the level set {x : alpha_j(x) >= eps} ends at psi_j(eps)
for eps in (0.4, 0.1, 0.05):
    ends = [psi(power, j, eps) for j in range(1, l_epsilon(power, eps) + 1)]
    print(f"  eps = {eps}: {l_epsilon(power, eps)} active branches, "
          f"psi_j = {[round(v, 3) for v in ends]}")

# ------------------------------------------------------------------
# a geometric ladder under a linear-cutoff envelope
# ------------------------------------------------------------------
ramp = BranchFamily(
    envelope=LinearCutoffEnvelope(x0=30.0),
    coefficients=GeometricCoefficients(ratio=0.5),
    m=0.3,
)
print("\nlinear-cutoff envelope with geometric branch coefficients")
print("  support ends at x0 = 30; alpha_1(0) =", alpha_eval(ramp, 1, 0.0))
print("  l_eps(0.3) =", l_epsilon(ramp, 0.3), " (branches 1, 2)")

# ------------------------------------------------------------------
# the worked two-piece envelope: linear on [0, b], then 1 / lnln(x)
# ------------------------------------------------------------------
worked = BranchFamily(
    envelope=Example33Envelope(b=25.0),
    coefficients=InverseSquareCoefficients(),
    decay_class=LogDecay(xi=1.0, n=2),
    m=0.6,
)
print("\ntwo-piece envelope at b = 25")
print(f"  alpha_1(0)  = {alpha_eval(worked, 1, 0.0):.6f}")
print(f"  alpha_1(25) = {alpha_eval(worked, 1, 25.0):.6f} (pieces agree at b)")
print(f"  psi_1(0.5)  = {psi(worked, 1, 0.5):.4f}  vs  e^(e^2) = "
      f"{math.exp(math.exp(2.0)):.4f}")
print(f"  iterated logs: ln_2 of psi_1(0.5) = "
      f"{iterated_log(2, psi(worked, 1, 0.5)):.6f} (= 1/eps)")

# ------------------------------------------------------------------
# hypothesis validation: positivity, monotonicity, vanishing, p bounds
# ------------------------------------------------------------------
print("\nvalidation of the worked family with p(x) = 1 + x/50 (capped):")
p = CoefficientP.piecewise_linear([(0.0, 1.0), (50.0, 2.0)])
report = validate_family(worked, p, sample_count=64)
for line in report.lines():
    print("  " + line)
print("overall:", "PASS" if report.passed else "FAIL")

# a deliberately broken input is reported, not rejected
from spectral_tail import ExplicitCoefficients

broken = BranchFamily(PowerEnvelope(0.5), ExplicitCoefficients((1.0, 2.0)), m=1.0)
bad = validate_family(broken, CoefficientP.constant(1.0))
print("\nreversed coefficient ladder:")
for line in bad.lines():
    if "FAIL" in line:
        print("  " + line)
