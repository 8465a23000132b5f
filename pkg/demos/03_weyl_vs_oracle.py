#!/usr/bin/env python3
"""Phase-space tail sum against the finite-difference ground truth.

As eps decreases, the sum of eigenvalue magnitudes below -eps approaches
the branchwise phase-space integral

    (1/3pi) sum_j int_{alpha_j >= eps} sqrt(alpha_j - eps) (2 alpha_j + eps) dx

(for p = 1).  This script sweeps a geometric level grid, prints the bracket,
the tail sum, the ground truth, and the shrinking relative gap, and then
evaluates the remainder-exponent formulas for the power-decay regime.
"""
from spectral_tail import (
    BranchFamily,
    CoefficientP,
    InverseSquareCoefficients,
    PowerDecay,
    PowerEnvelope,
    assemble_bracket,
    error_exponents,
    negative_tail,
    weyl_tail_sum,
)

family = BranchFamily(
    envelope=PowerEnvelope(a0=0.5, scale=1.0),
    coefficients=InverseSquareCoefficients(),
    decay_class=PowerDecay(a0=0.5),
    m=0.6,
)
p = CoefficientP.constant(1.0)

print("  eps     s_lower   s_upper     weyl     oracle    |ratio-1|")
for eps in (0.4, 0.2, 0.1, 0.05):
    bracket = assemble_bracket(family, p, eps)
    weyl = weyl_tail_sum(family, p, eps)
    truth = negative_tail(family, p, eps)
    gap = abs(truth.sum / weyl.total - 1.0)
    print(f"  {eps:5.2f}   {bracket.s_lower:7.4f}   {bracket.s_upper:7.4f}"
          f"   {weyl.total:7.4f}   {truth.sum:7.4f}   {gap:8.4f}")

print("\nper-branch contributions at eps = 0.05:")
weyl = weyl_tail_sum(family, p, 0.05)
for j, psi_j, contribution in weyl.per_branch:
    print(f"  branch {j}: support [0, {psi_j:8.3f}], contributes "
          f"{contribution:.6f}")

# the remainder in this regime decays like eps^t0; for the envelope rate
# a0 = 1/2 the summability exponent must stay below (2-3a0)^2/(2a0(4-3a0))
rep = error_exponents(0.5, 0.05)
print(f"\nexponent report at (a0, m) = (0.5, 0.05):")
print(f"  admissible m sup = {rep.admissible_m_sup}")
print(f"  partition exponent a = {rep.a_param}")
print(f"  remainder exponent t0 = {rep.t0}")
print("(the eps^0.0156 rate is too slow to pin down numerically at desk "
      "scale, which is why the gap column above is judged as a trend)")
