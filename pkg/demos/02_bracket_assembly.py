#!/usr/bin/env python3
"""Anatomy of the two-sided bracket at a single level.

The interval [0, psi_1(eps)] is cut into M = floor(psi_1^a) + 1 equal cells.
On each cell the operator is compared against two constant-coefficient
models: freezing at the right endpoint with Dirichlet walls can only lose
modes (lower bound); freezing at the left endpoint with Neumann walls can
only gain them (upper bound).  Both model spectra are explicit parabolas in
the mode number, so the bracket costs almost nothing.
"""
from spectral_tail import (
    BranchFamily,
    CoefficientP,
    InverseSquareCoefficients,
    PowerDecay,
    PowerEnvelope,
    assemble_bracket,
    build_partition,
    l_epsilon,
    negative_tail,
    refine_delta_sequence,
)

family = BranchFamily(
    envelope=PowerEnvelope(a0=0.5, scale=1.0),
    coefficients=InverseSquareCoefficients(),
    decay_class=PowerDecay(a0=0.5),
    m=0.6,
)
p = CoefficientP.constant(1.0)
eps = 0.1

part = build_partition(family, eps)
print(f"eps = {eps}: psi_1 = {part.psi1}, M = {part.M} cells of width "
      f"delta = {part.delta:.4f}")
print(f"active branches: l_eps = {l_epsilon(family, eps)}")

bracket = assemble_bracket(family, p, eps)
print("\n cell   [left, right]          dirichlet        neumann")
for i, d, n in bracket.per_cell:
    left, right = part.points[i - 1], part.points[i]
    print(f"  {i:2d}   [{left:7.3f}, {right:7.3f}]   "
          f"count {d.count:2d} sum {d.sum:7.4f}   "
          f"count {n.count:2d} sum {n.sum:7.4f}")

print(f"\ncount bracket: [{bracket.n_lower}, {bracket.n_upper}]")
print(f"sum bracket:   [{bracket.s_lower:.6f}, {bracket.s_upper:.6f}]")

truth = negative_tail(family, p, eps)
print(f"\nground truth:  count {truth.count}, sum {truth.sum:.6f} "
      f"(+/- {truth.sum_error:.2e})")
assert bracket.n_lower <= truth.count <= bracket.n_upper
assert bracket.s_lower - truth.sum_error <= truth.sum <= bracket.s_upper + truth.sum_error
print("sandwich holds.")

# the recursive cell-width sequence contracts below unit width within
# ceil(1/a - 2) + 1 steps; it is part of the sharpened first-cell analysis
seq = refine_delta_sequence(part)
print("\nrefined widths:", [round(d, 6) for d in seq.deltas],
      "- first unit-width index:", seq.first_unit_index)
ratio_cap = 2.0 * part.psi1 ** part.a
for d_prev, d_next in zip(seq.deltas, seq.deltas[1:]):
    assert d_prev / d_next < ratio_cap
print(f"every contraction ratio is below 2 psi_1^a = {ratio_cap:.3f}")
