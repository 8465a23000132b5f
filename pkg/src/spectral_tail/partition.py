"""Uniform partition of [0, psi_1(eps)] and the recursive cell-width sequence.

The base cell width is

    delta = psi_1(eps) / (floor(psi_1(eps)**a) + 1),      a in (0, 1),

defined only when psi_1(eps)**a >= 2; every downstream estimate assumes that
admissibility, so violating it is a hard error rather than a silent fallback.
The refinement recursion

    delta_i = delta_{i-1} / (floor(delta_{i-1} * psi_1**((i+1)a - 1)) + 1)

halves at least geometrically; its ratio bound and unit-width termination are
validated as arithmetic facts by the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .potential import BranchFamily, alpha_eval, psi

__all__ = [
    "AdmissibilityError",
    "NoNegativeSpectrumError",
    "Partition",
    "DeltaSequence",
    "build_partition",
    "refine_delta_sequence",
    "DEFAULT_A",
]

DEFAULT_A = 0.5


class NoNegativeSpectrumError(ValueError):
    """eps exceeds alpha_1(0): the spectrum below -eps is empty."""


class AdmissibilityError(ValueError):
    """psi_1(eps)**a < 2: eps is too large for the partition construction."""


@dataclass(frozen=True)
class Partition:
    """Uniform grid 0 = x_0 < x_1 < ... < x_M = psi_1(eps)."""

    eps: float
    a: float
    psi1: float
    M: int
    delta: float
    points: tuple[float, ...]

    @classmethod
    def from_psi1(cls, psi1: float, a: float, eps: float) -> "Partition":
        if not 0.0 < a < 1.0:
            raise ValueError(f"partition exponent a must lie in (0, 1), got {a}")
        if psi1 <= 0.0 or psi1 ** a < 2.0:
            raise AdmissibilityError(
                f"psi_1^a = {psi1 ** a if psi1 > 0 else 0.0:.6g} < 2 at "
                f"psi_1 = {psi1:.6g}, a = {a}: partition undefined"
            )
        M = math.floor(psi1 ** a) + 1
        delta = psi1 / M
        points = tuple(float(x) for x in np.linspace(0.0, psi1, M + 1))
        return cls(eps=eps, a=a, psi1=psi1, M=M, delta=delta, points=points)


@dataclass(frozen=True)
class DeltaSequence:
    """Refined widths delta_0 > delta_1 > ... starting from the base width.

    ``first_unit_index`` is the first i with delta_i <= 1, or None if the
    computed prefix never reached unit width (generation stops at that index
    when it occurs before the requested depth).
    """

    deltas: tuple[float, ...]
    a: float
    eps: float
    psi1: float
    first_unit_index: int | None


def build_partition(family: BranchFamily, eps: float, a: float = DEFAULT_A) -> Partition:
    """Partition [0, psi_1(eps)] into floor(psi_1**a) + 1 equal cells."""
    psi1 = psi(family, 1, eps)
    if psi1 is None:
        raise NoNegativeSpectrumError(
            f"eps = {eps} exceeds alpha_1(0) = {alpha_eval(family, 1, 0.0)}: "
            "no spectrum below -eps"
        )
    if psi1 <= 0.0 or psi1 ** a < 2.0:
        eps_max = alpha_eval(family, 1, 2.0 ** (1.0 / a))
        raise AdmissibilityError(
            f"eps = {eps} too large: psi_1(eps)^a = {psi1 ** a:.6g} < 2; "
            f"admissible range at a = {a} is eps <= {eps_max:.6g}"
        )
    return Partition.from_psi1(psi1, a, eps)


def default_refine_depth(a: float) -> int:
    """Depth that always exercises the unit-width termination index."""
    return max(1, math.ceil(1.0 / a - 2.0) + 1)


def refine_delta_sequence(partition: Partition, K: int | None = None) -> DeltaSequence:
    """Generate delta_0 ... delta_K by the floor recursion.

    Stops early at the first delta_i <= 1 when that happens before K.
    """
    if K is None:
        K = default_refine_depth(partition.a)
    if K < 1:
        raise ValueError(f"refinement depth must be >= 1, got {K}")

    psi1, a = partition.psi1, partition.a
    deltas = [partition.delta]
    first_unit = 0 if partition.delta <= 1.0 else None
    for i in range(1, K + 1):
        scale = psi1 ** ((i + 1) * a - 1.0)
        d = deltas[-1] / (math.floor(deltas[-1] * scale) + 1.0)
        deltas.append(d)
        if d <= 1.0:
            if first_unit is None:
                first_unit = i
            break
    return DeltaSequence(
        deltas=tuple(deltas),
        a=a,
        eps=partition.eps,
        psi1=psi1,
        first_unit_index=first_unit,
    )
