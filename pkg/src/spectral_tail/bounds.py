"""Two-sided bracket on the count and sum of eigenvalues below -eps.

The half-line operator is sandwiched cell by cell between exactly solvable
constant-coefficient models: Dirichlet cells frozen at their right endpoint
minorize (their mode totals can only undercount), Neumann cells frozen at
their left endpoint majorize.  Summing the per-cell spectra therefore gives

    n_lower <= N(eps) <= n_upper,      s_lower <= sum |lambda_i| <= s_upper,

with every quantity computable in closed form.  The first cell is majorized
by its own constant-coefficient Neumann model, like every other cell, so the
bracket contains no unknown constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._parallel import ordered_map
from ._quad import QuadratureError, integrate_adaptive
from .cells import Cell, CellSpectrum, beta_value, cell_spectrum_dirichlet, \
    cell_spectrum_neumann
from .partition import DEFAULT_A, build_partition
from .potential import BranchFamily, CoefficientP, alpha_eval, l_epsilon, \
    p_eval, psi

__all__ = [
    "SpectralBracket",
    "TheoremExpressionReport",
    "assemble_bracket",
    "theorem_expressions",
]


@dataclass(frozen=True)
class SpectralBracket:
    """Per-eps bracket assembled from per-cell model spectra."""

    eps: float
    a: float
    M: int
    delta: float
    n_lower: int
    n_upper: int
    s_lower: float
    s_upper: float
    per_cell: tuple[tuple[int, CellSpectrum, CellSpectrum], ...]

    def __post_init__(self):
        if self.n_lower > self.n_upper or self.s_lower > self.s_upper + 1e-12:
            raise AssertionError("bracket violates n_lower <= n_upper / s_lower <= s_upper")


@dataclass(frozen=True)
class TheoremExpressionReport:
    """The two closed-form sum estimates with their shared main term.

    lower_expr = main - C1 * alpha32 - C2 * tail,
    upper_expr = main + C1 * alpha32 + C2 * tail,

    where main is the phase-space sum (1/delta) sum_j int_0^psi_j beta_j,
    alpha32 collects int_0^delta alpha_j^(3/2), and tail is
    psi_1^a * sum_j alpha_j(0) over the active branches.  The multipliers for
    the correction terms are user parameters: the estimates hold for *some*
    positive constants, which are not derived here.
    """

    eps: float
    a: float
    C1: float
    C2: float
    main_term: float
    alpha32_correction: float
    tail_correction: float
    lower_expr: float
    upper_expr: float

    @property
    def lower_is_vacuous(self) -> bool:
        """A negative lower expression bounds nothing (the sum is >= 0)."""
        return self.lower_expr < 0.0


def _empty_bracket(eps: float, a: float) -> SpectralBracket:
    return SpectralBracket(eps=eps, a=a, M=0, delta=0.0, n_lower=0, n_upper=0,
                           s_lower=0.0, s_upper=0.0, per_cell=())


def assemble_bracket(family: BranchFamily, p: CoefficientP, eps: float,
                     a: float = DEFAULT_A, threads: int | None = None,
                     keep_cells: bool = True) -> SpectralBracket:
    """Assemble the two-sided bracket at level eps.

    Above alpha_1(0) the spectrum below -eps is empty and no partition is
    needed; admissibility failures of the partition propagate.
    """
    if eps > alpha_eval(family, 1, 0.0):
        return _empty_bracket(eps, a)
    part = build_partition(family, eps, a)
    cells = [Cell(part.points[i - 1], part.points[i]) for i in range(1, part.M + 1)]

    def solve(cell: Cell) -> tuple[CellSpectrum, CellSpectrum]:
        return (cell_spectrum_dirichlet(cell, family, p, eps),
                cell_spectrum_neumann(cell, family, p, eps))

    pairs = ordered_map(solve, cells, threads)
    # fixed reduction order: ascending cell index
    n_lower = sum(d.count for d, _ in pairs)
    n_upper = sum(n.count for _, n in pairs)
    s_lower = math.fsum(d.sum for d, _ in pairs)
    s_upper = math.fsum(n.sum for _, n in pairs)
    per_cell = tuple((i + 1, d, n) for i, (d, n) in enumerate(pairs)) if keep_cells else ()
    return SpectralBracket(eps=eps, a=a, M=part.M, delta=part.delta,
                           n_lower=n_lower, n_upper=n_upper,
                           s_lower=s_lower, s_upper=s_upper, per_cell=per_cell)


def theorem_expressions(family: BranchFamily, p: CoefficientP, eps: float,
                        a: float = DEFAULT_A, C1: float = 3.0,
                        C2: float = 3.0) -> TheoremExpressionReport:
    """Evaluate the closed-form estimate expressions at level eps.

    The default multipliers 3 match the explicit per-cell loss factor before
    constants are absorbed; C1 = C2 = 0 degenerates both expressions to the
    shared main term.
    """
    if C1 < 0.0 or C2 < 0.0:
        raise ValueError("correction multipliers must be nonnegative")
    part = build_partition(family, eps, a)
    delta = part.delta
    l_eps = l_epsilon(family, eps)
    breakpoints = family.envelope.breakpoints()

    main_parts: list[float] = []
    alpha32_parts: list[float] = []
    for j in range(1, l_eps + 1):
        psi_j = psi(family, j, eps)
        if psi_j is None or psi_j <= 0.0:
            main_parts.append(0.0)
        else:
            def beta_integrand(x: float, _j: int = j) -> float:
                alpha = alpha_eval(family, _j, x)
                if alpha <= eps:  # float dust at the level-set edge
                    return 0.0
                return beta_value(alpha, eps, p_eval(p, x), delta)

            try:
                value, _ = integrate_adaptive(
                    beta_integrand, 0.0, psi_j, sqrt_endpoint=True,
                    breakpoints=breakpoints, label=f"branch {j} band integral")
            except QuadratureError as exc:
                raise QuadratureError(f"branch {j}: {exc}") from exc
            main_parts.append(value / delta)

        def alpha32(x: float, _j: int = j) -> float:
            return alpha_eval(family, _j, x) ** 1.5

        try:
            value, _ = integrate_adaptive(
                alpha32, 0.0, delta, breakpoints=breakpoints,
                label=f"branch {j} alpha^(3/2) integral")
        except QuadratureError as exc:
            raise QuadratureError(f"branch {j}: {exc}") from exc
        alpha32_parts.append(value)

    main = math.fsum(main_parts)
    alpha32_total = math.fsum(alpha32_parts)
    tail = part.psi1 ** a * math.fsum(
        alpha_eval(family, j, 0.0) for j in range(1, l_eps + 1))
    return TheoremExpressionReport(
        eps=eps, a=a, C1=C1, C2=C2, main_term=main,
        alpha32_correction=alpha32_total, tail_correction=tail,
        lower_expr=main - C1 * alpha32_total - C2 * tail,
        upper_expr=main + C1 * alpha32_total + C2 * tail,
    )
