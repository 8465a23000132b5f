"""Phase-space tail sum and the error-exponent formulas.

The leading-order approximation to the sum of eigenvalue magnitudes below
-eps is the branchwise phase-space integral

    (1/(3 pi)) * sum_j  int_{alpha_j(x) >= eps}
        sqrt((alpha_j(x) - eps) / p(x)) * (2 alpha_j(x) + eps) dx,

which coincides with (1/delta) * beta_j integrated over the same set: the
cell width cancels identically.  Only this main term is computed; the
prefactors of the remainder estimates are non-constructive, so accuracy is
measured empirically against the finite-difference ground truth instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._parallel import ordered_map
from ._quad import QuadratureError, integrate_adaptive
from .potential import BranchFamily, CoefficientP, alpha_eval, l_epsilon, \
    p_eval, psi

__all__ = [
    "WeylResult",
    "ExponentReport",
    "weyl_tail_sum",
    "error_exponents",
]

_THIRD_PI = 1.0 / (3.0 * math.pi)


@dataclass(frozen=True)
class WeylResult:
    eps: float
    total: float
    per_branch: tuple[tuple[int, float, float], ...]  # (j, psi_j, contribution)
    quad_error: float


def weyl_tail_sum(family: BranchFamily, p: CoefficientP, eps: float,
                  rtol: float = 1e-12, threads: int | None = None) -> WeylResult:
    """Branchwise phase-space tail sum at level eps.

    Each branch is integrated over [0, psi_j(eps)] with the square-root
    endpoint handled by substitution; branches beyond the active count
    contribute nothing and are not visited.
    """
    if eps <= 0.0:
        raise ValueError(f"eps must be positive, got {eps}")
    l_eps = l_epsilon(family, eps)
    breakpoints = family.envelope.breakpoints()

    def branch(j: int) -> tuple[int, float, float, float]:
        psi_j = psi(family, j, eps)
        if psi_j is None or psi_j <= 0.0:
            return (j, 0.0, 0.0, 0.0)

        def integrand(x: float) -> float:
            alpha = alpha_eval(family, j, x)
            gap = alpha - eps
            if gap <= 0.0:  # float dust at the level-set edge
                return 0.0
            return _THIRD_PI * math.sqrt(gap / p_eval(p, x)) * (2.0 * alpha + eps)

        try:
            value, err = integrate_adaptive(
                integrand, 0.0, psi_j, sqrt_endpoint=True,
                breakpoints=breakpoints, rtol=rtol,
                label=f"branch {j} tail integral")
        except QuadratureError as exc:
            raise QuadratureError(f"branch {j}: {exc}") from exc
        return (j, psi_j, value, err)

    results = ordered_map(branch, range(1, l_eps + 1), threads)
    total = math.fsum(r[2] for r in results)
    quad_error = math.fsum(r[3] for r in results)
    return WeylResult(eps=eps, total=total,
                      per_branch=tuple((j, pj, v) for j, pj, v, _ in results),
                      quad_error=quad_error)


@dataclass(frozen=True)
class ExponentReport:
    """Remainder exponents in the power-decay regime.

    For envelope decay rate a0 in (0, 2/3) and summability exponent m the
    admissible range is 0 < m < (2 - 3 a0)^2 / (2 a0 (4 - 3 a0)); inside it
    the partition exponent

        a = ((2 - 3 a0)^2 + 6 a0^2 m) / (4 (2 - 3 a0))

    lies in (0, 1) and the remainder decays like eps^t0 with

        t0 = ((2 - 3 a0)^2 + 6 a0^2 m - 8 a0 m) / (16 a0) > 0.
    """

    a0: float
    m: float
    admissible_m_sup: float
    a_param: float
    t0: float


def admissible_m_sup(a0: float) -> float:
    if not 0.0 < a0 < 2.0 / 3.0:
        raise ValueError(f"decay rate a0 must lie in (0, 2/3), got {a0}")
    return (2.0 - 3.0 * a0) ** 2 / (2.0 * a0 * (4.0 - 3.0 * a0))


def error_exponents(a0: float, m: float) -> ExponentReport:
    """Evaluate the remainder-exponent formulas for a power-decay envelope."""
    sup = admissible_m_sup(a0)
    if not 0.0 < m < sup:
        raise ValueError(
            f"summability exponent m = {m} outside the admissible range "
            f"(0, {sup:.6g}) for a0 = {a0}"
        )
    q = (2.0 - 3.0 * a0) ** 2
    a_param = (q + 6.0 * a0 * a0 * m) / (4.0 * (2.0 - 3.0 * a0))
    t0 = (1.0 / (16.0 * a0)) * (q + 6.0 * a0 * a0 * m - 8.0 * a0 * m)
    return ExponentReport(a0=a0, m=m, admissible_m_sup=sup, a_param=a_param, t0=t0)
