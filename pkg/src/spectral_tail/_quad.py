"""Adaptive quadrature with square-root endpoint handling.

The branch-weight integrands vanish like sqrt(psi_j - x) at the right end of
their support; substituting x = hi - u^2 removes the singularity and restores
fast convergence of the adaptive rule.
"""

from __future__ import annotations

import math

from scipy.integrate import quad

__all__ = ["QuadratureError", "integrate_adaptive"]

_LIMIT = 500


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to converge."""


def integrate_adaptive(f, lo: float, hi: float, *, sqrt_endpoint: bool = False,
                       breakpoints: tuple[float, ...] = (), rtol: float = 1e-12,
                       atol: float = 1e-14, label: str = "") -> tuple[float, float]:
    """Integrate f over [lo, hi]; returns (value, error estimate).

    With ``sqrt_endpoint`` the integrand is assumed to vanish like
    sqrt(hi - x) at the upper limit and is integrated under x = hi - u^2.
    ``breakpoints`` mark interior kinks (mapped through the substitution).
    """
    if hi <= lo:
        return 0.0, 0.0
    if sqrt_endpoint:
        def g(u: float) -> float:
            return 2.0 * u * f(hi - u * u)

        pts = sorted(math.sqrt(hi - b) for b in breakpoints if lo < b < hi)
        value, err, trouble = _run_quad(g, 0.0, math.sqrt(hi - lo), pts, rtol, atol)
    else:
        pts = sorted(b for b in breakpoints if lo < b < hi)
        value, err, trouble = _run_quad(f, lo, hi, pts, rtol, atol)
    if trouble and err > 1e-6 * max(1.0, abs(value)):
        raise QuadratureError(
            f"quadrature did not converge{' for ' + label if label else ''}: "
            f"error estimate {err:.3e}"
        )
    return value, err


def _run_quad(f, lo, hi, pts, rtol, atol):
    out = quad(f, lo, hi, epsabs=atol, epsrel=rtol, limit=_LIMIT,
               points=pts or None, full_output=True)
    # a warning message is appended to the result tuple on non-convergence
    return out[0], out[1], len(out) > 3
