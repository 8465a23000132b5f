"""Exact spectra of the constant-coefficient model operators on one cell.

On a cell [x_{i-1}, x_i] of width delta the coefficients are frozen at one
endpoint, which makes the model spectrum an explicit parabola in the mode
number:

* Dirichlet minorant, frozen at the right endpoint:  modes m = 1, 2, ...
  with eigenvalue  p(x_i) (m pi / delta)^2 - alpha_j(x_i).
* Neumann majorant, frozen at the left endpoint:  wavenumbers m - 1 for
  m = 1, 2, ... (the constant mode is always tested) with eigenvalue
  p(x_{i-1}) ((m-1) pi / delta)^2 - alpha_j(x_{i-1}).

A mode is admitted when its eigenvalue is strictly below -eps; a model
eigenvalue exactly equal to -eps is excluded.  Branch and mode loops
terminate by monotonicity, with no fixed caps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .potential import BranchFamily, CoefficientP, alpha_eval, p_eval

__all__ = [
    "Cell",
    "CellSpectrum",
    "a_eval",
    "b_value",
    "beta_value",
    "clamp_phi",
    "cell_spectrum_dirichlet",
    "cell_spectrum_neumann",
]


@dataclass(frozen=True)
class Cell:
    left: float
    right: float

    def __post_init__(self):
        if not self.left < self.right:
            raise ValueError(f"cell needs left < right, got [{self.left}, {self.right}]")

    @property
    def width(self) -> float:
        return self.right - self.left


@dataclass(frozen=True)
class CellSpectrum:
    """Modes of one frozen cell below -eps.

    ``modes`` holds (m, j, mu) triples with mu = |model eigenvalue| > eps;
    ``sum`` is their total, accumulated in ascending (j, m) order.
    """

    count: int
    sum: float
    modes: tuple[tuple[int, int, float], ...]


def a_eval(alpha_val: float, p_val: float, delta: float, t: float) -> float:
    """Dispersion at continuous mode parameter t: alpha - p (pi t / delta)^2."""
    if delta <= 0.0:
        raise ValueError(f"cell width must be positive, got {delta}")
    if p_val <= 0.0:
        raise ValueError(f"p must be positive, got {p_val}")
    return alpha_val - p_val * (math.pi * t / delta) ** 2


def b_value(alpha_val: float, eps: float, p_val: float, delta: float) -> float:
    """Mode-band edge: (delta/pi) sqrt((alpha - eps) / p).

    Requires alpha >= eps; a branch below the threshold contributes no modes
    and must be skipped by the caller.
    """
    if alpha_val < eps:
        raise ValueError(
            f"b undefined for alpha = {alpha_val} < eps = {eps}: branch excluded"
        )
    if p_val <= 0.0 or delta <= 0.0:
        raise ValueError("p and delta must be positive")
    return (delta / math.pi) * math.sqrt((alpha_val - eps) / p_val)


def beta_value(alpha_val: float, eps: float, p_val: float, delta: float) -> float:
    """Band integral of the dispersion, in closed form.

    Equals the integral of a_eval over t in [0, b_value] exactly:
    (delta / (3 pi)) * sqrt((alpha - eps)/p) * (2 alpha + eps).
    """
    b = b_value(alpha_val, eps, p_val, delta)
    return b * (2.0 * alpha_val + eps) / 3.0


def clamp_phi(bound: float, psi_j: float | None) -> float:
    """min(bound, psi_j); an absent level set clamps to 0 so the branch
    contributes an empty integral instead of an error."""
    if bound <= 0.0:
        raise ValueError(f"clamp bound must be positive, got {bound}")
    if psi_j is None:
        return 0.0
    return min(bound, psi_j)


def _spectrum(family: BranchFamily, pv: float, delta: float, eps: float,
              frozen_x: float, first_wavenumber: int) -> CellSpectrum:
    modes: list[tuple[int, int, float]] = []
    total = 0.0
    j = 1
    while True:
        aj = alpha_eval(family, j, frozen_x)
        if aj <= eps:
            break  # branches only shrink with j
        m = 1
        while True:
            k = m - 1 + first_wavenumber
            mu = aj - pv * (k * math.pi / delta) ** 2
            if mu > eps:  # strict: eigenvalue exactly -eps is excluded
                modes.append((m, j, mu))
                total += mu
                m += 1
            else:
                break
        j += 1
    return CellSpectrum(count=len(modes), sum=total, modes=tuple(modes))


def cell_spectrum_dirichlet(cell: Cell, family: BranchFamily, p: CoefficientP,
                            eps: float) -> CellSpectrum:
    """Modes below -eps of the cell frozen at its right endpoint,
    Dirichlet walls: wavenumbers m = 1, 2, ..."""
    if eps <= 0.0:
        raise ValueError(f"eps must be positive, got {eps}")
    return _spectrum(family, p_eval(p, cell.right), cell.width, eps,
                     frozen_x=cell.right, first_wavenumber=1)


def cell_spectrum_neumann(cell: Cell, family: BranchFamily, p: CoefficientP,
                          eps: float) -> CellSpectrum:
    """Modes below -eps of the cell frozen at its left endpoint, Neumann
    walls: wavenumbers m - 1 = 0, 1, ..., so the constant mode contributes
    -alpha_j(x_{i-1}) whenever alpha_j(x_{i-1}) > eps."""
    if eps <= 0.0:
        raise ValueError(f"eps must be positive, got {eps}")
    return _spectrum(family, p_eval(p, cell.left), cell.width, eps,
                     frozen_x=cell.left, first_wavenumber=0)
