import math

import numpy as np
import pytest
from scipy.integrate import quad

from spectral_tail import (
    BranchFamily,
    Cell,
    CoefficientP,
    ExplicitCoefficients,
    LinearCutoffEnvelope,
    a_eval,
    b_value,
    beta_value,
    cell_spectrum_dirichlet,
    cell_spectrum_neumann,
    clamp_phi,
)


def frozen_branch(alpha_at_right: float, width: float):
    """Single-branch family whose value at the cell's right endpoint is the
    given float exactly: the linear envelope at half its cutoff is exactly
    0.5, so c * 0.5 reproduces any representable target."""
    env = LinearCutoffEnvelope(x0=2.0 * width)
    return BranchFamily(env, ExplicitCoefficients((2.0 * alpha_at_right,)), m=1.0)


class TestPhaseSpaceQuantities:
    def test_a_eval(self):
        assert a_eval(5.0, 1.0, math.pi, 0.0) == 5.0
        assert a_eval(5.0, 1.0, math.pi, 2.0) == pytest.approx(1.0, abs=1e-12)
        assert a_eval(0.0, 2.0, 1.0, 1.0) == pytest.approx(-2.0 * math.pi**2, rel=1e-15)

    def test_b_value(self):
        assert b_value(5.0, 1.0, 1.0, math.pi) == pytest.approx(2.0, rel=1e-15)
        assert b_value(0.7, 0.7, 3.0, 2.0) == 0.0
        assert b_value(0.5, 0.1, 4.0, 2.0) == pytest.approx(
            (2.0 / math.pi) * math.sqrt(0.1), rel=1e-14)

    def test_b_value_requires_alpha_above_eps(self):
        with pytest.raises(ValueError):
            b_value(0.5, 1.0, 1.0, 1.0)

    def test_beta_closed_form_matches_integral(self):
        # direct integral of 5 - t^2 over [0, 2]
        assert beta_value(5.0, 1.0, 1.0, math.pi) == pytest.approx(22.0 / 3.0, rel=1e-14)
        assert beta_value(0.7, 0.7, 3.0, 2.0) == 0.0
        # frozen regression value, cross-checked against quadrature below
        assert beta_value(2.0, 0.5, 1.0, 1.0) == pytest.approx(
            0.5847726009252571, rel=1e-13)

    def test_beta_against_quadrature_randomized(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            eps = float(rng.uniform(0.01, 1.0))
            alpha = eps + float(rng.uniform(0.01, 10.0))
            p = float(rng.uniform(0.1, 5.0))
            delta = float(rng.uniform(0.1, 20.0))
            b = b_value(alpha, eps, p, delta)
            ref, _ = quad(lambda t: a_eval(alpha, p, delta, t), 0.0, b, epsabs=1e-14)
            assert beta_value(alpha, eps, p, delta) == pytest.approx(ref, rel=1e-10)

    def test_clamp(self):
        assert clamp_phi(10.0, 99.0) == 10.0
        assert clamp_phi(10.0, 3.0) == 3.0
        assert clamp_phi(10.0, None) == 0.0
        with pytest.raises(ValueError):
            clamp_phi(0.0, 1.0)

    def test_beta_monotone_in_x_and_eps(self, power_family, unit_p):
        from spectral_tail import alpha_eval, p_eval
        delta = 2.0
        xs = np.linspace(0.0, 20.0, 15)
        vals = [
            beta_value(alpha_eval(power_family, 1, float(x)), 0.05,
                       p_eval(unit_p, float(x)), delta)
            for x in xs
        ]
        assert all(a >= b for a, b in zip(vals, vals[1:]))
        eps_grid = np.linspace(0.01, 0.9, 12)
        at_zero = [beta_value(1.0, float(e), 1.0, delta) for e in eps_grid]
        assert all(a >= b for a, b in zip(at_zero, at_zero[1:]))
        bs = [b_value(1.0, float(e), 1.0, delta) for e in eps_grid]
        assert all(a >= b for a, b in zip(bs, bs[1:]))


class TestCellSpectra:
    def test_dirichlet_reference(self, unit_p):
        family = frozen_branch(5.0, math.pi)
        spec = cell_spectrum_dirichlet(Cell(0.0, math.pi), family, unit_p, 1.0)
        # m = 1: 1 - 5 = -4 < -1 admitted; m = 2: 4 - 5 = -1, excluded (strict)
        assert spec.count == 1
        assert spec.sum == 4.0
        assert spec.modes == ((1, 1, 4.0),)

    def test_dirichlet_scaled_p(self):
        family = frozen_branch(50.0, 1.0)
        spec = cell_spectrum_dirichlet(Cell(0.0, 1.0), family,
                                       CoefficientP.constant(4.0), 2.0)
        assert spec.count == 1
        assert spec.sum == 50.0 - 4.0 * (math.pi / 1.0) ** 2

    def test_dirichlet_empty(self, unit_p):
        family = frozen_branch(0.5, math.pi)
        spec = cell_spectrum_dirichlet(Cell(0.0, math.pi), family, unit_p, 1.0)
        assert spec.count == 0 and spec.sum == 0.0 and spec.modes == ()

    def test_neumann_reference(self, unit_p):
        # frozen at the LEFT endpoint: the unscaled envelope value there is 1
        env = LinearCutoffEnvelope(x0=100.0)
        family = BranchFamily(env, ExplicitCoefficients((5.0,)), m=1.0)
        spec = cell_spectrum_neumann(Cell(0.0, math.pi), family, unit_p, 1.0)
        # wavenumbers 0 and 1: -5 and -4; wavenumber 2 hits -1, excluded
        assert spec.count == 2
        assert spec.sum == 9.0
        assert spec.modes == ((1, 1, 5.0), (2, 1, 4.0))

    def test_neumann_second_reference(self, unit_p):
        env = LinearCutoffEnvelope(x0=100.0)
        family = BranchFamily(env, ExplicitCoefficients((20.0,)), m=1.0)
        spec = cell_spectrum_neumann(Cell(0.0, 1.0), family, unit_p, 1.0)
        assert spec.count == 2
        assert spec.sum == 20.0 + (20.0 - math.pi**2)

    def test_neumann_below_threshold(self, unit_p):
        env = LinearCutoffEnvelope(x0=100.0)
        family = BranchFamily(env, ExplicitCoefficients((0.5,)), m=1.0)
        spec = cell_spectrum_neumann(Cell(0.0, 1.0), family, unit_p, 1.0)
        assert spec.count == 0 and spec.sum == 0.0

    def test_count_formula_randomized(self, unit_p):
        rng = np.random.default_rng(23)
        for _ in range(200):
            eps = float(rng.uniform(0.01, 1.0))
            alpha = eps + float(rng.uniform(1e-3, 30.0))
            delta = float(rng.uniform(0.2, 30.0))
            family = frozen_branch(alpha, delta)
            spec = cell_spectrum_dirichlet(Cell(0.0, delta), family, unit_p, eps)
            b = (delta / math.pi) * math.sqrt(alpha - eps)
            expected = int(b) - 1 if b == int(b) else max(0, math.ceil(b) - 1)
            assert spec.count == expected

    def test_neumann_dominates_dirichlet(self, power_family, unit_p):
        rng = np.random.default_rng(5)
        for _ in range(60):
            left = float(rng.uniform(0.0, 30.0))
            width = float(rng.uniform(0.5, 25.0))
            eps = float(rng.uniform(0.01, 0.5))
            cell = Cell(left, left + width)
            d = cell_spectrum_dirichlet(cell, power_family, unit_p, eps)
            n = cell_spectrum_neumann(cell, power_family, unit_p, eps)
            assert n.count >= d.count
            assert n.sum >= d.sum
            # each Dirichlet mode (m, j) maps to Neumann mode (m+1, j),
            # which uses the same wavenumber but larger alpha / smaller p
            n_by_key = {(m, j): mu for m, j, mu in n.modes}
            for m, j, mu in d.modes:
                assert (m + 1, j) in n_by_key
                assert n_by_key[(m + 1, j)] >= mu

    def test_mode_ordering_is_ascending_j_then_m(self, power_family, unit_p):
        spec = cell_spectrum_neumann(Cell(0.0, 10.0), power_family, unit_p, 0.02)
        keys = [(j, m) for m, j, _ in spec.modes]
        assert keys == sorted(keys)

    def test_cell_validation(self):
        with pytest.raises(ValueError):
            Cell(2.0, 2.0)
