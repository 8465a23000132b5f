"""Acceptance suite: one test per criterion, each printing a PASS line.

The separable reference family is alpha_j(x) = j^-2 (1+x)^(-1/2) with p = 1;
its level grid {0.4, 0.2, 0.1, 0.05} is shared across the bracketing,
per-cell, trend and determinism criteria through a module-scoped fixture.
"""

import json
import math
import os
import time

import numpy as np
import pytest
from scipy.integrate import quad

from spectral_tail import (
    BranchFamily,
    Cell,
    CoefficientP,
    ExplicitCoefficients,
    Grid,
    LinearCutoffEnvelope,
    Partition,
    a_eval,
    alpha_eval,
    assemble_bracket,
    b_value,
    beta_value,
    cell_spectrum_dirichlet,
    cell_spectrum_neumann,
    discretize_interval,
    eigenvalues_below,
    error_exponents,
    l_epsilon,
    negative_tail,
    p_eval,
    psi,
    refine_delta_sequence,
    weyl_tail_sum,
)
from spectral_tail.cli import example33_family, main
from spectral_tail.oracle import DIRICHLET
from spectral_tail.partition import default_refine_depth
from spectral_tail.semiclassical import admissible_m_sup

EPS_GRID = (0.4, 0.2, 0.1, 0.05)


def report(n, text):
    print(f"ACCEPTANCE {n} PASS: {text}")


@pytest.fixture(scope="module")
def grid_results(power_family, unit_p):
    """Bracket, tail sum and ground truth at every grid level."""
    out = {}
    for eps in EPS_GRID:
        bracket = assemble_bracket(power_family, unit_p, eps)
        weyl = weyl_tail_sum(power_family, unit_p, eps)
        truth = negative_tail(power_family, unit_p, eps)
        out[eps] = (bracket, weyl, truth)
    return out


def test_criterion_1_band_integral_closed_form():
    """Closed form of the band integral vs adaptive quadrature."""
    start = time.time()
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(200):
        eps = float(rng.uniform(0.005, 2.0))
        alpha = eps + float(rng.uniform(1e-4, 50.0))
        p = float(rng.uniform(0.05, 10.0))
        delta = float(rng.uniform(0.05, 50.0))
        b = b_value(alpha, eps, p, delta)
        ref, _ = quad(lambda t: a_eval(alpha, p, delta, t), 0.0, b,
                      epsabs=1e-14, epsrel=1e-13)
        rel = abs(beta_value(alpha, eps, p, delta) - ref) / abs(ref)
        worst = max(worst, rel)
        assert rel <= 1e-10
    elapsed = time.time() - start
    assert elapsed < 5.0
    report(1, f"200 randomized band integrals, worst relative gap "
              f"{worst:.2e} <= 1e-10 in {elapsed:.2f}s")


def test_criterion_2_model_cell_exactness(unit_p):
    """Hand-enumerated model-cell spectra, matched bit for bit."""
    # Dirichlet: alpha frozen to exactly 5 at the right endpoint of a
    # width-pi cell; modes 1 - 5 = -4 (in), 4 - 5 = -1 (out, strict)
    fam_d = BranchFamily(LinearCutoffEnvelope(2.0 * math.pi),
                         ExplicitCoefficients((10.0,)), m=1.0)
    d = cell_spectrum_dirichlet(Cell(0.0, math.pi), fam_d, unit_p, 1.0)
    assert (d.count, d.sum) == (1, 4.0)
    assert d.modes == ((1, 1, 4.0),)
    # Neumann: alpha frozen to exactly 5 at the left endpoint; wavenumbers
    # 0, 1 give -5, -4 (in); wavenumber 2 gives -1 (out, strict)
    fam_n = BranchFamily(LinearCutoffEnvelope(100.0),
                         ExplicitCoefficients((5.0,)), m=1.0)
    n = cell_spectrum_neumann(Cell(0.0, math.pi), fam_n, unit_p, 1.0)
    assert (n.count, n.sum) == (2, 9.0)
    assert n.modes == ((1, 1, 5.0), (2, 1, 4.0))
    report(2, "Dirichlet (1, 4) and Neumann (2, 9) model cells exact")


def test_criterion_3_oracle_correctness(power_family, unit_p):
    """Discrete eigenvalue formula and O(h^2) convergence order."""
    start = time.time()
    p1 = CoefficientP.constant(1.0)
    worst = 0.0
    for n in (16, 32, 64):
        h = math.pi / n
        grid = Grid(x_max=math.pi, n_intervals=n, right_bc=DIRICHLET)
        T = discretize_interval(lambda x: np.full_like(x, 5.0), p1, grid)
        got = eigenvalues_below(T, 1e9)
        k = np.arange(1, n)
        expected = np.sort((2.0 / h**2) * (1.0 - np.cos(k * math.pi * h / math.pi)) - 5.0)
        worst = max(worst, float(np.max(np.abs(got - expected))))
    assert worst < 1e-12

    def lowest_const(n):
        grid = Grid(x_max=math.pi, n_intervals=n, right_bc=DIRICHLET)
        T = discretize_interval(lambda x: np.full_like(x, 5.0), p1, grid)
        return eigenvalues_below(T, -1.0)[0]

    ratio_const = (lowest_const(100) + 4.0) / (lowest_const(200) + 4.0)
    assert 3.0 <= ratio_const <= 5.0

    def lowest_var(n):
        grid = Grid(x_max=30.0, n_intervals=n, right_bc=DIRICHLET)
        T = discretize_interval(
            lambda x: (1.0 + np.asarray(x)) ** -0.5, unit_p, grid)
        return eigenvalues_below(T, 0.0)[0]

    l1, l2, l4 = lowest_var(400), lowest_var(800), lowest_var(1600)
    ratio_var = (l1 - l2) / (l2 - l4)
    assert 3.0 <= ratio_var <= 5.0
    elapsed = time.time() - start
    assert elapsed < 30.0
    report(3, f"discrete formula to {worst:.1e} abs; order ratios "
              f"{ratio_const:.3f}, {ratio_var:.3f} in [3, 5] ({elapsed:.1f}s)")


def test_criterion_4_bracketing_sandwich(grid_results):
    """Ground truth sits inside the bracket at every grid level."""
    start = time.time()
    for eps in EPS_GRID:
        bracket, _, truth = grid_results[eps]
        err = truth.sum_error
        assert bracket.n_lower <= truth.count <= bracket.n_upper, eps
        assert bracket.s_lower - err <= truth.sum <= bracket.s_upper + err, eps
    elapsed = time.time() - start
    report(4, "count and sum sandwiched at eps in {0.4, 0.2, 0.1, 0.05} "
              f"(checks {elapsed:.1f}s after shared runs)")


def test_criterion_5_per_cell_inequalities(power_family, unit_p, grid_results):
    """Per-cell lower and upper estimates hold cell by cell."""
    start = time.time()

    def beta_at(j, eps, delta, x):
        alpha = alpha_eval(power_family, j, x)
        if alpha <= eps:
            return 0.0
        return beta_value(alpha, eps, p_eval(unit_p, x), delta)

    for eps in EPS_GRID:
        bracket, _, _ = grid_results[eps]
        delta = bracket.delta
        points = [i * delta for i in range(bracket.M + 1)]
        active0 = [j for j in range(1, l_epsilon(power_family, eps) + 1)
                   if alpha_eval(power_family, j, 0.0) > eps]
        loss = 3.0 * sum(alpha_eval(power_family, j, 0.0) for j in active0)
        for idx, dspec, nspec in bracket.per_cell:
            x_left, x_right = points[idx - 1], points[idx]
            # lower estimate needs the next partition point
            if idx < bracket.M:
                rhs = 0.0
                for j in range(1, l_epsilon(power_family, eps) + 1):
                    if alpha_eval(power_family, j, x_right) <= eps:
                        break
                    psi_j = psi(power_family, j, eps)
                    hi = min(points[idx + 1], psi_j)
                    if hi > x_right:
                        val, _ = quad(lambda x, jj=j: beta_at(jj, eps, delta, x),
                                      x_right, hi, epsabs=1e-10, limit=200)
                        rhs += val / delta
                assert dspec.sum > rhs - loss - 1e-8, (eps, idx)
            # upper estimate from the frozen left endpoint
            cap = 0.0
            for j in range(1, l_epsilon(power_family, eps) + 1):
                alpha = alpha_eval(power_family, j, x_left)
                if alpha <= eps:
                    break
                cap += alpha + beta_value(alpha, eps, p_eval(unit_p, x_left), delta)
            assert nspec.sum <= cap + 1e-8, (eps, idx)
    elapsed = time.time() - start
    assert elapsed < 60.0
    report(5, f"per-cell lower/upper estimates hold at every cell ({elapsed:.1f}s)")


def test_criterion_6_weyl_ratio_trend(grid_results):
    """|oracle/weyl - 1| shrinks along the grid and ends below 0.2."""
    ratios = []
    for eps in EPS_GRID:
        _, weyl, truth = grid_results[eps]
        ratios.append(abs(truth.sum / weyl.total - 1.0))
    tail = ratios[-3:]
    assert tail[0] >= tail[1] >= tail[2]
    assert ratios[-1] <= 0.2
    report(6, "ratio gaps " + ", ".join(f"{r:.4f}" for r in ratios)
              + " nonincreasing over the last three levels, final <= 0.2")


def test_criterion_7_example33_structural(unit_p):
    """Worked-example runs at desk scale, plus the analytic level inversion."""
    start = time.time()
    family = example33_family(25.0)
    value = psi(family, 1, 0.5)
    assert abs(value - math.exp(math.exp(2.0))) <= 1e-9 * math.exp(math.exp(2.0))
    for eps in (0.9, 0.7, 0.5):
        bracket = assemble_bracket(family, unit_p, eps)
        truth = negative_tail(family, unit_p, eps)
        err = truth.sum_error
        assert bracket.n_lower <= truth.count <= bracket.n_upper, eps
        assert bracket.s_lower - err <= truth.sum <= bracket.s_upper + err, eps
    elapsed = time.time() - start
    assert elapsed < 300.0
    report(7, f"two-piece-envelope sandwich at eps in {{0.9, 0.7, 0.5}} and "
              f"psi_1(0.5) = e^(e^2) to 1e-9 ({elapsed:.1f}s)")


def test_criterion_8_exponent_formulas():
    start = time.time()
    rep = error_exponents(0.5, 0.05)
    assert rep.a_param == 0.1625
    assert rep.t0 == 0.015625
    assert rep.admissible_m_sup == 0.1
    rng = np.random.default_rng(88)
    for _ in range(1000):
        a0 = float(rng.uniform(1e-3, 2.0 / 3.0 - 1e-3))
        m = float(rng.uniform(1e-12, admissible_m_sup(a0) * (1 - 1e-9)))
        out = error_exponents(a0, m)
        assert 0.0 < out.a_param < 1.0
        assert out.t0 > 0.0
    elapsed = time.time() - start
    assert elapsed < 1.0
    report(8, f"(a0=0.5, m=0.05) -> (0.1625, 0.015625) exact; randomized "
              f"sweep admissible ({elapsed:.2f}s)")


def test_criterion_9_partition_recursion():
    start = time.time()
    rng = np.random.default_rng(99)
    done = 0
    while done < 1000:
        psi1 = float(10.0 ** rng.uniform(1.0, 6.0))
        a = float(rng.uniform(0.1, 0.9))
        if psi1 ** a <= 2.0:
            continue
        done += 1
        part = Partition.from_psi1(psi1, a, eps=0.1)
        seq = refine_delta_sequence(part, K=default_refine_depth(a))
        for d_prev, d_next in zip(seq.deltas, seq.deltas[1:]):
            assert d_prev / d_next < 2.0 * psi1 ** a
        assert seq.deltas[-1] <= 1.0
    elapsed = time.time() - start
    assert elapsed < 1.0
    report(9, f"ratio bound and unit-width termination over 1000 draws "
              f"({elapsed:.2f}s)")


def test_criterion_10_determinism(tmp_path):
    """The level-grid CSV is byte-identical for 1 and 4 workers."""
    config = {
        "potential": {
            "envelope": {"kind": "power", "a0": 0.5, "scale": 1.0},
            "coefficients": {"kind": "inverse-square"},
            "p": {"kind": "constant", "value": 1.0},
            "decay_class": {"kind": "power", "a0": 0.5},
            "m": 0.6,
        },
        "run": {"eps_grid": {"start": 0.4, "stop": 0.05, "count": 4}},
        "oracle": {"enabled": True},
    }
    cfg_path = tmp_path / "det.json"
    cfg_path.write_text(json.dumps(config), encoding="utf-8")
    outputs = []
    before = os.environ.get("SPECTRAL_TAIL_THREADS")
    try:
        for threads in ("1", "4"):
            os.environ["SPECTRAL_TAIL_THREADS"] = threads
            out = tmp_path / f"sweep_{threads}.csv"
            assert main(["sweep", "--config", str(cfg_path), "--out", str(out)]) == 0
            outputs.append(out.read_bytes())
    finally:
        if before is None:
            os.environ.pop("SPECTRAL_TAIL_THREADS", None)
        else:
            os.environ["SPECTRAL_TAIL_THREADS"] = before
    assert outputs[0] == outputs[1]
    assert b"ratio_oracle" in outputs[0].splitlines()[0]
    report(10, "grid CSV byte-identical across 1 and 4 worker threads")
