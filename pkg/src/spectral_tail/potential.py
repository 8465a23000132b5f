"""Coefficient p(x) and the branch decomposition of the operator potential.

The potential acts diagonally on a fixed orthonormal basis, so it is fully
described by its eigenvalue branches

    alpha_j(x) = c_j * g(x),       j = 1, 2, ...

with a decreasing envelope ``g`` from a closed catalog and a nonincreasing
coefficient sequence ``c_j`` normalized to ``c_1 = 1``.  A closed catalog
(instead of arbitrary user expressions) keeps monotonicity, positivity and
level-set inversion analytically checkable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "PowerEnvelope",
    "LinearCutoffEnvelope",
    "Example33Envelope",
    "InverseSquareCoefficients",
    "GeometricCoefficients",
    "ExplicitCoefficients",
    "LogDecay",
    "PowerDecay",
    "Unclassified",
    "BranchFamily",
    "CoefficientP",
    "ConditionCheck",
    "ValidationReport",
    "alpha_eval",
    "alpha_values",
    "p_eval",
    "p_values",
    "psi",
    "l_epsilon",
    "iterated_log",
    "validate_family",
]


# --------------------------------------------------------------------------
# envelope catalog
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PowerEnvelope:
    """g(x) = scale * (1 + x)**(-a0), strictly decreasing to 0."""

    a0: float
    scale: float = 1.0

    def __post_init__(self):
        if self.a0 <= 0.0:
            raise ValueError(f"power envelope needs a0 > 0, got {self.a0}")
        if self.scale <= 0.0:
            raise ValueError(f"power envelope needs scale > 0, got {self.scale}")

    @property
    def g0(self) -> float:
        return self.scale

    def value(self, x: float) -> float:
        return self.scale * (1.0 + x) ** (-self.a0)

    def values(self, x: np.ndarray) -> np.ndarray:
        return self.scale * (1.0 + np.asarray(x, dtype=float)) ** (-self.a0)

    def level_position(self, level: float) -> float:
        """Largest x with g(x) >= level, for 0 < level <= g(0)."""
        return (self.scale / level) ** (1.0 / self.a0) - 1.0

    def breakpoints(self) -> tuple[float, ...]:
        return ()

    def sample_end(self) -> float:
        """Far end for validation sample grids: g decayed to 1e-6 * g(0)."""
        return self.level_position(1e-6 * self.g0)

    def q3_check(self) -> tuple[bool, str]:
        probe = self.sample_end()
        gp = self.value(probe)
        ok = gp <= 1e-6 * self.g0 * (1.0 + 1e-9)
        return ok, f"g({probe:.6g}) = {gp:.3e}"


@dataclass(frozen=True)
class LinearCutoffEnvelope:
    """g(x) = max(0, 1 - x / x0): linear ramp hitting 0 at x0."""

    x0: float

    def __post_init__(self):
        if self.x0 <= 0.0:
            raise ValueError(f"linear-cutoff envelope needs x0 > 0, got {self.x0}")

    @property
    def g0(self) -> float:
        return 1.0

    def value(self, x: float) -> float:
        return max(0.0, 1.0 - x / self.x0)

    def values(self, x: np.ndarray) -> np.ndarray:
        return np.maximum(0.0, 1.0 - np.asarray(x, dtype=float) / self.x0)

    def level_position(self, level: float) -> float:
        return self.x0 * (1.0 - level)

    def breakpoints(self) -> tuple[float, ...]:
        return (self.x0,)

    def sample_end(self) -> float:
        return 2.0 * self.x0

    def q3_check(self) -> tuple[bool, str]:
        gp = self.value(2.0 * self.x0)
        return gp == 0.0, f"g({2.0 * self.x0:.6g}) = {gp:.3e} (support ends at {self.x0:.6g})"

    @property
    def support_end(self) -> float:
        return self.x0


_E_CUBED = math.exp(3.0)


@dataclass(frozen=True)
class Example33Envelope:
    """Two-piece envelope: linear on [0, b], then 1 / lnln(x) beyond.

    g(x) = 2/lnln(b) - x/(b lnln(b))  for 0 <= x <= b,
    g(x) = 1/lnln(x)                  for x >= b.

    The pieces agree at x = b.  Requires b > e**3 so that lnln is safely
    positive and the tail stays below the linear piece's starting value.
    """

    b: float

    def __post_init__(self):
        if self.b <= _E_CUBED:
            raise ValueError(
                f"example33 envelope needs b > e^3 ~= {_E_CUBED:.4f}, got {self.b}"
            )

    @property
    def _lnln_b(self) -> float:
        return math.log(math.log(self.b))

    @property
    def g0(self) -> float:
        return 2.0 / self._lnln_b

    def value(self, x: float) -> float:
        if x <= self.b:
            return 2.0 / self._lnln_b - x / (self.b * self._lnln_b)
        return 1.0 / math.log(math.log(x))

    def values(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        lb = self._lnln_b
        out = 2.0 / lb - x / (self.b * lb)
        tail = x > self.b
        if np.any(tail):
            out = np.where(tail, 1.0 / np.log(np.log(np.maximum(x, self.b))), out)
        return out

    def level_position(self, level: float) -> float:
        lb = self._lnln_b
        if level >= 1.0 / lb:
            # crossing on the linear piece
            return self.b * (2.0 - level * lb)
        # tail piece: 1/lnln(x) = level
        return math.exp(math.exp(1.0 / level))

    def breakpoints(self) -> tuple[float, ...]:
        return (self.b,)

    def sample_end(self) -> float:
        # 1/lnln decays too slowly for a small relative target to stay
        # representable; sample out to where g has dropped to ~0.2
        return self.level_position(max(0.2, 0.1 * self.g0))

    def q3_check(self) -> tuple[bool, str]:
        # no representable double brings 1/lnln(x) near 0; verify strict
        # decrease at the largest probe instead (the analytic limit is 0)
        x_big = 1e300
        ok = self.value(x_big) < self.value(x_big * 1e-50) < self.value(self.b)
        return ok, (
            f"tail decreasing; g(1e300) = {self.value(x_big):.4f}, "
            "analytic limit 0"
        )


Envelope = PowerEnvelope | LinearCutoffEnvelope | Example33Envelope


# --------------------------------------------------------------------------
# branch coefficient catalog
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class InverseSquareCoefficients:
    """c_j = j**-2.  sum_j c_j**m converges iff m > 1/2."""

    def value(self, j: int) -> float:
        return float(j) ** -2

    count = None

    def summable(self, m: float) -> bool:
        return m > 0.5


@dataclass(frozen=True)
class GeometricCoefficients:
    """c_j = ratio**(j-1) with ratio in (0, 1); summable for every m > 0."""

    ratio: float

    def __post_init__(self):
        if not 0.0 < self.ratio < 1.0:
            raise ValueError(f"geometric ratio must lie in (0, 1), got {self.ratio}")

    def value(self, j: int) -> float:
        return self.ratio ** (j - 1)

    count = None

    def summable(self, m: float) -> bool:
        return m > 0.0


@dataclass(frozen=True)
class ExplicitCoefficients:
    """Finite coefficient list; branches beyond the list are zero.

    Ordering (nonincreasing) is deliberately not enforced here so that
    validation can detect and report a badly ordered sequence instead of
    refusing to construct it.
    """

    values_seq: tuple[float, ...]

    def __post_init__(self):
        if len(self.values_seq) == 0:
            raise ValueError("explicit coefficient list must be nonempty")
        if any(v < 0.0 for v in self.values_seq):
            raise ValueError("explicit coefficients must be nonnegative")

    def value(self, j: int) -> float:
        if j > len(self.values_seq):
            return 0.0
        return self.values_seq[j - 1]

    @property
    def count(self) -> int:
        return len(self.values_seq)

    def summable(self, m: float) -> bool:
        return m > 0.0  # finite sum


Coefficients = InverseSquareCoefficients | GeometricCoefficients | ExplicitCoefficients


# --------------------------------------------------------------------------
# decay classes
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class LogDecay:
    """Envelope stays above (lnln...ln x)**(-xi) with n iterated logs."""

    xi: float
    n: int

    def __post_init__(self):
        if self.xi <= 0.0:
            raise ValueError(f"LogDecay needs xi > 0, got {self.xi}")
        if self.n < 1:
            raise ValueError(f"LogDecay needs n >= 1, got {self.n}")


@dataclass(frozen=True)
class PowerDecay:
    """Envelope decays like x**(-a0) with a0 strictly inside (0, 2/3)."""

    a0: float

    def __post_init__(self):
        if not 0.0 < self.a0 < 2.0 / 3.0:
            raise ValueError(f"PowerDecay needs a0 in (0, 2/3), got {self.a0}")


@dataclass(frozen=True)
class Unclassified:
    """No decay-class claim; asymptotic-regime checks are skipped."""


DecayClass = LogDecay | PowerDecay | Unclassified


# --------------------------------------------------------------------------
# branch family
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class BranchFamily:
    """Branch eigenvalues alpha_j(x) = c_j * g(x) of the potential.

    ``m`` is the declared summability exponent: sum_j alpha_j(0)**m must
    converge, which is checked analytically per coefficient catalog at
    construction time (inverse-square needs m > 1/2, geometric and explicit
    any m > 0).
    """

    envelope: Envelope
    coefficients: Coefficients
    decay_class: DecayClass = field(default_factory=Unclassified)
    m: float = 1.0

    def __post_init__(self):
        if self.m <= 0.0:
            raise ValueError(f"summability exponent m must be positive, got {self.m}")
        if not self.coefficients.summable(self.m):
            raise ValueError(
                f"sum of alpha_j(0)^m diverges for {type(self.coefficients).__name__} "
                f"at m = {self.m}"
            )

    @property
    def separable(self) -> bool:
        """The eigenbasis is x-independent for every catalog family, so the
        operator decouples into scalar problems, one per branch."""
        return True

    def alpha1_at_zero(self) -> float:
        return self.coefficients.value(1) * self.envelope.g0


# --------------------------------------------------------------------------
# coefficient p(x)
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CoefficientP:
    """Scalar coefficient p with positive bounds c1 <= p(x) <= c2.

    Either constant or piecewise linear through knots starting at x = 0;
    beyond the last knot the value is clamped constant, which preserves the
    bounds and (for nondecreasing knot values) monotonicity without
    requiring infinite data.  Knot values only need to be positive here:
    monotonicity is a validation check, not a construction constraint.
    """

    knots_x: tuple[float, ...]
    knots_v: tuple[float, ...]

    def __post_init__(self):
        if len(self.knots_x) != len(self.knots_v) or len(self.knots_x) == 0:
            raise ValueError("p needs matching, nonempty knot coordinate/value lists")
        if self.knots_x[0] != 0.0:
            raise ValueError("p knots must start at x = 0")
        if any(b <= a for a, b in zip(self.knots_x, self.knots_x[1:])):
            raise ValueError("p knot positions must be strictly increasing")
        if any(v <= 0.0 for v in self.knots_v):
            raise ValueError("p must be strictly positive")

    @classmethod
    def constant(cls, c: float) -> "CoefficientP":
        return cls((0.0,), (float(c),))

    @classmethod
    def piecewise_linear(cls, knots) -> "CoefficientP":
        xs, vs = zip(*((float(x), float(v)) for x, v in knots))
        return cls(tuple(xs), tuple(vs))

    @property
    def is_constant(self) -> bool:
        return len(self.knots_v) == 1 or min(self.knots_v) == max(self.knots_v)

    @property
    def c1(self) -> float:
        return min(self.knots_v)

    @property
    def c2(self) -> float:
        return max(self.knots_v)

    @property
    def max_slope(self) -> float:
        if len(self.knots_x) < 2:
            return 0.0
        return max(
            abs(v1 - v0) / (x1 - x0)
            for (x0, v0), (x1, v1) in zip(
                zip(self.knots_x, self.knots_v),
                zip(self.knots_x[1:], self.knots_v[1:]),
            )
        )

    @property
    def nondecreasing(self) -> bool:
        return all(b >= a for a, b in zip(self.knots_v, self.knots_v[1:]))


# --------------------------------------------------------------------------
# operations
# --------------------------------------------------------------------------

def alpha_eval(family: BranchFamily, j: int, x: float) -> float:
    """Branch eigenvalue alpha_j(x) = c_j * g(x)."""
    if j < 1:
        raise ValueError(f"branch index must be >= 1, got {j}")
    if x < 0.0:
        raise ValueError(f"position must be >= 0, got {x}")
    c = family.coefficients.value(j)
    if c == 0.0:
        return 0.0
    return c * family.envelope.value(x)


def alpha_values(family: BranchFamily, j: int, x: np.ndarray) -> np.ndarray:
    """Vectorized alpha_eval over an array of positions."""
    if j < 1:
        raise ValueError(f"branch index must be >= 1, got {j}")
    x = np.asarray(x, dtype=float)
    if x.size and float(x.min()) < 0.0:
        raise ValueError("positions must be >= 0")
    c = family.coefficients.value(j)
    if c == 0.0:
        return np.zeros_like(x)
    return c * family.envelope.values(x)


def p_eval(p: CoefficientP, x: float) -> float:
    """p(x); linear between knots, clamped constant beyond the last knot."""
    if x < 0.0:
        raise ValueError(f"position must be >= 0, got {x}")
    return float(np.interp(x, p.knots_x, p.knots_v))


def p_values(p: CoefficientP, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.size and float(x.min()) < 0.0:
        raise ValueError("positions must be >= 0")
    return np.interp(x, p.knots_x, p.knots_v)


def psi(family: BranchFamily, j: int, eps: float) -> float | None:
    """Level-set supremum sup{x >= 0 : alpha_j(x) >= eps}.

    Returns None when the level set is empty (alpha_j(0) < eps), so callers
    must skip the branch rather than treat it as reaching to 0.
    """
    if eps <= 0.0:
        raise ValueError(f"eps must be positive, got {eps}")
    if j < 1:
        raise ValueError(f"branch index must be >= 1, got {j}")
    c = family.coefficients.value(j)
    if c == 0.0:
        return None
    g0 = family.envelope.g0
    level = eps / c
    if level > g0:
        return None
    if level == g0:
        return 0.0
    return float(family.envelope.level_position(level))


def l_epsilon(family: BranchFamily, eps: float) -> int:
    """Number of branches active at level eps: #{j : alpha_j(0) >= eps}.

    Finite because c_j -> 0 (enforced by the coefficient catalog).
    """
    if eps <= 0.0:
        raise ValueError(f"eps must be positive, got {eps}")
    g0 = family.envelope.g0
    count = 0
    j = 1
    while True:
        c = family.coefficients.value(j)
        if c * g0 < eps or c == 0.0:
            break
        count += 1
        j += 1
    return count


def iterated_log(n: int, x: float) -> float:
    """n-fold iterated logarithm: ln_0(x) = x, ln_n(x) = ln(ln_{n-1}(x))."""
    if n < 0:
        raise ValueError(f"iteration depth must be >= 0, got {n}")
    v = float(x)
    for k in range(n):
        if v <= 0.0:
            raise ValueError(
                f"iterated log undefined: ln_{k}({x}) = {v} is not positive"
            )
        v = math.log(v)
    return v


# --------------------------------------------------------------------------
# hypothesis validation
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ConditionCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[ConditionCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            tag = "PASS" if c.passed else "FAIL"
            out.append(f"{tag} {c.name}: {c.detail}" if c.detail else f"{tag} {c.name}")
        return out


def _sample_grid(x_end: float, sample_count: int) -> np.ndarray:
    # linear plus logarithmic spacing; deterministic
    half = max(2, sample_count // 2)
    lin = np.linspace(0.0, x_end, half)
    logx = np.geomspace(max(x_end * 1e-6, 1e-9), x_end, sample_count - half)
    return np.unique(np.concatenate([lin, logx]))


def _iter_exp_tower(n: int) -> float:
    # smallest x with ln_n(x) > 0 is exp applied n-1 times to 1
    v = 1.0
    for _ in range(n - 1):
        v = math.exp(v)
    return v


def validate_family(
    family: BranchFamily, p: CoefficientP, sample_count: int = 64
) -> ValidationReport:
    """Check the structural hypotheses on a deterministic sample grid.

    Failures become report entries, never exceptions, so constructed
    counterexamples (reversed coefficient lists, decreasing p knots) can be
    inspected rather than rejected.
    """
    if sample_count < 2:
        raise ValueError(f"sample_count must be >= 2, got {sample_count}")

    checks: list[ConditionCheck] = []
    env = family.envelope
    x_end = max(env.sample_end(), 1.0)
    grid = _sample_grid(min(x_end, 1e9), sample_count)

    j_max = family.coefficients.count or 8
    j_max = min(j_max, 8)

    # Q1: positivity of every branch where the envelope is positive
    ok = True
    for j in range(1, j_max + 1):
        vals = alpha_values(family, j, grid)
        if np.any(vals < 0.0):
            ok = False
        if family.coefficients.value(j) > 0.0 and np.any(
            (env.values(grid) > 0.0) & (vals <= 0.0)
        ):
            ok = False
    checks.append(ConditionCheck("Q1 branch positivity", ok))

    # Q2: each branch nonincreasing in x
    ok = True
    for j in range(1, j_max + 1):
        vals = alpha_values(family, j, grid)
        if np.any(np.diff(vals) > 1e-15 * max(1.0, float(vals[0]))):
            ok = False
    checks.append(ConditionCheck("Q2 monotone decrease in x", ok))

    # Q3: envelope vanishes at infinity; the probe point and tolerance are
    # the catalog entry's own, since decay speeds differ wildly
    ok, detail = env.q3_check()
    checks.append(ConditionCheck("Q3 vanishing at infinity", ok, detail))

    # branch ordering alpha_1 >= alpha_2 >= ... at every sample
    ok = True
    for j in range(1, j_max):
        a_lo = alpha_values(family, j + 1, grid)
        a_hi = alpha_values(family, j, grid)
        if np.any(a_lo > a_hi * (1.0 + 1e-15)):
            ok = False
    checks.append(ConditionCheck("branch ordering in j", ok))

    # normalization c_1 = 1 so that the first branch equals the envelope
    c1 = family.coefficients.value(1)
    checks.append(
        ConditionCheck("alpha_1 equals envelope (c_1 = 1)", c1 == 1.0, f"c_1 = {c1}")
    )

    # p1: positive two-sided bounds
    pvals = p_values(p, grid)
    ok = bool(np.all(pvals > 0.0) and np.all(pvals >= p.c1 - 1e-15) and np.all(pvals <= p.c2 + 1e-15))
    checks.append(
        ConditionCheck("p1 bounds", ok, f"c1 = {p.c1:.6g}, c2 = {p.c2:.6g}")
    )

    # p2: bounded slope (piecewise-linear form makes it finite by design)
    checks.append(
        ConditionCheck("p2 bounded derivative", math.isfinite(p.max_slope),
                       f"max |p'| = {p.max_slope:.6g}")
    )

    # p3: nondecreasing
    ok = p.nondecreasing and bool(np.all(np.diff(pvals) >= -1e-15 * p.c2))
    checks.append(ConditionCheck("p3 nondecreasing", ok))

    # decay-class specific checks
    dc = family.decay_class
    if isinstance(dc, LogDecay):
        x_lo = max(_iter_exp_tower(dc.n) * 1.5, *env.breakpoints(), 2.0)
        xs = np.geomspace(x_lo, max(x_end, x_lo * 10.0), sample_count)
        floor_vals = np.array([iterated_log(dc.n, float(x)) ** (-dc.xi) for x in xs])
        a1 = alpha_values(family, 1, xs)
        ok = bool(np.all(a1 >= floor_vals * (1.0 - 1e-12)))
        checks.append(
            ConditionCheck(
                "alpha1 log-decay floor",
                ok,
                f"alpha_1(x) >= (ln_{dc.n} x)^(-{dc.xi}) sampled on [{x_lo:.3g}, {xs[-1]:.3g}]",
            )
        )
    elif isinstance(dc, PowerDecay):
        eta = dc.a0 / 2.0
        x1, x2 = max(x_end, 10.0), max(x_end, 10.0) * 100.0
        a1, a2 = alpha_eval(family, 1, x1), alpha_eval(family, 1, x2)
        if a1 <= 0.0 or a2 <= 0.0:
            # compactly supported envelope: the upper window blows up
            checks.append(
                ConditionCheck(
                    "alpha1 power-decay window", False,
                    f"alpha_1 vanishes at x = {x2:.3g}; not a power tail",
                )
            )
        else:
            low1, low2 = a1 * x1 ** (dc.a0 - eta), a2 * x2 ** (dc.a0 - eta)
            up1, up2 = 1.0 / (a1 * x1 ** (dc.a0 + eta)), 1.0 / (a2 * x2 ** (dc.a0 + eta))
            ok = low2 < low1 and up2 < up1
            checks.append(
                ConditionCheck(
                    "alpha1 power-decay window",
                    ok,
                    f"a0 = {dc.a0} in (0, 2/3); both scaled tails decreasing",
                )
            )

    # summability of the declared exponent (analytic per catalog)
    checks.append(
        ConditionCheck(
            "summability exponent",
            family.coefficients.summable(family.m),
            f"m = {family.m}",
        )
    )

    return ValidationReport(tuple(checks))
