import pytest

from spectral_tail import (
    BranchFamily,
    CoefficientP,
    Example33Envelope,
    ExplicitCoefficients,
    InverseSquareCoefficients,
    LinearCutoffEnvelope,
    LogDecay,
    PowerDecay,
    PowerEnvelope,
)


@pytest.fixture(scope="session")
def unit_p():
    return CoefficientP.constant(1.0)


@pytest.fixture(scope="session")
def power_family():
    """alpha_j(x) = j^-2 (1+x)^(-1/2): the power-decay reference family."""
    return BranchFamily(
        envelope=PowerEnvelope(a0=0.5, scale=1.0),
        coefficients=InverseSquareCoefficients(),
        decay_class=PowerDecay(a0=0.5),
        m=0.6,
    )


@pytest.fixture(scope="session")
def example33_family():
    """Branches alpha(x) / j^2 with the two-piece envelope at b = 25."""
    return BranchFamily(
        envelope=Example33Envelope(b=25.0),
        coefficients=InverseSquareCoefficients(),
        decay_class=LogDecay(xi=1.0, n=2),
        m=0.6,
    )


@pytest.fixture(scope="session")
def single_cutoff_family():
    """One branch 1 - x/24, vanishing beyond x = 24."""
    return BranchFamily(
        envelope=LinearCutoffEnvelope(x0=24.0),
        coefficients=ExplicitCoefficients((1.0,)),
        m=1.0,
    )
