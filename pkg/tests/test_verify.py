"""Tests for the oracles, manufactured solutions and convergence studies."""

from __future__ import annotations

import math

import numpy as np
import pytest
from scipy.special import gamma

from fracthermistor.exceptions import (
    BoundaryViolationError,
    ConfigurationError,
    ContractViolationError,
    StudyError,
)
from fracthermistor.models import PicardSettings, ProblemConfig, Profile
from fracthermistor.presets import get_manufactured
from fracthermistor.spectral_basis import error_norms, synthesize
from fracthermistor.stepper import run
from fracthermistor.verify import (
    TRUNCATION_DELTAS,
    backward_euler_reference,
    caputo_oracle,
    caputo_truncation_study,
    check_caputo,
    check_hypotheses,
    check_matrices,
    fit_order,
    lagged_vs_picard,
    manufactured_config,
    manufactured_residual,
    manufactured_source,
    relative_l2_gap,
    run_studies_parallel,
    spatial_study,
    stability_sweep,
    study_point,
    temporal_order_study,
)


class TestCaputoOracle:
    """Tests for caputo_oracle."""

    @pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7])
    @pytest.mark.parametrize("power", [1, 2, 3])
    def test_monomials(self, alpha: float, power: int) -> None:
        """Test t^p against Gamma(p + 1) / Gamma(p + 1 - alpha) t^(p - alpha)."""
        t = 0.8
        exact = gamma(power + 1.0) / gamma(power + 1.0 - alpha) * t ** (power - alpha)
        value = caputo_oracle(lambda s: power * s ** (power - 1), alpha, t)
        assert value == pytest.approx(exact, rel=1e-10)

    def test_quadratic_at_one(self) -> None:
        """Test the Caputo derivative of t^2 of order 1/2 at t = 1."""
        assert caputo_oracle(lambda s: 2.0 * s, 0.5, 1.0) == pytest.approx(1.5045055561, abs=1e-10)

    def test_constant_is_zero(self) -> None:
        """Test that a constant function has zero derivative."""
        assert caputo_oracle(lambda s: 0.0, 0.5, 1.0) == 0.0

    def test_exponential(self) -> None:
        """Test e^t against its Mittag-Leffler series."""
        alpha, t = 0.4, 1.0
        exact = sum(t ** (p - alpha) / gamma(p + 1.0 - alpha) for p in range(1, 40))
        assert caputo_oracle(np.exp, alpha, t) == pytest.approx(exact, rel=1e-10)

    def test_rejects_nonpositive_time(self) -> None:
        """Test that t <= 0 is rejected."""
        with pytest.raises(ContractViolationError):
            caputo_oracle(np.exp, 0.5, 0.0)

    def test_rejects_order(self) -> None:
        """Test that alpha outside (0, 1) is rejected."""
        with pytest.raises(ContractViolationError):
            caputo_oracle(np.exp, 1.0, 1.0)


class TestFitOrder:
    """Tests for fit_order."""

    def test_exact_power_law(self) -> None:
        """Test a quadratic power law."""
        assert fit_order([0.1, 0.05, 0.025], [0.01, 0.0025, 0.000625]) == pytest.approx(2.0)

    def test_semilog(self) -> None:
        """Test an exponential decay e^(-0.7 N)."""
        degrees = [4.0, 8.0, 12.0, 16.0]
        errors = [math.exp(-0.7 * n) for n in degrees]
        assert fit_order(degrees, errors, mode="semilog") == pytest.approx(-0.7)

    def test_noisy_data(self) -> None:
        """Test that multiplicative noise of 1% barely moves the slope."""
        rng = np.random.default_rng(11)
        deltas = 2.0 ** -np.arange(3, 9)
        errors = 3.0 * deltas**1.5 * (1.0 + 0.01 * rng.standard_normal(deltas.size))
        assert fit_order(deltas, errors) == pytest.approx(1.5, abs=0.02)

    def test_too_few_points(self) -> None:
        """Test that two points are not enough."""
        with pytest.raises(ContractViolationError):
            fit_order([0.1, 0.05], [1.0, 0.5])

    def test_nonpositive_errors(self) -> None:
        """Test that zero errors are rejected."""
        with pytest.raises(ContractViolationError):
            fit_order([0.1, 0.05, 0.025], [1.0, 0.0, 0.5])

    def test_constant_axis(self) -> None:
        """Test that an axis without spread is rejected."""
        with pytest.raises(ContractViolationError):
            fit_order([0.1, 0.1, 0.1], [1.0, 0.5, 0.25])


class TestManufactured:
    """Tests for manufactured sources and configurations."""

    def test_linear_source(self) -> None:
        """Test g = d^alpha t * sin(pi x) + pi^2 t sin(pi x) for lambda = 0."""
        config = ProblemConfig(alpha=0.5, lam=0.0, T=1.0, K=4, N=8)
        source = manufactured_source("1pt_sinpi", config)
        x = np.array([-0.5, 0.25, 0.5])
        t = 0.5
        caputo = t**0.5 / gamma(1.5)
        expected = caputo * np.sin(np.pi * x) + np.pi**2 * (1.0 + t) * np.sin(np.pi * x)
        np.testing.assert_allclose(source(x, t), expected, rtol=1e-13, atol=1e-14)

    def test_steady_constant_conductivity(self) -> None:
        """Test g = pi^2 sin(pi x) - lambda / 4 for u = sin(pi x) and f = 1."""
        config = ProblemConfig(alpha=0.5, lam=2.0, T=1.0, K=4, N=8)
        source = manufactured_source("one_sinpi", config)
        x = np.linspace(-1.0, 1.0, 9)
        expected = np.pi**2 * np.sin(np.pi * x) - 2.0 / 4.0
        np.testing.assert_allclose(source(x, 0.7), expected, atol=1e-13)
        assert source.name == "one_sinpi"

    @pytest.mark.parametrize("name", ["t2_sinpi", "1pt2_bump", "t3_sinpi"])
    def test_weak_residual(self, name: str) -> None:
        """Test that the exact solution satisfies the weak form."""
        config = ProblemConfig(
            alpha=0.6, lam=0.5, T=1.0, K=4, N=8, conductivity="shifted_sine"
        )
        for t in (0.1, 0.5, 1.0):
            assert manufactured_residual(name, config, t) < 1e-9

    def test_config_replaces_initial_datum(self) -> None:
        """Test that manufactured configs start from the solution at t = 0."""
        base = ProblemConfig(alpha=0.5, lam=0.0, T=1.0, K=4, N=8)
        config = manufactured_config(base, "1pt2_sinpi")
        assert config.source is not None
        assert config.source.name == "1pt2_sinpi"
        assert config.u0.name == "1pt2_sinpi@0.0"
        x = np.linspace(-1.0, 1.0, 5)
        np.testing.assert_allclose(config.u0(x), np.sin(np.pi * x), atol=1e-15)
        assert config.model_dump()["u0"] == "1pt2_sinpi@0.0"

    def test_config_requires_alpha0_factor(self) -> None:
        """Test that lambda > 0 without the alpha0 factor is rejected."""
        base = ProblemConfig(
            alpha=0.5, lam=0.5, T=1.0, K=4, N=8, nonlocal_alpha0_factor=False
        )
        with pytest.raises(ConfigurationError) as exc_info:
            manufactured_config(base, "t2_sinpi")
        assert exc_info.value.key == "nonlocal_alpha0_factor"

    def test_rejects_boundary_values(self) -> None:
        """Test that a solution not vanishing at +-1 is rejected."""
        base = ProblemConfig(alpha=0.5, lam=0.0, T=1.0, K=4, N=8)
        with pytest.raises(BoundaryViolationError):
            manufactured_config(base, "t2_const")

    def test_unknown_solution(self) -> None:
        """Test that an unknown name is a configuration error."""
        base = ProblemConfig(alpha=0.5, lam=0.0, T=1.0, K=4, N=8)
        with pytest.raises(ConfigurationError) as exc_info:
            manufactured_config(base, "t9_sinpi")
        assert exc_info.value.key == "source"

    def test_steady_solution_is_reproduced(self) -> None:
        """Test that the scheme keeps u = sin(pi x) up to projection error."""
        base = ProblemConfig(
            alpha=0.5, lam=0.5, T=1.0, K=5, N=24, conductivity="sat_quadratic"
        )
        config = manufactured_config(base, "one_sinpi")
        record = run(config)
        exact = get_manufactured("one_sinpi").at(1.0)
        x = np.linspace(-1.0, 1.0, 11)
        np.testing.assert_allclose(synthesize(record.final, x), exact(x), atol=1e-10)


class TestStudyPoints:
    """Tests for study points and their parallel fan-out."""

    def test_study_point(self) -> None:
        """Test that one study point reports positive errors and its scale."""
        base = ProblemConfig(alpha=0.5, lam=0.0, T=1.0, K=8, N=16)
        point = study_point(base.model_dump(exclude={"source"}), "t2_sinpi", "delta", 0.25)
        assert point.axis_value == 0.25
        assert point.error_h1 > 0.0
        assert point.error_l2 <= point.error_h1_standard
        assert point.alpha0 == pytest.approx(gamma(1.5) * 0.25**0.5)

    def test_parallel_matches_serial(self) -> None:
        """Test that two workers return the serial results in axis order."""
        base = ProblemConfig(alpha=0.5, lam=0.5, T=1.0, K=8, N=12, conductivity="shifted_sine")
        values = [0.25, 0.125, 0.0625]
        serial = run_studies_parallel(base, "t2_sinpi", "delta", values, jobs=1)
        parallel = run_studies_parallel(base, "t2_sinpi", "delta", values, jobs=2)
        assert [p.axis_value for p in parallel] == values
        for a, b in zip(serial, parallel):
            assert a.error_h1 == b.error_h1

    def test_failing_point_is_wrapped(self) -> None:
        """Test that a failing point raises a study error naming its value."""
        base = ProblemConfig(
            alpha=0.5,
            lam=0.5,
            T=1.0,
            K=8,
            N=12,
            conductivity="shifted_sine",
            picard=PicardSettings(tol=1e-300, max_iter=1),
        )
        with pytest.raises(StudyError) as exc_info:
            run_studies_parallel(base, "t2_sinpi", "delta", [0.25, 0.125, 0.0625])
        assert exc_info.value.axis_value == 0.25
        assert exc_info.value.exit_code == 5

    def test_custom_initial_profile_in_base(self) -> None:
        """Test that a base u0 outside the presets does not break the study points."""
        base = ProblemConfig(
            alpha=0.5,
            lam=0.0,
            T=1.0,
            K=8,
            N=16,
            u0=Profile(name="custom", value=lambda x: (1.0 - x**2) * np.exp(x)),
        )
        study = temporal_order_study(base, "t2_sinpi", [0.25, 0.125, 0.0625])
        reference = temporal_order_study(
            ProblemConfig(alpha=0.5, lam=0.0, T=1.0, K=8, N=16), "t2_sinpi", [0.25, 0.125, 0.0625]
        )
        assert study.errors_h1 == reference.errors_h1

    def test_spatial_study_rejects_boundary_values(self) -> None:
        """Test that a solution constant in x fails before any point runs."""
        base = ProblemConfig(alpha=0.5, lam=0.0, T=0.1, K=10, N=4)
        with pytest.raises(BoundaryViolationError) as exc_info:
            spatial_study(base, "t2_const", [4, 6, 8])
        assert exc_info.value.exit_code == 3

    def test_temporal_study_rejects_boundary_values(self) -> None:
        """Test the same precondition on the time axis."""
        base = ProblemConfig(alpha=0.5, lam=0.0, T=1.0, K=8, N=8)
        with pytest.raises(BoundaryViolationError):
            temporal_order_study(base, "t2_const", [0.25, 0.125, 0.0625])


class TestCheckSuites:
    """Tests for the check suites behind the command line."""

    def test_caputo(self) -> None:
        """Test that the truncation suite passes for alpha = 0.5."""
        results = check_caputo(0.5)
        assert len(results) == 3
        assert all(result.passed for result in results)
        assert 1.4 <= results[0].value <= 1.6

    def test_hypotheses(self) -> None:
        """Test that const_one passes."""
        (result,) = check_hypotheses(["const_one"])
        assert result.passed

    def test_matrices(self) -> None:
        """Test the closed-form matrices for N = 8."""
        results = check_matrices(8)
        assert [r.passed for r in results] == [True, True]
        assert max(r.value for r in results) < 1e-12


@pytest.mark.slow
class TestAcceptance:
    """Convergence and stability studies of the full scheme."""

    @pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7])
    def test_truncation_order(self, alpha: float) -> None:
        """Test the L1 truncation order 2 - alpha on t^3 and e^t."""
        cubic = caputo_truncation_study(
            lambda t: t**3, lambda t: 3.0 * t**2, alpha, TRUNCATION_DELTAS
        )
        exponential = caputo_truncation_study(np.exp, np.exp, alpha, TRUNCATION_DELTAS)
        assert cubic.fitted_order == pytest.approx(2.0 - alpha, abs=0.1)
        assert exponential.fitted_order == pytest.approx(2.0 - alpha, abs=0.1)

    @pytest.mark.parametrize("lam", [0.0, 0.5])
    @pytest.mark.parametrize("alpha", [0.3, 0.5, 0.8])
    def test_temporal_order(self, alpha: float, lam: float) -> None:
        """Test the temporal order 2 - alpha of the full scheme."""
        base = ProblemConfig(alpha=alpha, lam=lam, T=1.0, K=8, N=32, conductivity="shifted_sine")
        deltas = [2.0**-p for p in range(3, 7)]
        study = temporal_order_study(base, "t2_sinpi", deltas, jobs=2)
        assert study.fitted_order == pytest.approx(2.0 - alpha, abs=0.15)
        assert study.picard_max_iters <= 25
        assert study.errors_h1 == sorted(study.errors_h1, reverse=True)
        assert study.norm_weight is not None
        if lam == 0.0 and alpha == 0.5:
            assert 2.4 <= study.errors_h1[-2] / study.errors_h1[-1] <= 3.3

    def test_integer_order_limit(self) -> None:
        """Test first order at alpha = 0.999 and agreement with backward Euler."""
        base = ProblemConfig(alpha=0.999, lam=0.5, T=1.0, K=8, N=24, conductivity="shifted_sine")
        deltas = [2.0**-p for p in range(3, 7)]
        study = temporal_order_study(base, "t2_sinpi", deltas)
        assert study.fitted_order == pytest.approx(1.0, abs=0.15)

        config = ProblemConfig(
            alpha=0.999, lam=0.5, T=1.0, K=64, N=24, conductivity="shifted_sine", u0="sinpi"
        )
        assert relative_l2_gap(run(config), backward_euler_reference(config)) < 0.02

    def test_spatial_convergence(self) -> None:
        """Test spectral convergence in N down to the temporal floor."""
        base = ProblemConfig(alpha=0.5, lam=0.5, T=0.1, K=100, N=4, conductivity="shifted_sine")
        degrees = [4, 6, 8, 10, 12, 16, 20]
        study = spatial_study(base, "1pt_sinpi", degrees)
        assert study.errors_h1[-1] < 1e-8
        assert study.fitted_order < 0.0
        assert study.temporal_floor is not None
        assert study.temporal_floor < 1e-10
        head = study.errors_h1[:4]
        assert all(later < 0.1 * earlier for earlier, later in zip(head, head[1:]))

    @pytest.mark.parametrize("alpha", [0.3, 0.7])
    def test_stability(self, alpha: float) -> None:
        """Test non-expansion over 100 random initial vectors."""
        assert stability_sweep(alpha, K=200, N=16, samples=100, seed=0) <= 1e-12

    def test_lagged_linearization_is_first_order(self) -> None:
        """Test that the lagged variant differs from Picard by O(delta)."""
        base = ProblemConfig(
            alpha=0.5, lam=1.0, T=1.0, K=8, N=16, conductivity="shifted_sine", u0="phi0"
        )
        study = lagged_vs_picard(base, [2.0**-p for p in range(3, 7)])
        assert study.fitted_order >= 0.8

    def test_backward_euler_is_first_order(self) -> None:
        """Test backward Euler against the exact decay e^(-pi^2 t) sin(pi x)."""
        T = 0.5  # noqa: N806
        deltas = [T / K for K in (20, 40, 80, 160)]
        errors = []
        for delta in deltas:
            config = ProblemConfig(alpha=0.5, lam=0.0, T=T, K=round(T / delta), N=16)
            record = backward_euler_reference(config)
            decay = math.exp(-(math.pi**2) * T)
            errors.append(
                error_norms(
                    record.final,
                    lambda x: decay * np.sin(np.pi * x),
                    lambda x: decay * np.pi * np.cos(np.pi * x),
                    record.alpha0,
                )[1]
            )
        assert fit_order(deltas, errors) == pytest.approx(1.0, abs=0.1)
        assert errors[-2] / errors[-1] == pytest.approx(2.0, abs=0.15)
