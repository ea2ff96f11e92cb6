import math

import numpy as np
import pytest
from pydantic import ValidationError

from diracwalk.domain import (
    DispersionParams,
    LatticeConfig,
    MomentumVector,
    Observable,
    SearchParams,
    Source,
)
from diracwalk.models import (
    AlgebraReport,
    CriticalPoint,
    EigenSolution,
    ScalingRow,
    Tuning,
    ValidationCheck,
    ValidationReport,
)
from diracwalk.services.clifford_service import build_full_rep
from diracwalk.utils.error_handling import ConfigurationError


@pytest.mark.unit
class TestValueObjects:
    """값 객체 검증 테스트"""

    def test_dispersion_ratio(self):
        assert DispersionParams(0.6, 0.3).ratio == pytest.approx(2.0)
        assert DispersionParams(0.6, 0.0).ratio == math.inf

    def test_dispersion_scaled(self):
        scaled = DispersionParams(0.6, 0.3).scaled(2.0)
        assert (scaled.omega, scaled.gamma) == (1.2, 0.6)

    @pytest.mark.parametrize(
        "omega,gamma", [(0.0, 0.0), (-0.1, 0.5), (0.5, -1.0), (math.nan, 0.5), (0.5, math.inf)]
    )
    def test_dispersion_rejects(self, omega, gamma):
        """음수, 비유한, 둘 다 0 은 거부"""
        with pytest.raises(ConfigurationError):
            DispersionParams(omega, gamma)

    def test_momentum_vector(self):
        vector = MomentumVector((1, 0, -2), 8)
        assert vector.k == pytest.approx((math.pi / 4, 0.0, -math.pi / 2))
        assert not vector.is_zero()
        assert MomentumVector((0, 0), 5).is_zero()

    def test_observable_needs_dynamics(self):
        assert Observable.T_STAR.needs_dynamics()
        assert not Observable.T_PRED.needs_dynamics()
        assert not Observable.AMPLITUDE_INV_SQ.needs_dynamics()


@pytest.mark.unit
class TestEntities:
    """도메인 엔티티 테스트"""

    def test_lattice_sites(self):
        cfg = LatticeConfig(3, 4)
        assert cfg.n_sites == 64
        assert cfg.shape == (4, 4, 4)

    @pytest.mark.parametrize("d,side", [(0, 4), (7, 2), (2, 1)])
    def test_lattice_rejects(self, d, side):
        with pytest.raises(ConfigurationError):
            LatticeConfig(d, side)

    def test_search_params_copies(self, small_search_params):
        """표시 지점 변경, 오라클 제거 사본"""
        moved = small_search_params.with_marked_site(5)
        assert moved.w == 5
        assert small_search_params.w == 3
        assert small_search_params.without_oracle().oracle is False
        assert small_search_params.dimension == 16 * 2
        assert small_search_params.state_shape == (16, 2)

    def test_search_params_rejects_site(self, lattice_2d, full_rep_2d):
        with pytest.raises(ConfigurationError) as exc_info:
            SearchParams(lattice_2d, full_rep_2d, 0.5, 0.5, w=lattice_2d.n_sites)
        assert exc_info.value.error_code == "BAD_SITE"

    def test_search_params_rejects_dimension(self, lattice_3d, full_rep_2d):
        with pytest.raises(ConfigurationError) as exc_info:
            SearchParams(lattice_3d, full_rep_2d, 0.5, 0.5)
        assert exc_info.value.error_code == "DIMENSION_MISMATCH"

    def test_spin_rep_is_read_only(self):
        rep = build_full_rep(2)
        with pytest.raises(ValueError):
            rep.beta[0, 0] = 2.0


@pytest.mark.unit
class TestModels:
    """pydantic 결과 모델 테스트"""

    def test_tuning_fraction(self):
        assert Tuning(omega_fraction=0.5).omega_fraction == 0.5
        with pytest.raises(ValidationError):
            Tuning(omega_fraction=1.0)

    def test_eigen_solution_sector(self):
        with pytest.raises(ValidationError):
            EigenSolution(E_plus=0.1, E_minus=-0.1, beta_sector=0, residual=0.0, gap=0.5)

    def test_critical_point_positive(self):
        with pytest.raises(ValidationError):
            CriticalPoint(ratio=1.0, omega=0.0, gamma=0.0, d=2, source=Source.CONTINUUM, u0=1.0)

    def test_algebra_report_alias(self):
        report = AlgebraReport.model_validate(
            {"kind": "full", "d": 2, "dim": 4, "on_eta_only": False, "max_violation": 0.0,
             "hermitian_violation": 0.0, "pass": True}
        )
        assert report.passed is True

    def test_scaling_row_observable(self):
        row = ScalingRow(
            side=8, n_sites=512, omega=0.5, gamma=0.4, E_plus=0.05, V0=1.2, R=0.2,
            t_pred=30.0, amplitude=0.5, boosted_time=60.0,
        )
        assert row.observable(Observable.T_PRED) == 30.0
        assert row.observable(Observable.AMPLITUDE_INV_SQ) == pytest.approx(4.0)
        with pytest.raises(ValueError):
            row.observable(Observable.T_STAR)

    def test_validation_report(self):
        checks = [
            ValidationCheck(name="a", observed=0.0, required=1.0, passed=True),
            ValidationCheck(name="b", observed=np.nan, required=0.0, passed=False),
        ]
        report = ValidationReport(level="fast", checks=checks)
        assert not report.passed
        assert [c.name for c in report.failures()] == ["b"]
