import math

import numpy as np
import pytest

from diracwalk.domain import DispersionParams
from diracwalk.services import critical_service, prediction_service
from diracwalk.utils.error_handling import NumericalError


@pytest.mark.unit
class TestPredict:
    """닫힌 형태 예측 테스트"""

    def test_closed_forms(self, critical_d3_side8):
        """T = π/(2E+), 진폭 = √(2R), 증폭 시간 = T/진폭"""
        cfg, point, roots, prediction = critical_d3_side8
        assert prediction.n_sites == cfg.n_sites
        assert prediction.T == pytest.approx(math.pi / (2 * roots.E_plus))
        assert prediction.amplitude == pytest.approx(math.sqrt(2 * prediction.R))
        assert prediction.boosted_time == pytest.approx(prediction.T / prediction.amplitude)
        assert 0 < prediction.R < 1

    def test_weight_is_inverse_derivative(self, critical_d3_side8):
        """R± = 1/G_+′(E±)"""
        cfg, point, roots, prediction = critical_d3_side8
        p = DispersionParams(point.omega, point.gamma)
        for E, R in ((roots.E_plus, prediction.R), (roots.E_minus, prediction.R_minus)):
            derivative = critical_service.eigencondition_derivative(cfg, p, 1, E)
            assert R == pytest.approx(1.0 / derivative)

    def test_prediction_echoes_parameters(self, critical_d3_side8):
        """예측 레코드에 (ω, γ) 와 E± 기록"""
        _, point, roots, prediction = critical_d3_side8
        assert prediction.omega == point.omega
        assert prediction.gamma == point.gamma
        assert prediction.E_plus == roots.E_plus
        assert prediction.E_minus == roots.E_minus
        assert prediction.V0 > 0

    def test_nonpositive_derivative(self, critical_d3_side8, mocker):
        """G′ ≤ 0 이면 NumericalError"""
        cfg, point, roots, _ = critical_d3_side8
        mocker.patch(
            "diracwalk.services.prediction_service.eigencondition_derivative", return_value=0.0
        )
        with pytest.raises(NumericalError) as exc_info:
            prediction_service.overlap_weight(
                cfg, DispersionParams(point.omega, point.gamma), roots.E_plus
            )
        assert exc_info.value.error_code == "NONPOSITIVE_DERIVATIVE"


@pytest.mark.unit
class TestDiagnostics:
    """점근식 진단값 테스트"""

    def test_exact_asymptotic_values(self):
        """점근식과 정확히 일치하면 모든 비율이 1"""
        n, V0 = 1000, 2.0
        E = 1.0 / math.sqrt(n * V0)
        R = 1.0 / (2 * V0)
        amplitude = math.sqrt(2 * R)
        diagnostics = prediction_service.asymptotic_diagnostics(n, E, V0, R, amplitude)
        assert diagnostics == pytest.approx(
            {"eigenvalue_law": 1.0, "r_law": 1.0, "amplitude_law": 1.0}
        )

    def test_laws_are_order_one(self, critical_d3_side8):
        """d=3, side=8 에서도 진단값이 1 근처"""
        prediction = critical_d3_side8[3]
        assert 0.3 < prediction.eigenvalue_law < 1.7
        assert 0.3 < prediction.r_law < 1.7

    @pytest.mark.slow
    def test_laws_converge_in_three_dimensions(self):
        """d=3, side 16/32/64: 세 근사식의 편차가 단조 감소, side=64 에서 10% 이내"""
        predictions = [prediction_service.experiment_point(3, side)[3] for side in (16, 32, 64)]
        for law in ("eigenvalue_law", "r_law", "amplitude_law"):
            deviations = [abs(getattr(p, law) - 1.0) for p in predictions]
            assert deviations[0] > deviations[1] > deviations[2], (law, deviations)
            assert deviations[2] <= 0.1

    @pytest.mark.slow
    def test_boosted_time_scales_as_root_n_log_n(self):
        """d=2, side 32/64/128: 증폭 시간 / (√N ln N) 의 변동 15% 이내"""
        ratios = []
        for side in (32, 64, 128):
            prediction = prediction_service.experiment_point(2, side)[3]
            n = prediction.n_sites
            ratios.append(prediction.boosted_time / (math.sqrt(n) * math.log(n)))
        assert max(ratios) / min(ratios) <= 1.15


@pytest.mark.unit
class TestInitialOverlap:
    """⟨η,s|ψ±⟩ 테스트"""

    def test_signs_and_magnitudes(self, critical_d3_side8):
        """−√R±/(E±√N): E+ 쪽 음수, E− 쪽 양수"""
        cfg, point, roots, prediction = critical_d3_side8
        p = DispersionParams(point.omega, point.gamma)
        plus, minus = prediction_service.initial_state_overlap(cfg, p, roots)
        assert plus < 0 < minus
        assert plus == pytest.approx(
            -math.sqrt(prediction.R) / (roots.E_plus * math.sqrt(cfg.n_sites))
        )

    def test_two_level_weight_near_one(self, critical_d3_side8):
        """초기 상태는 대부분 span{ψ+, ψ−} 안에 있음"""
        cfg, point, roots, _ = critical_d3_side8
        p = DispersionParams(point.omega, point.gamma)
        plus, minus = prediction_service.initial_state_overlap(cfg, p, roots)
        assert 0.9 <= plus**2 + minus**2 <= 1.0 + 1e-9

    def test_pair_close_to_half_root_two(self):
        """d=3, side=16: (⟨η,s|ψ+⟩, ⟨η,s|ψ−⟩) 는 (−1/√2, +1/√2) 의 5% 이내"""
        cfg, point, roots, _ = prediction_service.experiment_point(3, 16)
        p = DispersionParams(point.omega, point.gamma)
        plus, minus = prediction_service.initial_state_overlap(cfg, p, roots)
        target = 1.0 / math.sqrt(2.0)
        assert plus == pytest.approx(-target, rel=0.05)
        assert minus == pytest.approx(target, rel=0.05)
        assert np.hypot(plus, minus) == pytest.approx(1.0, abs=0.05)

    @pytest.mark.slow
    def test_pair_is_antisymmetric(self):
        """d=3, side=32: ⟨η,s|ψ−⟩ = −⟨η,s|ψ+⟩ (1% 이내)"""
        cfg, point, roots, _ = prediction_service.experiment_point(3, 32)
        p = DispersionParams(point.omega, point.gamma)
        plus, minus = prediction_service.initial_state_overlap(cfg, p, roots)
        assert minus == pytest.approx(-plus, rel=1e-2)
