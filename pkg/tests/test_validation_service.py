import pytest

from diracwalk.domain import SignConvention
from diracwalk.models import ValidationCheck, ValidationReport
from diracwalk.services.interfaces import IValidationService
from diracwalk.services.validation_service import LEVELS, ValidationService
from diracwalk.utils.error_handling import ConfigurationError, ErrorReporter, NumericalError


@pytest.fixture
def service():
    return ValidationService(ErrorReporter())


@pytest.mark.validation
class TestValidationChecks:
    """개별 불변식 검사 테스트"""

    def test_is_validation_service(self, service):
        assert isinstance(service, IValidationService)
        assert LEVELS == ("fast", "full")

    def test_algebra_checks_pass(self, service):
        """d=1..6 대수 관계, d ≥ 2 축소 표현의 η 밖 실패 포함"""
        checks = service.check_algebra()
        assert all(check.passed for check in checks)
        names = {check.name for check in checks}
        assert "reduced_fails_off_eta_d2" in names
        assert "reduced_fails_off_eta_d1" not in names

    def test_hermiticity_and_grid(self, service):
        checks = service.check_hermiticity() + service.check_grid()
        assert all(check.passed for check in checks)

    def test_dispersion(self, service):
        """d=2 (side 4, 8) 와 d=3 (side 6) 분산 관계"""
        checks = service.check_dispersion()
        assert [c.name for c in checks] == [
            "dispersion_d2_side4",
            "dispersion_d2_side8",
            "dispersion_d3_side6",
        ]
        assert all(check.passed for check in checks)

    def test_spinless_checks(self, service):
        """끝점 일치와 ω=0 회귀"""
        checks = service.check_spinless_endpoint() + service.check_spinless_regression()
        assert all(check.passed for check in checks)

    def test_propagator_checks(self, service):
        """반복/밀집 일치, 시간 역전, 노름"""
        checks = service.check_propagator()
        assert [c.name for c in checks] == ["propagator_agreement", "time_reversal", "norm_drift"]
        assert all(check.passed for check in checks)

    def test_root_residual(self, service):
        """d=3, side=8 임계점과 근 잔차"""
        assert all(check.passed for check in service.check_root_residual())


@pytest.mark.validation
class TestValidationRun:
    """검증 스위트 실행 테스트"""

    def test_fast_level_passes(self, service):
        """fast 수준은 모두 통과"""
        report = service.run("fast")
        assert report.level == "fast"
        assert report.passed, [c.name for c in report.failures()]
        assert service.error_reporter.get_error_summary()["total_errors"] == 0

    def test_unknown_level(self, service):
        with pytest.raises(ConfigurationError):
            service.run("exhaustive")

    def test_tight_tolerance_fails_gracefully(self):
        """허용 오차 1e-16 은 예외 없이 실패 보고"""
        report = ValidationService(tol=1e-16).run("fast")
        assert not report.passed
        failure = report.failures()[0]
        assert failure.observed > failure.required

    def test_failing_suite_is_reported(self, service, mocker):
        """검사 중 예외는 실패한 검사 한 건과 에러 리포트로 변환"""
        mocker.patch.object(
            service, "check_grid", side_effect=NumericalError("boom", context={"side": 5})
        )
        report = service.run("fast")
        failed = [c for c in report.failures() if c.name == "grid"]
        assert len(failed) == 1
        assert failed[0].detail == "boom"
        assert service.error_reporter.get_error_summary()["error_counts"] == {"NumericalError": 1}

    def test_report_helpers(self):
        """passed 와 failures"""
        report = ValidationReport(
            level="fast",
            checks=[
                ValidationCheck(name="a", observed=0.0, required=1.0, passed=True),
                ValidationCheck(name="b", observed=2.0, required=1.0, passed=False),
            ],
        )
        assert not report.passed
        assert [c.name for c in report.failures()] == ["b"]


@pytest.mark.validation
@pytest.mark.slow
class TestFullValidation:
    """full 수준 검사 테스트"""

    def test_oracle_equivalence(self, service):
        """밀집 대각화와 스칼라 조건 일치 (d=2 full, d=3 reduced)"""
        checks = service.check_oracle_equivalence()
        assert len(checks) == 8
        assert all(check.passed for check in checks), [c for c in checks if not c.passed]

    def test_sign_guard(self, service):
        """글자 그대로의 βL 부호는 검출됨"""
        assert all(check.passed for check in service.check_sign_guard())

    def test_flipped_sign_breaks_equivalence(self):
        """LITERAL 규약으로 돌리면 동치 검사가 실패"""
        checks = ValidationService(convention=SignConvention.LITERAL).check_oracle_equivalence()
        assert any(not check.passed for check in checks)

    def test_translation_covariance(self, service):
        """표시 지점 평행이동 전후 확률 시계열 일치"""
        checks = service.check_translation_covariance()
        assert [c.name for c in checks] == ["translation_covariance_d2_side6"]
        assert checks[0].passed, checks[0]

    def test_two_level_weight(self, service):
        """d=3, side=8 에서 두 준위 부분공간 가중치 ≥ 0.9"""
        check = service.check_two_level()[0]
        assert check.passed
        assert check.observed >= 0.9

    def test_mini_scaling(self, service):
        """d=3 소규모 스케일링 지수와 결정계수"""
        checks = {c.name: c for c in service.check_mini_scaling()}
        assert checks["mini_scaling_exponent"].observed <= 0.1
        assert checks["mini_scaling_r2"].observed >= 0.98

    def test_full_level_includes_covariance(self, service, mocker):
        """full 수준은 fast 검사에 동치, 공변성, 가드, 스케일링을 추가"""
        for name in (
            "check_oracle_equivalence",
            "check_sign_guard",
            "check_two_level",
            "check_mini_scaling",
        ):
            mocker.patch.object(service, name, return_value=[])
        spy = mocker.spy(service, "check_translation_covariance")
        report = service.run("full")
        spy.assert_called_once()
        assert "translation_covariance_d2_side6" in {c.name for c in report.checks}
