"""Result records and run configuration for DiracWalk."""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .domain.value_objects import Branch, Observable, RepKind, Source


class SpectralSums(BaseModel):
    """탐침 에너지 E에서의 U(E), V(E)와 도함수"""

    model_config = ConfigDict(frozen=True)

    E: float
    U: float
    V: float
    dU: float
    dV: float
    gap: float


class AlgebraReport(BaseModel):
    """클리퍼드 대수 관계 검사 결과"""

    kind: RepKind
    d: int
    dim: int
    on_eta_only: bool
    max_violation: float
    hermitian_violation: float
    passed: bool = Field(alias="pass")

    model_config = ConfigDict(frozen=True, populate_by_name=True)


class CriticalPoint(BaseModel):
    """U(0)=1 을 만족하는 (ω, γ)"""

    model_config = ConfigDict(frozen=True)

    ratio: float
    omega: float
    gamma: float
    d: int
    source: Source
    side: Optional[int] = None
    u0: float

    @field_validator("ratio", "gamma")
    @classmethod
    def _positive(cls, value: float) -> float:
        if not value > 0:
            raise ValueError("critical ratio and gamma must be positive")
        return value


class EigenSolution(BaseModel):
    """스칼라 고유값 조건 G_b(E)=0 의 원점 근방 두 근"""

    model_config = ConfigDict(frozen=True)

    E_plus: float
    E_minus: float
    beta_sector: int
    residual: float
    gap: float
    converged: bool = True

    @field_validator("beta_sector")
    @classmethod
    def _sector(cls, value: int) -> int:
        if value not in (1, -1):
            raise ValueError("beta_sector must be +1 or -1")
        return value


class Prediction(BaseModel):
    """임계점에서의 닫힌 형태 예측값"""

    model_config = ConfigDict(frozen=True)

    omega: float
    gamma: float
    n_sites: int
    E_plus: float
    E_minus: float
    V0: float
    R: float
    R_minus: float
    T: float
    amplitude: float
    boosted_time: float
    # 선도 차수 근사 진단값 (1에 가까울수록 점근식과 일치)
    eigenvalue_law: float
    r_law: float
    amplitude_law: float


class EvolutionResult(BaseModel):
    """시간 전개와 표시 지점 확률 시계열"""

    times: List[float]
    p_marked: List[float]
    p_eta_marked: List[float]
    t_star: float
    p_star: float
    p_eta_star: float
    norm_drift: float
    method: str
    unitary: bool = True


class Tuning(BaseModel):
    """임계점 선택 방식: ω 직접 지정 또는 ω* 의 비율"""

    model_config = ConfigDict(frozen=True)

    omega: Optional[float] = None
    omega_fraction: float = 0.9
    branch: Branch = Branch.UPPER

    @field_validator("omega_fraction")
    @classmethod
    def _fraction(cls, value: float) -> float:
        if not 0 < value < 1:
            raise ValueError("omega_fraction must lie in (0, 1)")
        return value


class ScalingRow(BaseModel):
    """스케일링 분석의 격자 크기별 결과 행"""

    side: int
    n_sites: int
    omega: float
    gamma: float
    E_plus: float
    V0: float
    R: float
    t_pred: float
    amplitude: float
    boosted_time: float
    t_star: Optional[float] = None
    p_star: Optional[float] = None
    p_eta_star: Optional[float] = None

    def observable(self, observable: Observable) -> float:
        """관측량 값"""
        if observable == Observable.AMPLITUDE_INV_SQ:
            return 1.0 / self.amplitude**2
        value = getattr(self, observable.value)
        if value is None:
            raise ValueError(f"observable {observable.value} was not measured")
        return float(value)


class ScalingFit(BaseModel):
    """log(관측량) 대 log(N) 최소제곱 적합"""

    d: int
    rep: RepKind
    observable: Observable
    exponent: float
    intercept: float
    r2: float
    # 관측량 대 ln N 선형 적합 (d=2 로그 거동)
    log_slope: float
    log_intercept: float
    log_r2: float
    table: List[ScalingRow]


class ValidationCheck(BaseModel):
    """불변식 검사 한 건"""

    name: str
    observed: float
    required: float
    passed: bool
    detail: str = ""


class ValidationReport(BaseModel):
    """검증 스위트 결과"""

    level: str
    checks: List[ValidationCheck]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> List[ValidationCheck]:
        return [check for check in self.checks if not check.passed]


class RunConfig(BaseModel):
    """CLI 실행의 유효 설정 (모든 출력 파일에 기록)"""

    model_config = ConfigDict(frozen=True)

    command: str
    d: Optional[int] = None
    side: Optional[int] = None
    sides: Optional[List[int]] = None
    rep: RepKind = RepKind.REDUCED
    omega: Optional[float] = None
    omega_fraction: float = 0.9
    branch: Branch = Branch.UPPER
    source: Source = Source.LATTICE
    tol: Optional[float] = None
    seed: int = 0
    r_min: Optional[float] = None
    r_max: Optional[float] = None
    points: Optional[int] = None
    grid_points: Optional[int] = None
    t_max: Optional[float] = None
    observable: Optional[Observable] = None
    level: Optional[str] = None
    out: Optional[str] = None
    format: Optional[str] = None
    settings: Dict[str, Any] = {}

    def tuning(self) -> Tuning:
        return Tuning(
            omega=self.omega, omega_fraction=self.omega_fraction, branch=self.branch
        )
