"""Value objects for simulation parameters."""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

from ..utils.error_handling import ConfigurationError


class RepKind(str, Enum):
    """스핀 표현 종류"""

    FULL = "full"
    REDUCED = "reduced"


class Branch(str, Enum):
    """임계 곡선의 γ 가지 (UPPER가 더 큰 γ)"""

    UPPER = "upper"
    LOWER = "lower"


class Source(str, Enum):
    """U(0), V(0) 계산 방식: 유한 격자 합 또는 연속 적분"""

    LATTICE = "lattice"
    CONTINUUM = "continuum"


class SignConvention(str, Enum):
    """βL 항의 부호 규약"""

    # 운동량 블록이 ω Σ sin(k_j) α_j + γ c(k) β 가 되도록 βL 부호를 뒤집은 규약
    FLIPPED = "flipped"
    # H0 = ω Σ α_j P_j + γ β L 를 글자 그대로 적용 (부호 검증용)
    LITERAL = "literal"


class Observable(str, Enum):
    """스케일링 분석 대상 관측량"""

    T_STAR = "t_star"
    P_STAR = "p_star"
    P_ETA_STAR = "p_eta_star"
    T_PRED = "t_pred"
    AMPLITUDE = "amplitude"
    AMPLITUDE_INV_SQ = "amplitude_inv_sq"
    BOOSTED_TIME = "boosted_time"

    def needs_dynamics(self) -> bool:
        """시간 전개가 필요한 관측량 여부"""
        return self in (Observable.T_STAR, Observable.P_STAR, Observable.P_ETA_STAR)


@dataclass(frozen=True)
class DispersionParams:
    """분산 관계 파라미터 (ω: 호핑 세기, γ: 라플라시안 항 세기)"""

    omega: float
    gamma: float

    def __post_init__(self):
        if not (math.isfinite(self.omega) and math.isfinite(self.gamma)):
            raise ConfigurationError("omega and gamma must be finite")
        if self.omega < 0 or self.gamma < 0:
            raise ConfigurationError(
                f"omega and gamma must be nonnegative: ({self.omega}, {self.gamma})"
            )
        if self.omega == 0 and self.gamma == 0:
            raise ConfigurationError("omega and gamma cannot both be zero")

    @property
    def ratio(self) -> float:
        """r = ω/γ (γ=0이면 무한대)"""
        return self.omega / self.gamma if self.gamma > 0 else math.inf

    def scaled(self, factor: float) -> "DispersionParams":
        """(tω, tγ)"""
        return DispersionParams(self.omega * factor, self.gamma * factor)


@dataclass(frozen=True)
class MomentumVector:
    """운동량 격자점: 정수 지표 m 과 k_j = 2π m_j / side"""

    m: Tuple[int, ...]
    side: int

    @property
    def k(self) -> Tuple[float, ...]:
        return tuple(2.0 * math.pi * mj / self.side for mj in self.m)

    def is_zero(self) -> bool:
        return all(mj == 0 for mj in self.m)

    def __str__(self) -> str:
        return f"m={self.m}"
