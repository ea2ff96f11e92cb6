"""Closed-form predictions at criticality: R±, run time T and the initial overlaps."""

import logging
import math
from typing import Dict, Optional, Tuple

from ..domain import DispersionParams, LatticeConfig, Source
from ..models import CriticalPoint, EigenSolution, Prediction, Tuning
from ..utils.error_handling import NumericalError
from . import spectral_service
from .critical_service import critical_point, eigencondition_derivative, eigencondition_roots
from .lattice_service import build_lattice

logger = logging.getLogger(__name__)


def overlap_weight(cfg: LatticeConfig, p: DispersionParams, E: float) -> float:
    """
    R = 1 / G_+′(E) (고유상태의 |w⟩ 성분 제곱)

    Raises:
        NumericalError: 도함수가 양수가 아닌 경우 (근 계산 불일치)
    """
    derivative = eigencondition_derivative(cfg, p, 1, E)
    if not derivative > 0:
        raise NumericalError(
            f"eigencondition derivative is not positive at E={E:.6g}: {derivative:.6g}",
            error_code="NONPOSITIVE_DERIVATIVE",
        )
    return 1.0 / derivative


def predict(cfg: LatticeConfig, p: DispersionParams, roots: EigenSolution) -> Prediction:
    """임계점 (ω, γ) 과 E± 로부터 R, T, 진폭 예측"""
    R = overlap_weight(cfg, p, roots.E_plus)
    R_minus = overlap_weight(cfg, p, roots.E_minus)
    V0 = spectral_service.spectral_sums(cfg, p, 0.0).V
    T = math.pi / (2.0 * abs(roots.E_plus))
    amplitude = math.sqrt(2.0 * R)
    diagnostics = asymptotic_diagnostics(cfg.n_sites, roots.E_plus, V0, R, amplitude)
    prediction = Prediction(
        omega=p.omega,
        gamma=p.gamma,
        n_sites=cfg.n_sites,
        E_plus=roots.E_plus,
        E_minus=roots.E_minus,
        V0=V0,
        R=R,
        R_minus=R_minus,
        T=T,
        amplitude=amplitude,
        boosted_time=T / amplitude,
        **diagnostics,
    )
    logger.info(
        f"📊 prediction - {cfg}: E+={roots.E_plus:.8g}, R={R:.6g}, T={T:.6g}, amplitude={amplitude:.6g}"
    )
    return prediction


def asymptotic_diagnostics(
    n_sites: int, E_plus: float, V0: float, R: float, amplitude: float
) -> Dict[str, float]:
    """선도 차수 근사식 E+ ≈ 1/√(N V0), R ≈ 1/(2 V0), 진폭² ≈ 1/V0 의 비율 (1이면 일치)"""
    return {
        "eigenvalue_law": E_plus * math.sqrt(n_sites * V0),
        "r_law": 2.0 * V0 * R,
        "amplitude_law": amplitude**2 * V0,
    }


def initial_state_overlap(
    cfg: LatticeConfig, p: DispersionParams, roots: EigenSolution
) -> Tuple[float, float]:
    """⟨η,s|ψ±⟩ = −√R± / (E± √N) (스핀 인자 ⟨η|β|φ±⟩ = 1)"""
    sqrt_n = math.sqrt(cfg.n_sites)
    R_plus = overlap_weight(cfg, p, roots.E_plus)
    R_minus = overlap_weight(cfg, p, roots.E_minus)
    return (
        -math.sqrt(R_plus) / (roots.E_plus * sqrt_n),
        -math.sqrt(R_minus) / (roots.E_minus * sqrt_n),
    )


def experiment_point(
    d: int, side: int, tuning: Optional[Tuning] = None
) -> Tuple[LatticeConfig, CriticalPoint, EigenSolution, Prediction]:
    """격자 크기 N 에서 임계점 재계산 → E± → 예측"""
    cfg = build_lattice(d, side)
    point = critical_point(d, tuning, Source.LATTICE, side)
    p = DispersionParams(point.omega, point.gamma)
    roots = eigencondition_roots(cfg, p, 1)
    return cfg, point, roots, predict(cfg, p, roots)
