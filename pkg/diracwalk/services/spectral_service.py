"""Momentum-space scalar functions and the spectral sums U(E), V(E)."""

import logging
from functools import lru_cache
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from ..adapters.quadrature_adapter import integrator_for
from ..config import settings
from ..domain import DispersionParams, LatticeConfig, MomentumVector
from ..models import SpectralSums
from ..utils.error_handling import (
    ConfigurationError,
    DivergentIntegralError,
    ResolventSingularError,
)
from .interfaces import IBrillouinIntegrator
from .lattice_service import momentum_array

logger = logging.getLogger(__name__)

MomentumLike = Union[MomentumVector, Sequence[float], np.ndarray]


def _as_k(k: MomentumLike) -> np.ndarray:
    if isinstance(k, MomentumVector):
        return np.asarray(k.k, dtype=float)
    return np.asarray(k, dtype=float)


def s2(k: MomentumLike) -> np.ndarray:
    """s²(k) = Σ sin² k_j (마지막 축이 성분)"""
    k = _as_k(k)
    return np.sum(np.sin(k) ** 2, axis=-1)


def c(k: MomentumLike) -> np.ndarray:
    """c(k) = 2 Σ (1 − cos k_j), 작은 k 에서 정확하도록 4 Σ sin²(k_j/2) 로 계산"""
    k = _as_k(k)
    return 4.0 * np.sum(np.sin(0.5 * k) ** 2, axis=-1)


def dispersion(k: MomentumLike, p: DispersionParams) -> np.ndarray:
    """양의 가지 E(k) = √(ω² s²(k) + γ² c(k)²)"""
    return np.sqrt(p.omega**2 * s2(k) + p.gamma**2 * c(k) ** 2)


@lru_cache(maxsize=32)
def grid_terms(cfg: LatticeConfig) -> Tuple[np.ndarray, np.ndarray]:
    """k ≠ 0 격자점의 (s², c) 배열"""
    k = momentum_array(cfg)[1:]
    s2_values, c_values = s2(k), c(k)
    s2_values.setflags(write=False)
    c_values.setflags(write=False)
    return s2_values, c_values


def energies_squared(cfg: LatticeConfig, p: DispersionParams) -> np.ndarray:
    """k ≠ 0 에서의 E(k)²"""
    s2_values, c_values = grid_terms(cfg)
    return p.omega**2 * s2_values + p.gamma**2 * c_values**2


def gap(cfg: LatticeConfig, p: DispersionParams) -> float:
    """min_{k≠0} E(k)"""
    return float(np.sqrt(np.min(energies_squared(cfg, p))))


def spectral_sums(cfg: LatticeConfig, p: DispersionParams, E: float) -> SpectralSums:
    """
    U(E), V(E) 와 도함수의 유한 격자 합 (k=0 제외)

    Raises:
        ResolventSingularError: |E| 가 갭에 (상대 여유 1e-9 이내로) 닿는 경우
    """
    energy_gap = gap(cfg, p)
    if not abs(E) < energy_gap * (1.0 - settings.GAP_MARGIN):
        raise ResolventSingularError(
            f"energy |E|={abs(E):.6g} is not below the gap {energy_gap:.6g}",
            error_code="RESOLVENT_SINGULAR",
            context={"E": E, "gap": energy_gap},
        )
    _, c_values = grid_terms(cfg)
    denom = energies_squared(cfg, p) - E * E
    inv = 1.0 / denom
    inv2 = inv * inv
    n = cfg.n_sites
    gc = p.gamma * c_values
    return SpectralSums(
        E=E,
        U=float(np.sum(gc * inv) / n),
        V=float(np.sum(inv) / n),
        dU=float(2.0 * E * np.sum(gc * inv2) / n),
        dV=float(2.0 * E * np.sum(inv2) / n),
        gap=energy_gap,
    )


def u_of_ratio(cfg: LatticeConfig, r: Union[float, np.ndarray]) -> np.ndarray:
    """격자 합 u(r) = γ U(0) = (1/N) Σ_{k≠0} c / (r² s² + c²)"""
    s2_values, c_values = grid_terms(cfg)
    r = np.atleast_1d(np.asarray(r, dtype=float))
    values = np.array(
        [np.sum(c_values / (ri * ri * s2_values + c_values**2)) for ri in r]
    )
    return values / cfg.n_sites


def _kernel_terms(
    d: int, integrator: IBrillouinIntegrator
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    k, weights = integrator.nodes(d)
    return s2(k), c(k), weights


def continuum_u(
    d: int,
    r: Union[float, np.ndarray],
    integrator: Optional[IBrillouinIntegrator] = None,
) -> np.ndarray:
    """연속 극한 u(r) = (1/(2π)^d) ∫ c / (r² s² + c²)"""
    integrator = integrator or integrator_for(d)
    s2_values, c_values, weights = _kernel_terms(d, integrator)
    r = np.atleast_1d(np.asarray(r, dtype=float))
    safe = c_values > 0
    values = []
    for ri in r:
        integrand = np.zeros_like(c_values)
        integrand[safe] = c_values[safe] / (ri * ri * s2_values[safe] + c_values[safe] ** 2)
        values.append(float(np.dot(weights, integrand)))
    return np.array(values)


def continuum_U0(
    d: int, p: DispersionParams, integrator: Optional[IBrillouinIntegrator] = None
) -> float:
    """U(0) 의 브릴루앙 영역 적분 (모든 d 에서 수렴)"""
    integrator = integrator or integrator_for(d)
    if p.gamma == 0:
        return 0.0
    s2_values, c_values, weights = _kernel_terms(d, integrator)
    e2 = p.omega**2 * s2_values + p.gamma**2 * c_values**2
    safe = e2 > 0
    integrand = np.zeros_like(e2)
    integrand[safe] = p.gamma * c_values[safe] / e2[safe]
    return float(np.dot(weights, integrand))


def continuum_V0(
    d: int, p: DispersionParams, integrator: Optional[IBrillouinIntegrator] = None
) -> float:
    """
    V(0) 의 브릴루앙 영역 적분

    Raises:
        DivergentIntegralError: d ≤ 2 (적외선 로그 발산) 또는 ω=0, d ≤ 4
    """
    if d <= 2:
        raise DivergentIntegralError(
            f"V(0) is infrared divergent in d={d}; use the finite-N lattice sum",
            error_code="IR_DIVERGENT",
        )
    if p.omega == 0 and d <= 4:
        raise DivergentIntegralError(
            f"V(0) diverges for omega=0 in d={d}", error_code="IR_DIVERGENT"
        )
    integrator = integrator or integrator_for(d)
    s2_values, c_values, weights = _kernel_terms(d, integrator)
    e2 = p.omega**2 * s2_values + p.gamma**2 * c_values**2
    safe = e2 > 0
    integrand = np.zeros_like(e2)
    integrand[safe] = 1.0 / e2[safe]
    value = float(np.dot(weights, integrand))
    logger.debug(f"📊 continuum V(0) - d={d}, ω={p.omega:.6g}, γ={p.gamma:.6g}: {value:.10g}")
    return value


def log_coefficient_2d(p: DispersionParams) -> float:
    """d=2 에서 V(0) ≈ (1/4πω²) ln N + O(1) 의 기울기"""
    if p.omega <= 0:
        raise ConfigurationError("the d=2 logarithmic coefficient needs omega > 0")
    return 1.0 / (4.0 * np.pi * p.omega**2)
