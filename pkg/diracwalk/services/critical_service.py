"""Criticality condition U(0)=1 and the scalar eigenvalue condition for E±."""

import logging
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from ..adapters.quadrature_adapter import integrator_for
from ..config import settings
from ..domain import Branch, DispersionParams, LatticeConfig, Source
from ..models import CriticalPoint, EigenSolution, Tuning
from ..utils.error_handling import (
    BracketError,
    ConfigurationError,
    NoCriticalSolutionError,
)
from . import hamiltonian_service, spectral_service
from .interfaces import IBrillouinIntegrator
from .lattice_service import build_lattice

logger = logging.getLogger(__name__)


@lru_cache(maxsize=16)
def _cached_integrator(d: int, seed: int) -> IBrillouinIntegrator:
    return integrator_for(d, seed)


def _continuum_integrator(d: int) -> IBrillouinIntegrator:
    return _cached_integrator(d, settings.QMC_SEED)


def u_function(
    d: int, source: Source = Source.LATTICE, side: Optional[int] = None
) -> Callable[[np.ndarray], np.ndarray]:
    """u(r) = γ U(0) 를 계산하는 함수 (격자 합 또는 연속 적분)"""
    if Source(source) == Source.LATTICE:
        if side is None:
            raise ConfigurationError("the lattice source needs a side length")
        cfg = build_lattice(d, side)
        return lambda r: spectral_service.u_of_ratio(cfg, r)
    integrator = _continuum_integrator(d)
    return lambda r: spectral_service.continuum_u(d, r, integrator)


def _U0(d: int, p: DispersionParams, source: Source, side: Optional[int]) -> float:
    if Source(source) == Source.LATTICE:
        return spectral_service.spectral_sums(build_lattice(d, side), p, 0.0).U
    return spectral_service.continuum_U0(d, p, _continuum_integrator(d))


def critical_curve(
    d: int,
    r_values: Sequence[float],
    source: Source = Source.LATTICE,
    side: Optional[int] = None,
) -> List[CriticalPoint]:
    """각 r 에 대해 (ω, γ) = (r·u(r), u(r))"""
    r_values = np.asarray(r_values, dtype=float)
    if r_values.size == 0 or np.any(~(r_values > 0)):
        raise ConfigurationError("r values must be a nonempty sequence of positive numbers")
    u = u_function(d, source, side)(r_values)
    points = []
    for r, gamma in zip(r_values, u):
        p = DispersionParams(float(r * gamma), float(gamma))
        points.append(
            CriticalPoint(
                ratio=float(r),
                omega=p.omega,
                gamma=p.gamma,
                d=d,
                source=source,
                side=side if Source(source) == Source.LATTICE else None,
                u0=_U0(d, p, source, side),
            )
        )
    logger.info(f"📈 critical curve - d={d}, source={Source(source).value}, points={len(points)}")
    return points


def r_scan(
    d: int, source: Source = Source.LATTICE, side: Optional[int] = None
) -> Tuple[np.ndarray, np.ndarray]:
    """로그 간격 r 격자 위 r·u(r)"""
    r = np.logspace(
        np.log10(settings.R_SCAN_MIN), np.log10(settings.R_SCAN_MAX), settings.R_SCAN_POINTS
    )
    return r, r * u_function(d, source, side)(r)


def count_local_maxima(values: Sequence[float]) -> int:
    """내부 극댓값 개수 (스캔 해상도 기준)"""
    values = np.asarray(values)
    inner = values[1:-1]
    return int(np.sum((inner > values[:-2]) & (inner >= values[2:])))


def fold_point(
    d: int, source: Source = Source.LATTICE, side: Optional[int] = None
) -> Tuple[float, float]:
    """
    r·u(r) 의 최댓값 위치 r* 와 ω* = r*·u(r*)

    스캔의 첫 번째 내부 극댓값 구간을 log r 위 황금분할 탐색으로 정밀화한다.
    짝수 크기 격자에서는 sin k_j = 0 인 k_j = π 모드 때문에 큰 r 에서
    r·u(r) 가 다시 선형으로 증가하므로 전역 최댓값이 아닌 첫 극댓값을 쓴다.
    """
    r, ru = r_scan(d, source, side)
    inner = ru[1:-1]
    peaks = np.nonzero((inner > ru[:-2]) & (inner >= ru[2:]))[0] + 1
    if peaks.size == 0:
        raise NoCriticalSolutionError(
            f"r·u(r) has no interior maximum on [{r[0]:.3g}, {r[-1]:.3g}]",
            error_code="NO_FOLD",
            context={"d": d, "side": side},
        )
    idx = int(peaks[0])
    if ru[-1] > ru[idx]:
        logger.debug(f"🔍 r·u(r) rises again at large r - d={d}, side={side} (k=π modes)")
    u = u_function(d, source, side)
    result = optimize.minimize_scalar(
        lambda x: -float(np.exp(x) * u(np.exp(x))[0]),
        bracket=(np.log(r[idx - 1]), np.log(r[idx]), np.log(r[idx + 1])),
        method="golden",
        options={"xtol": settings.GOLDEN_XTOL * 1e-2},
    )
    r_star = float(np.exp(result.x))
    omega_max = float(-result.fun)
    logger.debug(f"🎯 fold point - d={d}, side={side}: r*={r_star:.8g}, ω*={omega_max:.10g}")
    return r_star, omega_max


def omega_star(d: int, source: Source = Source.LATTICE, side: Optional[int] = None) -> float:
    """임계 곡선이 존재하는 ω 의 상한 ω*"""
    return fold_point(d, source, side)[1]


def _branch_bracket(
    f: Callable[[float], float], r_star: float, branch: Branch
) -> Tuple[float, float]:
    if branch == Branch.UPPER:
        lo = settings.R_BRANCH_MIN
        if f(lo) >= 0:
            raise NoCriticalSolutionError(
                "omega is too small to resolve the upper branch", error_code="NO_BRACKET"
            )
        return lo, r_star
    # 아래 가지: r* 바깥으로 r·u(r) 가 단조 감소하는 구간에서만 해를 찾는다
    grid = r_star * np.logspace(0.0, 8.0, 161)
    values = np.array([f(r) for r in grid])
    below = np.nonzero(values < 0)[0]
    if below.size == 0 or np.any(np.diff(values[: below[0] + 1]) > 0):
        raise NoCriticalSolutionError(
            "r·u(r) does not fall below omega on the lower branch", error_code="NO_BRACKET"
        )
    return r_star, float(grid[below[0]])


def solve_gamma(
    d: int,
    omega: float,
    branch: Branch = Branch.UPPER,
    source: Source = Source.LATTICE,
    side: Optional[int] = None,
) -> float:
    """
    주어진 ω 에서 U(0)=1 을 만족하는 γ

    Raises:
        ConfigurationError: ω ≤ 0
        NoCriticalSolutionError: ω ≥ ω*
    """
    if not omega > 0:
        raise ConfigurationError(f"omega must be positive: {omega}")
    branch = Branch(branch)
    r_star, omega_max = fold_point(d, source, side)
    if omega >= omega_max:
        raise NoCriticalSolutionError(
            f"omega={omega:.6g} is at or above the threshold ω*={omega_max:.6g}",
            error_code="ABOVE_OMEGA_STAR",
            context={"d": d, "side": side, "omega_star": omega_max},
        )
    u = u_function(d, source, side)

    def f(r: float) -> float:
        return float(r * u(r)[0]) - omega

    lo, hi = _branch_bracket(f, r_star, branch)
    r = optimize.brentq(f, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)
    gamma = omega / r
    U0 = float(r * u(r)[0]) / omega
    if abs(U0 - 1.0) > settings.CRITICAL_TOL:
        raise NoCriticalSolutionError(
            f"criticality not met: |U(0) - 1| = {abs(U0 - 1.0):.3g}",
            error_code="CRITICALITY_FAILED",
        )
    logger.info(
        f"✅ γ solved - d={d}, side={side}, branch={branch.value}: ω={omega:.8g}, γ={gamma:.10g}"
    )
    return gamma


def critical_point(
    d: int,
    tuning: Optional[Tuning] = None,
    source: Source = Source.LATTICE,
    side: Optional[int] = None,
) -> CriticalPoint:
    """Tuning (ω 직접 지정 또는 ω* 비율 + 가지) 을 임계점으로 변환"""
    tuning = tuning or Tuning(omega_fraction=settings.OMEGA_FRACTION, branch=settings.BRANCH)
    omega = tuning.omega
    if omega is None:
        omega = tuning.omega_fraction * omega_star(d, source, side)
    gamma = solve_gamma(d, omega, tuning.branch, source, side)
    p = DispersionParams(omega, gamma)
    return CriticalPoint(
        ratio=p.ratio,
        omega=omega,
        gamma=gamma,
        d=d,
        source=source,
        side=side if Source(source) == Source.LATTICE else None,
        u0=_U0(d, p, source, side),
    )


def spinless_critical_gamma(cfg: LatticeConfig) -> float:
    """ω=0 끝점: 스핀 없는 걷기의 임계 γ = (1/N) Σ_{k≠0} 1/c(k)"""
    return float(spectral_service.u_of_ratio(cfg, 0.0)[0])


def spinless_critical_gamma_dense(cfg: LatticeConfig) -> float:
    """같은 값을 기준 해밀토니안의 밀집 유사역행렬 ⟨w|(−L)^+|w⟩ 로 독립 계산"""
    return hamiltonian_service.spinless_critical_gamma_dense(cfg)


def naive_criticality(cfg: LatticeConfig, omega: float) -> float:
    """
    γ=0 (γβL 항 없는) 해밀토니안의 U(0)

    U(0) 의 분자가 γ c(k) 이므로 항상 0 이고 U(0)=1 을 만족할 수 없다.
    """
    return spectral_service.spectral_sums(cfg, DispersionParams(omega, 0.0), 0.0).U


def eigencondition(cfg: LatticeConfig, p: DispersionParams, b: int, E: float) -> float:
    """G_b(E) = −b/(NE) + U(E) + b·E·V(E) − 1"""
    sums = spectral_service.spectral_sums(cfg, p, E)
    return -b / (cfg.n_sites * E) + sums.U + b * E * sums.V - 1.0


def eigencondition_derivative(cfg: LatticeConfig, p: DispersionParams, b: int, E: float) -> float:
    """G_b′(E) = b/(NE²) + U′(E) + b·V(E) + b·E·V′(E)"""
    sums = spectral_service.spectral_sums(cfg, p, E)
    return b / (cfg.n_sites * E * E) + sums.dU + b * sums.V + b * E * sums.dV


def _find_endpoint(
    G: Callable[[float], float], candidates: Sequence[float], expected_sign: float, label: str
) -> float:
    for E in candidates:
        if np.sign(G(E)) == expected_sign:
            return E
    raise BracketError(
        f"G_b has no sign change near {label}; criticality is not satisfied or E is too close to the gap",
        error_code="NO_SIGN_CHANGE",
    )


def eigencondition_roots(cfg: LatticeConfig, p: DispersionParams, b: int = 1) -> EigenSolution:
    """
    원점에 가장 가까운 G_b 의 두 근 (0, gap), (−gap, 0) 을 이분법으로 계산

    G_b 는 0± 에서 ∓b·∞, ±gap∓ 에서 ±b·∞ 로 발산하며 각 구간에서 단조이다.
    """
    if b not in (1, -1):
        raise ConfigurationError("beta sector must be +1 or -1")
    U0 = spectral_service.spectral_sums(cfg, p, 0.0).U
    if abs(U0 - 1.0) > settings.CRITICALITY_CHECK_TOL:
        raise NoCriticalSolutionError(
            f"parameters are not critical: U(0) = {U0:.12g}",
            error_code="NOT_CRITICAL",
            context={"omega": p.omega, "gamma": p.gamma},
        )
    energy_gap = spectral_service.gap(cfg, p)

    def G(E: float) -> float:
        return eigencondition(cfg, p, b, E)

    near_zero = [energy_gap * 10.0**-e for e in range(1, 16)]
    near_gap = [energy_gap * (1.0 - 10.0**-e) for e in range(1, 9)] + [
        energy_gap * (1.0 - 2.0 * settings.GAP_MARGIN)
    ]
    roots = {}
    for sign in (1.0, -1.0):
        # E → 0 쪽 끝에서 G 의 부호는 −b·sign, 갭 쪽 끝에서는 +b·sign
        lo = _find_endpoint(lambda x: G(sign * x), near_zero, -b * sign, "E=0")
        hi = _find_endpoint(lambda x: G(sign * x), near_gap, b * sign, "the gap")
        root = optimize.bisect(
            lambda x: G(sign * x), lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=2000
        )
        roots[sign] = sign * root
    residual = max(abs(G(roots[1.0])), abs(G(roots[-1.0])))
    converged = residual <= settings.ROOT_TOL
    if not converged:
        logger.warning(f"⚠️ eigencondition residual {residual:.3g} exceeds {settings.ROOT_TOL:.1g}")
    logger.debug(
        f"📊 E± roots - {cfg}, b={b}: E+={roots[1.0]:.12g}, E-={roots[-1.0]:.12g}, residual={residual:.2g}"
    )
    return EigenSolution(
        E_plus=roots[1.0],
        E_minus=roots[-1.0],
        beta_sector=b,
        residual=residual,
        gap=energy_gap,
        converged=converged,
    )
