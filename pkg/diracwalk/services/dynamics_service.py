"""Time evolution under H, marked-site success probabilities and scaling studies."""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from ..adapters.propagator_adapter import DensePropagator, LanczosPropagator
from ..config import settings
from ..domain import LatticeConfig, Observable, RepKind, SearchParams
from ..models import EigenSolution, EvolutionResult, ScalingFit, ScalingRow, Tuning
from ..utils.error_handling import ConfigurationError, NumericalError
from . import hamiltonian_service
from .clifford_service import build_rep
from .interfaces import IPropagator
from .prediction_service import experiment_point

logger = logging.getLogger(__name__)

MIN_TOL = 1e-12
MAX_TOL = 1e-6


def _check_tol(tol: Optional[float]) -> float:
    tol = settings.EVOLVE_TOL if tol is None else tol
    if not MIN_TOL <= tol <= MAX_TOL:
        raise ConfigurationError(f"tolerance must lie in [{MIN_TOL:g}, {MAX_TOL:g}]: {tol}")
    return tol


def make_propagator(params: SearchParams, method: str = "auto") -> IPropagator:
    """
    전파기 선택

    Args:
        params: 탐색 파라미터
        method: "dense", "lanczos" 또는 "auto" (밀집 한도 이하면 dense)
    """
    if method == "auto":
        method = "dense" if params.dimension <= settings.DENSE_CAP else "lanczos"
    if method == "dense":
        return DensePropagator(hamiltonian_service.assemble_dense(params))
    if method == "lanczos":
        return LanczosPropagator(
            hamiltonian_service.matvec(params), hamiltonian_service.norm_bound(params)
        )
    raise ConfigurationError(f"unknown propagation method: {method}")


def evolve(
    params: SearchParams,
    state0: np.ndarray,
    t: float,
    tol: Optional[float] = None,
    method: str = "auto",
) -> np.ndarray:
    """e^{-iHt} state0 (음의 t 허용), 반환 형태 (n_sites, dim)"""
    tol = _check_tol(tol)
    state = hamiltonian_service.as_state(params, state0).ravel()
    propagator = make_propagator(params, method)
    return propagator.evolve(state, t, tol).reshape(params.state_shape)


def propagate_series(
    params: SearchParams,
    state0: np.ndarray,
    times: Sequence[float],
    tol: Optional[float] = None,
    method: str = "auto",
) -> Iterator[np.ndarray]:
    """증가하는 시간 격자 위 상태를 순서대로 생성"""
    tol = _check_tol(tol)
    state = hamiltonian_service.as_state(params, state0).ravel()
    propagator = make_propagator(params, method)
    for psi in propagator.series(state, times, tol):
        yield psi.reshape(params.state_shape)


def marked_probabilities(params: SearchParams, psi: np.ndarray) -> Tuple[float, float]:
    """(Σ_spin |ψ(w)|², |⟨η,w|ψ⟩|²)"""
    amplitudes = psi[params.w]
    p_marked = float(np.sum(np.abs(amplitudes) ** 2))
    p_eta = float(abs(np.vdot(params.rep.eta, amplitudes)) ** 2)
    return p_marked, p_eta


def refine_peak(times: Sequence[float], values: Sequence[float]) -> Tuple[float, float]:
    """격자 최댓값 주변 세 점 포물선 적합으로 (t*, p*) 정밀화"""
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    i = int(np.argmax(values))
    if i == 0 or i == values.size - 1:
        return float(times[i]), float(values[i])
    t = times[i - 1 : i + 2]
    y = values[i - 1 : i + 2]
    a, b, c = np.polyfit(t - t[1], y, 2)
    if a >= 0:
        return float(times[i]), float(values[i])
    shift = float(np.clip(-b / (2.0 * a), t[0] - t[1], t[2] - t[1]))
    return float(t[1] + shift), float(max(a * shift**2 + b * shift + c, values[i]))


def default_grid(t_pred: float, points: Optional[int] = None) -> np.ndarray:
    """[0, 2·T_pred] 위 균등 격자 (기본 64점)"""
    points = points or settings.GRID_POINTS
    if points < 1 or not t_pred > 0:
        raise ConfigurationError("grid needs at least one point and a positive T_pred")
    return np.linspace(0.0, 2.0 * t_pred, points)


def _check_grid(t_grid: Sequence[float]) -> np.ndarray:
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or t_grid.size == 0 or t_grid[0] != 0.0:
        raise ConfigurationError("time grid must be a nonempty sequence starting at 0")
    if np.any(np.diff(t_grid) <= 0):
        raise ConfigurationError("time grid must be strictly increasing")
    return t_grid


def run_search(
    params: SearchParams,
    t_grid: Sequence[float],
    tol: Optional[float] = None,
    method: str = "auto",
) -> EvolutionResult:
    """|η,s⟩ 에서 시작한 탐색 전개와 표시 지점 확률 시계열"""
    t_grid = _check_grid(t_grid)
    if method == "auto":
        method = "dense" if params.dimension <= settings.DENSE_CAP else "lanczos"
    p_marked: List[float] = []
    p_eta: List[float] = []
    drift = 0.0
    state0 = hamiltonian_service.initial_state(params)
    for psi in propagate_series(params, state0, t_grid, tol, method):
        drift = max(drift, abs(float(np.linalg.norm(psi)) - 1.0))
        total, spin_resolved = marked_probabilities(params, psi)
        p_marked.append(total)
        p_eta.append(spin_resolved)
    t_star, p_star = refine_peak(t_grid, p_marked)
    _, p_eta_star = refine_peak(t_grid, p_eta)
    unitary = drift <= settings.NORM_DRIFT_TOL
    if not unitary:
        logger.warning(f"⚠️ norm drift {drift:.3g} exceeds {settings.NORM_DRIFT_TOL:.1g}")
    logger.info(
        f"📊 search run - {params.cfg}, dim={params.rep.dim}: t*={t_star:.6g}, p*={p_star:.6g}"
    )
    return EvolutionResult(
        times=t_grid.tolist(),
        p_marked=p_marked,
        p_eta_marked=p_eta,
        t_star=t_star,
        p_star=p_star,
        p_eta_star=p_eta_star,
        norm_drift=drift,
        method=method,
        unitary=unitary,
    )


def two_level_weight(
    params: SearchParams,
    roots: EigenSolution,
    times: Sequence[float],
    rel_tol: float = 1e-6,
) -> np.ndarray:
    """ψ(t) 의 span{ψ+, ψ−} (E± 에 맞는 축퇴 군집 포함) 성분 제곱합, 밀집 계산"""
    propagator = DensePropagator(hamiltonian_service.assemble_dense(params))
    _, plus = hamiltonian_service.eigen_cluster(
        propagator.values, propagator.vectors, roots.E_plus, rel_tol
    )
    _, minus = hamiltonian_service.eigen_cluster(
        propagator.values, propagator.vectors, roots.E_minus, rel_tol
    )
    subspace = np.hstack([plus, minus])
    state0 = hamiltonian_service.initial_state(params).ravel()
    weights = [
        float(np.sum(np.abs(subspace.conj().T @ psi) ** 2))
        for psi in propagator.series(state0, times)
    ]
    return np.array(weights)


def spinless_search(
    cfg: LatticeConfig,
    gamma: float,
    t_grid: Sequence[float],
    w: int = 0,
    tol: Optional[float] = None,
) -> EvolutionResult:
    """스핀 없는 기준 해밀토니안 −γL − |w⟩⟨w| 의 탐색 전개 (|s⟩ 에서 시작)"""
    t_grid = _check_grid(t_grid)
    tol = _check_tol(tol)
    state0 = np.full(cfg.n_sites, 1.0 / np.sqrt(cfg.n_sites), dtype=complex)
    if cfg.n_sites <= settings.DENSE_CAP:
        propagator: IPropagator = DensePropagator(
            hamiltonian_service.spinless_baseline(cfg, gamma, w).toarray()
        )
    else:
        propagator = LanczosPropagator(
            lambda v: hamiltonian_service.apply_spinless(cfg, gamma, w, v),
            4.0 * gamma * cfg.d + 1.0,
        )
    probabilities, drift = [], 0.0
    for psi in propagator.series(state0, t_grid, tol):
        drift = max(drift, abs(float(np.linalg.norm(psi)) - 1.0))
        probabilities.append(float(abs(psi[w]) ** 2))
    t_star, p_star = refine_peak(t_grid, probabilities)
    return EvolutionResult(
        times=t_grid.tolist(),
        p_marked=probabilities,
        p_eta_marked=list(probabilities),
        t_star=t_star,
        p_star=p_star,
        p_eta_star=p_star,
        norm_drift=drift,
        method=propagator.method,
        unitary=drift <= settings.NORM_DRIFT_TOL,
    )


def scaling_point(
    d: int,
    side: int,
    rep_kind: RepKind = RepKind.REDUCED,
    tuning: Optional[Tuning] = None,
    with_dynamics: bool = True,
    grid_points: Optional[int] = None,
    tol: Optional[float] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> ScalingRow:
    """
    한 격자 크기에서 임계점 → 예측 → (선택) 전개

    overrides 는 작업자 프로세스에서 부모의 유효 설정을 복원한다.
    """
    if overrides:
        settings.override(**overrides)
    cfg, point, _, prediction = experiment_point(d, side, tuning)
    row = dict(
        side=side,
        n_sites=cfg.n_sites,
        omega=point.omega,
        gamma=point.gamma,
        E_plus=prediction.E_plus,
        V0=prediction.V0,
        R=prediction.R,
        t_pred=prediction.T,
        amplitude=prediction.amplitude,
        boosted_time=prediction.boosted_time,
    )
    if with_dynamics:
        params = SearchParams(cfg, build_rep(rep_kind, d), point.omega, point.gamma)
        result = run_search(params, default_grid(prediction.T, grid_points), tol)
        row.update(t_star=result.t_star, p_star=result.p_star, p_eta_star=result.p_eta_star)
    return ScalingRow(**row)


def _fit(x: np.ndarray, y: np.ndarray) -> Tuple[float, float, float]:
    result = stats.linregress(x, y)
    return float(result.slope), float(result.intercept), float(result.rvalue**2)


def scaling_study(
    d: int,
    sides: Sequence[int],
    rep_kind: RepKind = RepKind.REDUCED,
    observable: Observable = Observable.T_STAR,
    tuning: Optional[Tuning] = None,
    grid_points: Optional[int] = None,
    tol: Optional[float] = None,
    workers: Optional[int] = None,
) -> ScalingFit:
    """
    격자 크기별 실행 후 log(관측량) 대 log(N) 최소제곱 적합

    Raises:
        ConfigurationError: 격자 크기가 3개 미만인 경우
        NumericalError: 관측량이 양수가 아닌 경우
    """
    sides = sorted(set(int(s) for s in sides))
    if len(sides) < 3:
        raise ConfigurationError("a scaling study needs at least three distinct sides")
    observable = Observable(observable)
    rep_kind = RepKind(rep_kind)
    workers = workers or settings.worker_count()
    snapshot = settings.snapshot() if workers > 1 else None
    args = [
        (d, side, rep_kind, tuning, observable.needs_dynamics(), grid_points, tol, snapshot)
        for side in sides
    ]
    logger.info(
        f"🚀 scaling study - d={d}, sides={sides}, observable={observable.value}, workers={workers}"
    )
    if workers == 1:
        rows = [scaling_point(*a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(args))) as executor:
            rows = list(executor.map(scaling_point, *zip(*args)))
    values = np.array([row.observable(observable) for row in rows])
    if np.any(values <= 0):
        raise NumericalError(f"observable {observable.value} must be positive for a log fit")
    log_n = np.log([row.n_sites for row in rows])
    exponent, intercept, r2 = _fit(log_n, np.log(values))
    log_slope, log_intercept, log_r2 = _fit(log_n, values)
    logger.info(f"✅ scaling fit - exponent={exponent:.4f}, r²={r2:.4f}")
    return ScalingFit(
        d=d,
        rep=rep_kind,
        observable=observable,
        exponent=exponent,
        intercept=intercept,
        r2=r2,
        log_slope=log_slope,
        log_intercept=log_intercept,
        log_r2=log_r2,
        table=rows,
    )
