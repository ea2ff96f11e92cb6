"""Brillouin-zone quadrature adapters (tensor-product Gauss–Legendre, Sobol QMC)."""

import logging
from typing import Callable, Dict, Optional, Tuple

import numpy as np
from scipy.stats import qmc

from ..config import settings
from ..services.interfaces import IBrillouinIntegrator

logger = logging.getLogger(__name__)


def _pyramid_map(t: np.ndarray, u: np.ndarray, d: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    피라미드 좌표 (t, u_2..u_d) ∈ [0,1]^d → k = π t (1, u_2, ..., u_d)

    피적분 함수가 축 순열과 부호 반전에 대해 대칭이므로 [-π,π]^d 는
    k_1 이 최대 성분인 피라미드 하나의 2^d·d 배이다. 야코비안 t^{d-1} 이
    k=0 의 1/k² 특이점을 상쇄한다. 반환 가중치는 1/(2π)^d 규격화를 포함한다.
    """
    k = np.empty((t.size, d))
    k[:, 0] = np.pi * t
    if d > 1:
        k[:, 1:] = np.pi * t[:, None] * u
    weights = d * t ** (d - 1)
    return k, weights


class TensorProductIntegrator(IBrillouinIntegrator):
    """
    텐서곱 가우스-르장드르 적분기 (d ≤ 3)

    반지름 방향 t 는 원점 쪽으로 기하급수적으로 세분한 패널을 쓴다.
    """

    def __init__(
        self,
        n_nodes: Optional[int] = None,
        panels: Optional[int] = None,
        ratio: Optional[float] = None,
    ):
        self.n_nodes = n_nodes or settings.GL_NODES
        self.panels = panels or settings.RADIAL_PANELS
        self.ratio = ratio or settings.RADIAL_RATIO
        self._cache: Dict[int, Tuple[np.ndarray, np.ndarray]] = {}

    def _radial_rule(self) -> Tuple[np.ndarray, np.ndarray]:
        x, w = np.polynomial.legendre.leggauss(self.n_nodes)
        edges = np.concatenate(([0.0], self.ratio ** np.arange(self.panels, -1, -1)))
        points, weights = [], []
        for a, b in zip(edges[:-1], edges[1:]):
            points.append(0.5 * (b - a) * x + 0.5 * (a + b))
            weights.append(0.5 * (b - a) * w)
        return np.concatenate(points), np.concatenate(weights)

    def nodes(self, d: int) -> Tuple[np.ndarray, np.ndarray]:
        if d not in self._cache:
            t, wt = self._radial_rule()
            x, w = np.polynomial.legendre.leggauss(self.n_nodes)
            x, w = 0.5 * (x + 1.0), 0.5 * w
            grids = np.meshgrid(t, *([x] * (d - 1)), indexing="ij")
            wgrids = np.meshgrid(wt, *([w] * (d - 1)), indexing="ij")
            t_flat = grids[0].ravel()
            u_flat = np.stack([g.ravel() for g in grids[1:]], axis=-1) if d > 1 else None
            w_flat = np.prod([g.ravel() for g in wgrids], axis=0)
            k, jacobian = _pyramid_map(t_flat, u_flat, d)
            self._cache[d] = (k, w_flat * jacobian)
            logger.debug(f"📐 tensor-product nodes - d={d}, n={t_flat.size}")
        return self._cache[d]

    def integrate(self, kernel: Callable[[np.ndarray], np.ndarray], d: int) -> float:
        k, weights = self.nodes(d)
        return float(np.dot(weights, kernel(k)))


class SobolIntegrator(IBrillouinIntegrator):
    """스크램블 소볼 준몬테카를로 적분기 (d ∈ {4, 5})"""

    def __init__(self, n_points: Optional[int] = None, seed: Optional[int] = None):
        self.n_points = n_points or settings.QMC_POINTS
        self.seed = settings.QMC_SEED if seed is None else seed
        self._cache: Dict[int, Tuple[np.ndarray, np.ndarray]] = {}

    def nodes(self, d: int) -> Tuple[np.ndarray, np.ndarray]:
        if d not in self._cache:
            m = int(np.ceil(np.log2(self.n_points)))
            sampler = qmc.Sobol(d=d, scramble=True, seed=self.seed)
            points = sampler.random_base2(m=m)
            k, jacobian = _pyramid_map(points[:, 0], points[:, 1:], d)
            self._cache[d] = (k, jacobian / points.shape[0])
            logger.debug(f"🎲 Sobol nodes - d={d}, n=2^{m}, seed={self.seed}")
        return self._cache[d]

    def integrate(self, kernel: Callable[[np.ndarray], np.ndarray], d: int) -> float:
        k, weights = self.nodes(d)
        return float(np.dot(weights, kernel(k)))


def integrator_for(d: int, seed: Optional[int] = None) -> IBrillouinIntegrator:
    """차원에 맞는 적분기 선택 (d ≤ 3: 텐서곱, 그 외: 소볼)"""
    if d <= 3:
        return TensorProductIntegrator()
    return SobolIntegrator(seed=seed)
