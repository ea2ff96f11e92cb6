"""Periodic cubic lattice geometry, site indexing and the momentum grid."""

import itertools
import logging
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np

from ..config import settings
from ..domain import LatticeConfig, MomentumVector
from ..utils.error_handling import CapacityError, ConfigurationError

logger = logging.getLogger(__name__)


def build_lattice(d: int, side: int) -> LatticeConfig:
    """격자 설정 생성 (차원/크기/메모리 한도 검증)"""
    if not isinstance(d, (int, np.integer)) or not isinstance(side, (int, np.integer)):
        raise ConfigurationError("d and side must be integers")
    # side^d 는 정수 연산으로 한도와 비교 (부동소수점 반올림 없음)
    if 2 <= side and 1 <= d <= 6 and int(side) ** int(d) > settings.MAX_SITES:
        raise CapacityError(
            f"side^d = {side}^{d} exceeds the site cap {settings.MAX_SITES}",
            error_code="SITE_CAP",
            context={"d": d, "side": side},
        )
    return LatticeConfig(int(d), int(side))


def axis_momenta(side: int) -> List[int]:
    """축 하나의 운동량 지표: 0, +1, -1, +2, -2, ... (짝수 크기는 +side/2 로 끝남)"""
    indices = [0]
    for m in range(1, (side - 1) // 2 + 1):
        indices.extend([m, -m])
    if side % 2 == 0:
        indices.append(side // 2)
    return indices


def momentum_grid(cfg: LatticeConfig) -> List[MomentumVector]:
    """전체 운동량 격자 (영벡터가 첫 번째)"""
    axis = axis_momenta(cfg.side)
    return [MomentumVector(tuple(m), cfg.side) for m in itertools.product(axis, repeat=cfg.d)]


@lru_cache(maxsize=32)
def momentum_array(cfg: LatticeConfig) -> np.ndarray:
    """momentum_grid 와 같은 순서의 k 벡터 배열 (n_sites, d)"""
    axis = 2.0 * np.pi * np.asarray(axis_momenta(cfg.side), dtype=float) / cfg.side
    mesh = np.meshgrid(*([axis] * cfg.d), indexing="ij")
    k = np.stack([component.ravel() for component in mesh], axis=-1)
    k.setflags(write=False)
    return k


def site_coordinates(cfg: LatticeConfig, x: int) -> Tuple[int, ...]:
    """행 우선(row-major) 지표 → 축 좌표"""
    _check_site(cfg, x)
    return tuple(int(c) for c in np.unravel_index(x, cfg.shape))


def site_index(cfg: LatticeConfig, coords: Sequence[int]) -> int:
    """축 좌표 → 행 우선 지표 (주기 경계 적용)"""
    if len(coords) != cfg.d:
        raise ConfigurationError(f"expected {cfg.d} coordinates, got {len(coords)}")
    wrapped = tuple(int(c) % cfg.side for c in coords)
    return int(np.ravel_multi_index(wrapped, cfg.shape))


def translate(cfg: LatticeConfig, x: int, shift: Sequence[int]) -> int:
    """x + shift (주기 경계)"""
    coords = site_coordinates(cfg, x)
    return site_index(cfg, [c + s for c, s in zip(coords, shift)])


@lru_cache(maxsize=32)
def neighbor_tables(cfg: LatticeConfig) -> Tuple[np.ndarray, np.ndarray]:
    """축별 x+e_j, x-e_j 지표 표 (각각 (d, n_sites))"""
    coords = np.indices(cfg.shape).reshape(cfg.d, -1)
    plus = np.empty((cfg.d, cfg.n_sites), dtype=np.intp)
    minus = np.empty((cfg.d, cfg.n_sites), dtype=np.intp)
    for j in range(cfg.d):
        shifted = coords.copy()
        shifted[j] = (coords[j] + 1) % cfg.side
        plus[j] = np.ravel_multi_index(shifted, cfg.shape)
        shifted[j] = (coords[j] - 1) % cfg.side
        minus[j] = np.ravel_multi_index(shifted, cfg.shape)
    plus.setflags(write=False)
    minus.setflags(write=False)
    logger.debug(f"🧭 neighbor tables built - {cfg}")
    return plus, minus


def neighbors(cfg: LatticeConfig, x: int) -> List[Tuple[int, int, int]]:
    """각 축 j 에 대해 (j, x+e_j, x-e_j)"""
    _check_site(cfg, x)
    plus, minus = neighbor_tables(cfg)
    return [(j, int(plus[j, x]), int(minus[j, x])) for j in range(cfg.d)]


def translation_permutation(cfg: LatticeConfig, shift: Sequence[int]) -> np.ndarray:
    """perm[x] = x + shift 인 지표 배열"""
    coords = np.indices(cfg.shape).reshape(cfg.d, -1)
    moved = (coords + np.asarray(shift, dtype=np.intp).reshape(cfg.d, 1)) % cfg.side
    return np.ravel_multi_index(moved, cfg.shape)


def plane_wave(cfg: LatticeConfig, m: Sequence[int]) -> np.ndarray:
    """정규화된 평면파 (1/√N) e^{ik·x}"""
    coords = np.indices(cfg.shape).reshape(cfg.d, -1)
    k = 2.0 * np.pi * np.asarray(m, dtype=float) / cfg.side
    return np.exp(1j * (k @ coords)) / np.sqrt(cfg.n_sites)


def _check_site(cfg: LatticeConfig, x: int) -> None:
    if not 0 <= x < cfg.n_sites:
        raise ConfigurationError(
            f"site index {x} out of range [0, {cfg.n_sites})", error_code="BAD_SITE"
        )
