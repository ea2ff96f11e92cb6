"""Spin-operator representations α_1..α_d, β and their algebra checks."""

import logging
import math
from functools import lru_cache
from typing import List, Optional, Sequence

import numpy as np

from ..config import settings
from ..domain import MAX_DIM, MIN_DIM, DispersionParams, RepKind, SignConvention, SpinRep
from ..models import AlgebraReport
from ..utils.error_handling import ConfigurationError

logger = logging.getLogger(__name__)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


def _check_dimension(d: int) -> None:
    if not MIN_DIM <= d <= MAX_DIM:
        raise ConfigurationError(
            f"dimension must be in [{MIN_DIM}, {MAX_DIM}]: {d}", error_code="BAD_DIMENSION"
        )


@lru_cache(maxsize=8)
def _anticommuting_set(pairs: int) -> tuple:
    """
    2·pairs+1 개의 서로 반교환하는 에르미트 involution (2^pairs 차원)

    pairs=1: (X, Y, Z). 한 단계마다 기존 원소 g 를 X⊗g 로 바꾸고 Y⊗I, Z⊗I 를 추가한다.
    마지막 원소는 항상 (0,0) 성분이 +1 인 대각 행렬이다.
    """
    if pairs == 1:
        return (SIGMA_X, SIGMA_Y, SIGMA_Z)
    previous = _anticommuting_set(pairs - 1)
    identity = np.eye(2 ** (pairs - 1), dtype=complex)
    return tuple(np.kron(SIGMA_X, g) for g in previous) + (
        np.kron(SIGMA_Y, identity),
        np.kron(SIGMA_Z, identity),
    )


def build_full_rep(d: int, eta: Optional[Sequence[complex]] = None) -> SpinRep:
    """2^⌈d/2⌉ 차원 완전 클리퍼드 표현"""
    _check_dimension(d)
    generators = _anticommuting_set(math.ceil(d / 2))
    dim = generators[0].shape[0]
    if eta is None:
        eta_vector = np.zeros(dim, dtype=complex)
        eta_vector[0] = 1.0
    else:
        eta_vector = np.asarray(eta, dtype=complex)
        if eta_vector.shape != (dim,):
            raise ConfigurationError(f"eta must have length {dim}")
        eta_vector = eta_vector / np.linalg.norm(eta_vector)
    rep = SpinRep(
        kind=RepKind.FULL,
        d=d,
        alphas=np.array(generators[:d]),
        beta=generators[-1].copy(),
        eta=eta_vector,
    )
    logger.debug(f"🧮 full rep built - d={d}, dim={dim}")
    return rep


def build_reduced_rep(d: int) -> SpinRep:
    """(d+1) 차원 축소 표현: α_j = |0⟩⟨j| + |j⟩⟨0|, β = 2|0⟩⟨0| − I, η = |0⟩"""
    _check_dimension(d)
    dim = d + 1
    alphas = np.zeros((d, dim, dim), dtype=complex)
    for j in range(1, dim):
        alphas[j - 1, 0, j] = 1.0
        alphas[j - 1, j, 0] = 1.0
    beta = -np.eye(dim, dtype=complex)
    beta[0, 0] = 1.0
    eta = np.zeros(dim, dtype=complex)
    eta[0] = 1.0
    return SpinRep(kind=RepKind.REDUCED, d=d, alphas=alphas, beta=beta, eta=eta)


def build_rep(kind: RepKind, d: int) -> SpinRep:
    """표현 종류에 따른 생성"""
    if RepKind(kind) == RepKind.FULL:
        return build_full_rep(d)
    return build_reduced_rep(d)


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b + b @ a


def _relation_residuals(rep: SpinRep) -> List[np.ndarray]:
    """{α_j,α_k} − 2δ_jk I, {α_j,β}, β² − I"""
    identity = np.eye(rep.dim, dtype=complex)
    residuals = []
    for j in range(rep.d):
        for k in range(j, rep.d):
            target = 2.0 * identity if j == k else 0.0 * identity
            residuals.append(anticommutator(rep.alphas[j], rep.alphas[k]) - target)
        residuals.append(anticommutator(rep.alphas[j], rep.beta))
    residuals.append(rep.beta @ rep.beta - identity)
    return residuals


def verify_algebra(
    rep: SpinRep, on_full_space: Optional[bool] = None, tol: Optional[float] = None
) -> AlgebraReport:
    """
    대수 관계 검사

    Args:
        rep: 스핀 표현
        on_full_space: True면 행렬 항등식으로 검사, False면 η 에 작용시켜 검사.
            None이면 완전 표현은 행렬로, 축소 표현은 η 위에서 검사한다.
        tol: 통과 기준 (기본 1e-14)

    Returns:
        AlgebraReport
    """
    tol = settings.ALGEBRA_TOL if tol is None else tol
    full_space = rep.is_full if on_full_space is None else on_full_space
    residuals = _relation_residuals(rep)
    if full_space:
        violation = max(float(np.max(np.abs(r))) for r in residuals)
    else:
        violation = max(float(np.max(np.abs(r @ rep.eta))) for r in residuals)
        # β|η⟩ = |η⟩ 는 축소 표현의 정의 조건
        violation = max(violation, float(np.max(np.abs(rep.beta @ rep.eta - rep.eta))))
    hermitian = max(float(np.max(np.abs(g - g.conj().T))) for g in rep.generators())
    return AlgebraReport(
        kind=rep.kind,
        d=rep.d,
        dim=rep.dim,
        on_eta_only=not full_space,
        max_violation=violation,
        hermitian_violation=hermitian,
        passed=violation <= tol and hermitian <= tol,
    )


def momentum_block(
    rep: SpinRep,
    k: Sequence[float],
    params: DispersionParams,
    convention: SignConvention = SignConvention.FLIPPED,
) -> np.ndarray:
    """운동량 블록 B(k) = ω Σ sin(k_j) α_j ± γ c(k) β"""
    k = np.asarray(k, dtype=float)
    c = 2.0 * np.sum(1.0 - np.cos(k))
    block = params.omega * np.tensordot(np.sin(k), rep.alphas, axes=1)
    sign = 1.0 if convention == SignConvention.FLIPPED else -1.0
    return block + sign * params.gamma * c * rep.beta


def beta_eigenbasis(rep: SpinRep, b: int) -> np.ndarray:
    """β 의 고유값 b 고유공간 정규직교 기저 (dim, m)"""
    values, vectors = np.linalg.eigh(rep.beta)
    selected = vectors[:, np.isclose(values, float(b))]
    if selected.shape[1] == 0:
        raise ConfigurationError(f"beta has no eigenvalue {b}")
    return selected
