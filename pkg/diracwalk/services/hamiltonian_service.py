"""
Position-space operators P_j, L, H0 and the search Hamiltonian H = H0 − β|w⟩⟨w|.

States are complex arrays of shape (n_sites, dim); the flat index is
site·dim + spin, which is the ordering of kron(site_operator, spin_operator).
"""

import logging
from typing import Callable, Tuple

import numpy as np
from scipy import linalg, sparse

from ..config import settings
from ..domain import LatticeConfig, SearchParams, SignConvention, SpinRep
from ..utils.error_handling import CapacityError, ConfigurationError
from .clifford_service import beta_eigenbasis
from .lattice_service import neighbor_tables, plane_wave

logger = logging.getLogger(__name__)


def _laplacian_sign(convention: SignConvention) -> float:
    # FLIPPED: H0 = ω Σ α_j P_j − γ β L, 운동량 블록은 +γ c(k) β
    return -1.0 if SignConvention(convention) == SignConvention.FLIPPED else 1.0


def as_state(params: SearchParams, vector: np.ndarray) -> np.ndarray:
    """평탄 벡터 또는 (n_sites, dim) 배열을 상태 배열로 변환"""
    state = np.asarray(vector, dtype=complex)
    if state.size != params.dimension:
        raise ConfigurationError(
            f"state has {state.size} amplitudes, expected {params.dimension}",
            error_code="DIMENSION_MISMATCH",
        )
    return state.reshape(params.state_shape)


def apply_P(cfg: LatticeConfig, j: int, psi: np.ndarray) -> np.ndarray:
    """(P_j ψ)[y] = (i/2)(ψ[y − e_j] − ψ[y + e_j]), 첫 축이 격자점"""
    if not 0 <= j < cfg.d:
        raise ConfigurationError(f"axis {j} out of range for d={cfg.d}")
    plus, minus = neighbor_tables(cfg)
    return 0.5j * (psi[minus[j]] - psi[plus[j]])


def apply_L(cfg: LatticeConfig, psi: np.ndarray) -> np.ndarray:
    """(Lψ)[y] = Σ_j (ψ[y + e_j] + ψ[y − e_j]) − 2d ψ[y]"""
    plus, minus = neighbor_tables(cfg)
    out = -2.0 * cfg.d * psi
    for j in range(cfg.d):
        out = out + psi[plus[j]] + psi[minus[j]]
    return out


def _spin_apply(matrix: np.ndarray, psi: np.ndarray) -> np.ndarray:
    return np.einsum("ab,nb->na", matrix, psi)


def apply_H0(params: SearchParams, psi: np.ndarray) -> np.ndarray:
    """행렬 없는 H0 작용"""
    psi = as_state(params, psi)
    cfg, rep = params.cfg, params.rep
    out = np.zeros_like(psi)
    if params.omega != 0:
        for j in range(cfg.d):
            out += params.omega * _spin_apply(rep.alphas[j], apply_P(cfg, j, psi))
    if params.gamma != 0:
        sign = _laplacian_sign(params.convention)
        out += sign * params.gamma * _spin_apply(rep.beta, apply_L(cfg, psi))
    return out


def apply_H(params: SearchParams, psi: np.ndarray) -> np.ndarray:
    """행렬 없는 H = H0 − β|w⟩⟨w| 작용"""
    out = apply_H0(params, psi)
    if params.oracle:
        psi = as_state(params, psi)
        out[params.w] -= params.rep.beta @ psi[params.w]
    return out


def matvec(params: SearchParams) -> Callable[[np.ndarray], np.ndarray]:
    """평탄 벡터용 H 작용 (전파기 입력)"""
    return lambda v: apply_H(params, v).ravel()


def _shift_matrices(cfg: LatticeConfig):
    plus, minus = neighbor_tables(cfg)
    rows = np.arange(cfg.n_sites)
    ones = np.ones(cfg.n_sites)
    shape = (cfg.n_sites, cfg.n_sites)
    for j in range(cfg.d):
        yield (
            sparse.csr_matrix((ones, (rows, plus[j])), shape=shape),
            sparse.csr_matrix((ones, (rows, minus[j])), shape=shape),
        )


def laplacian_sparse(cfg: LatticeConfig) -> sparse.csr_matrix:
    """희소 라플라시안 L"""
    L = -2.0 * cfg.d * sparse.identity(cfg.n_sites, format="csr")
    for shift_plus, shift_minus in _shift_matrices(cfg):
        L = L + shift_plus + shift_minus
    return L.tocsr()


def momentum_sparse(cfg: LatticeConfig, j: int) -> sparse.csr_matrix:
    """희소 격자 운동량 P_j"""
    shift_plus, shift_minus = list(_shift_matrices(cfg))[j]
    return (0.5j * (shift_minus - shift_plus)).tocsr()


def to_sparse(params: SearchParams) -> sparse.csr_matrix:
    """희소(CSR) H 조립"""
    cfg, rep = params.cfg, params.rep
    H = sparse.csr_matrix((params.dimension, params.dimension), dtype=complex)
    if params.omega != 0:
        for j in range(cfg.d):
            H = H + params.omega * sparse.kron(momentum_sparse(cfg, j), rep.alphas[j])
    if params.gamma != 0:
        sign = _laplacian_sign(params.convention)
        H = H + sign * params.gamma * sparse.kron(laplacian_sparse(cfg), rep.beta)
    if params.oracle:
        marked = sparse.csr_matrix(
            ([1.0], ([params.w], [params.w])), shape=(cfg.n_sites, cfg.n_sites)
        )
        H = H - sparse.kron(marked, rep.beta)
    return H.tocsr()


def _check_dense_cap(dimension: int) -> None:
    if dimension > settings.DENSE_CAP:
        raise CapacityError(
            f"dense dimension {dimension} exceeds the cap {settings.DENSE_CAP}",
            error_code="DENSE_CAP",
            context={"dimension": dimension},
        )


def assemble_dense(params: SearchParams) -> np.ndarray:
    """
    밀집 에르미트 행렬 H

    Raises:
        CapacityError: n_sites · dim 이 밀집 한도(기본 5000)를 넘는 경우
    """
    _check_dense_cap(params.dimension)
    H = to_sparse(params).toarray()
    logger.debug(f"🧮 dense H assembled - {params.cfg}, dim={params.rep.dim}")
    return H


def hermiticity_violation(matrix: np.ndarray) -> float:
    """max |H − H†|"""
    return float(np.max(np.abs(matrix - matrix.conj().T)))


def beta_sector(matrix: np.ndarray, rep: SpinRep, b: int) -> np.ndarray:
    """β = b 스핀 부분공간으로 제한한 블록 Q† H Q"""
    basis = beta_eigenbasis(rep, b)
    n_sites = matrix.shape[0] // rep.dim
    projector = sparse.kron(sparse.identity(n_sites, format="csr"), basis).tocsr()
    left = projector.conj().T @ matrix
    return np.asarray((projector.T @ left.T).T)


def spinless_baseline(cfg: LatticeConfig, gamma: float, w: int = 0, oracle: bool = True):
    """스핀 없는 기준 해밀토니안 −γL − |w⟩⟨w| (희소)"""
    if not 0 <= w < cfg.n_sites:
        raise ConfigurationError(f"marked site {w} out of range", error_code="BAD_SITE")
    H = -gamma * laplacian_sparse(cfg)
    if oracle:
        H = H - sparse.csr_matrix(([1.0], ([w], [w])), shape=(cfg.n_sites, cfg.n_sites))
    return H.tocsr()


def apply_spinless(cfg: LatticeConfig, gamma: float, w: int, psi: np.ndarray) -> np.ndarray:
    """행렬 없는 기준 해밀토니안 작용"""
    out = -gamma * apply_L(cfg, psi)
    out[w] -= psi[w]
    return out


def spinless_critical_gamma_dense(cfg: LatticeConfig) -> float:
    """⟨w|(−L)^+|w⟩ 를 밀집 유사역행렬로 계산한 스핀 없는 임계 γ"""
    _check_dense_cap(cfg.n_sites)
    pseudo_inverse = linalg.pinvh(-laplacian_sparse(cfg).toarray())
    return float(pseudo_inverse[0, 0])


def norm_bound(params: SearchParams) -> float:
    """스펙트럼 반경 상한 ‖H‖ ≤ ωd + 4γd + 1"""
    return params.omega * params.cfg.d + 4.0 * params.gamma * params.cfg.d + 1.0


def initial_state(params: SearchParams) -> np.ndarray:
    """|η, s⟩ = (1/√N) Σ_x |x⟩ ⊗ |η⟩"""
    uniform = np.full(params.cfg.n_sites, 1.0 / np.sqrt(params.cfg.n_sites), dtype=complex)
    return np.outer(uniform, params.rep.eta)


def marked_state(params: SearchParams) -> np.ndarray:
    """|η, w⟩"""
    state = np.zeros(params.state_shape, dtype=complex)
    state[params.w] = params.rep.eta
    return state


def momentum_state(cfg: LatticeConfig, m, spin: np.ndarray) -> np.ndarray:
    """평면파 ⊗ 스핀 곱 상태"""
    spin = np.asarray(spin, dtype=complex)
    return np.outer(plane_wave(cfg, m), spin / np.linalg.norm(spin))


def eigen_cluster(
    values: np.ndarray, vectors: np.ndarray, target: float, rel_tol: float = 1e-6
) -> Tuple[float, np.ndarray]:
    """
    target 에 가장 가까운 고유값과 그 축퇴 군집(상대 rel_tol) 의 고유벡터

    Returns:
        (고유값, vectors[:, 군집]) - 군집 열 개수는 축퇴도
    """
    nearest = values[int(np.argmin(np.abs(values - target)))]
    cluster = np.abs(values - nearest) <= rel_tol * max(abs(nearest), 1e-300)
    return float(nearest), vectors[:, cluster]


def eta_overlap(params: SearchParams, vectors: np.ndarray) -> float:
    """√(Σ_cluster |⟨η,w|v⟩|²)"""
    dim = params.rep.dim
    block = vectors.reshape(params.cfg.n_sites, dim, -1)[params.w]
    return float(np.sqrt(np.sum(np.abs(params.rep.eta.conj() @ block) ** 2)))
