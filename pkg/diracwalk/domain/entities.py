"""Domain entities: lattice geometry and spin representations."""

from dataclasses import dataclass, field, replace
from typing import List

import numpy as np

from .value_objects import DispersionParams, RepKind, SignConvention
from ..utils.error_handling import ConfigurationError

MIN_DIM = 1
MAX_DIM = 6


@dataclass(frozen=True)
class LatticeConfig:
    """주기 경계 d차원 입방 격자"""

    d: int
    side: int
    n_sites: int = field(init=False)

    def __post_init__(self):
        if not MIN_DIM <= self.d <= MAX_DIM:
            raise ConfigurationError(
                f"dimension must be in [{MIN_DIM}, {MAX_DIM}]: {self.d}",
                error_code="BAD_DIMENSION",
            )
        if self.side < 2:
            raise ConfigurationError(
                f"side must be at least 2: {self.side}", error_code="BAD_SIDE"
            )
        object.__setattr__(self, "n_sites", self.side**self.d)

    @property
    def shape(self) -> tuple:
        return (self.side,) * self.d

    def __str__(self) -> str:
        return f"d={self.d}, side={self.side}, N={self.n_sites}"


@dataclass(frozen=True, eq=False)
class SpinRep:
    """α_1..α_d, β 스핀 연산자 표현과 기준 스핀 상태 η"""

    kind: RepKind
    d: int
    alphas: np.ndarray  # (d, dim, dim)
    beta: np.ndarray  # (dim, dim)
    eta: np.ndarray  # (dim,)

    def __post_init__(self):
        if self.alphas.shape != (self.d, self.dim, self.dim):
            raise ConfigurationError(
                f"alphas must have shape (d, dim, dim), got {self.alphas.shape}"
            )
        if self.beta.shape != (self.dim, self.dim) or self.eta.shape != (self.dim,):
            raise ConfigurationError("beta/eta shapes do not match the spin dimension")
        if not np.isclose(np.linalg.norm(self.eta), 1.0, atol=1e-12):
            raise ConfigurationError("eta must be a unit spin vector")
        for array in (self.alphas, self.beta, self.eta):
            array.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.beta.shape[0]

    @property
    def is_full(self) -> bool:
        return self.kind == RepKind.FULL

    def generators(self) -> List[np.ndarray]:
        """[α_1, ..., α_d, β]"""
        return [*self.alphas, self.beta]


@dataclass(frozen=True, eq=False)
class SearchParams:
    """탐색 해밀토니안 H = H0 − β|w⟩⟨w| 의 파라미터"""

    cfg: LatticeConfig
    rep: SpinRep
    omega: float
    gamma: float
    w: int = 0
    convention: SignConvention = SignConvention.FLIPPED
    oracle: bool = True

    def __post_init__(self):
        if self.rep.d != self.cfg.d:
            raise ConfigurationError(
                f"spin representation is for d={self.rep.d}, lattice has d={self.cfg.d}",
                error_code="DIMENSION_MISMATCH",
            )
        if not 0 <= self.w < self.cfg.n_sites:
            raise ConfigurationError(
                f"marked site {self.w} out of range [0, {self.cfg.n_sites})",
                error_code="BAD_SITE",
            )
        # ω 또는 γ 가 0 인 경우(스핀 없는 극한, naive 해밀토니안)도 허용
        DispersionParams(self.omega, self.gamma)

    @property
    def dispersion(self) -> DispersionParams:
        return DispersionParams(self.omega, self.gamma)

    @property
    def dimension(self) -> int:
        """전체 힐베르트 공간 차원 n_sites · dim"""
        return self.cfg.n_sites * self.rep.dim

    @property
    def state_shape(self) -> tuple:
        return (self.cfg.n_sites, self.rep.dim)

    def with_marked_site(self, w: int) -> "SearchParams":
        return replace(self, w=w)

    def without_oracle(self) -> "SearchParams":
        return replace(self, oracle=False)
