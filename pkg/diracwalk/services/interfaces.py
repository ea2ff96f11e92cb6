"""Interfaces for interchangeable numerical back-ends and the validation suite."""

from abc import ABC, abstractmethod
from typing import Callable, Iterator, Sequence, Tuple

import numpy as np

from ..models import ValidationReport


class IBrillouinIntegrator(ABC):
    """브릴루앙 영역 적분기 인터페이스: (1/(2π)^d) ∫_{[-π,π]^d} f(k) d^dk"""

    @abstractmethod
    def nodes(self, d: int) -> Tuple[np.ndarray, np.ndarray]:
        """적분 노드 k (n, d) 와 가중치 (n,)"""
        pass

    @abstractmethod
    def integrate(self, kernel: Callable[[np.ndarray], np.ndarray], d: int) -> float:
        """커널 적분값"""
        pass


class IPropagator(ABC):
    """시간 전개 연산자 e^{-iHt} 인터페이스"""

    method: str = ""

    @abstractmethod
    def evolve(self, state: np.ndarray, t: float, tol: float) -> np.ndarray:
        """state 를 시간 t 만큼 전개"""
        pass

    @abstractmethod
    def series(
        self, state: np.ndarray, times: Sequence[float], tol: float
    ) -> Iterator[np.ndarray]:
        """증가하는 시간 격자 위 상태들을 순서대로 생성"""
        pass


class IValidationService(ABC):
    """불변식 검증 스위트 인터페이스"""

    @abstractmethod
    def run(self, level: str) -> ValidationReport:
        """fast / full 수준의 검사 실행"""
        pass
