"""Time-evolution back-ends: exact dense eigendecomposition and a Lanczos propagator."""

import logging
from typing import Callable, Iterator, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from ..config import settings
from ..services.interfaces import IPropagator
from ..utils.error_handling import ConfigurationError, ConvergenceError

logger = logging.getLogger(__name__)

MatVec = Callable[[np.ndarray], np.ndarray]


def _check_times(times: Sequence[float]) -> np.ndarray:
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise ConfigurationError("time grid must be a nonempty 1-D sequence")
    if np.any(np.diff(times) <= 0):
        raise ConfigurationError("time grid must be strictly increasing")
    return times


class DensePropagator(IPropagator):
    """고유분해 한 번으로 e^{-iHt} 를 정확히 적용"""

    method = "dense"

    def __init__(self, hamiltonian: np.ndarray):
        self.values, self.vectors = linalg.eigh(hamiltonian)
        logger.debug(f"🧮 dense propagator ready - dim={self.values.size}")

    def _coefficients(self, state: np.ndarray) -> np.ndarray:
        return self.vectors.conj().T @ state

    def evolve(self, state: np.ndarray, t: float, tol: float = 0.0) -> np.ndarray:
        coefficients = self._coefficients(state)
        return self.vectors @ (np.exp(-1j * self.values * t) * coefficients)

    def series(
        self, state: np.ndarray, times: Sequence[float], tol: float = 0.0
    ) -> Iterator[np.ndarray]:
        coefficients = self._coefficients(state)
        for t in _check_times(times):
            yield self.vectors @ (np.exp(-1j * self.values * t) * coefficients)


class LanczosPropagator(IPropagator):
    """
    행렬 없는 란초스(크릴로프) 단기 전파기

    단계 크기는 ‖H‖ 상한에서 시작하고, 사후 오차 추정
    β_m |[e^{-iτT}]_{m,1}| 가 단계 예산 tol·τ/t_total 을 넘으면 절반으로 줄인다.
    """

    method = "lanczos"

    def __init__(
        self,
        matvec: MatVec,
        norm_bound: float,
        krylov_dim: Optional[int] = None,
        max_steps: Optional[int] = None,
    ):
        if not norm_bound > 0:
            raise ConfigurationError("norm bound must be positive")
        self.matvec = matvec
        self.norm_bound = float(norm_bound)
        self.krylov_dim = krylov_dim or settings.KRYLOV_DIM
        self.max_steps = max_steps or settings.KRYLOV_MAX_STEPS
        self.steps_taken = 0

    def _initial_step(self) -> float:
        return 0.5 * self.krylov_dim / self.norm_bound

    def _krylov_step(self, state: np.ndarray, tau: float) -> Tuple[np.ndarray, float]:
        """상태를 τ 만큼 전개하고 오차 추정치를 함께 반환"""
        norm = np.linalg.norm(state)
        if norm == 0:
            return state.copy(), 0.0
        m = self.krylov_dim
        basis = np.zeros((m + 1, state.size), dtype=complex)
        alpha = np.zeros(m)
        beta = np.zeros(m)
        basis[0] = state / norm
        size = m
        for j in range(m):
            w = self.matvec(basis[j])
            alpha[j] = np.vdot(basis[j], w).real
            # 완전 재직교화
            w = w - basis[: j + 1].T @ (basis[: j + 1].conj() @ w)
            w = w - basis[: j + 1].T @ (basis[: j + 1].conj() @ w)
            beta[j] = np.linalg.norm(w)
            if beta[j] < 1e-14 * self.norm_bound:
                size = j + 1
                break
            basis[j + 1] = w / beta[j]
        values, vectors = linalg.eigh_tridiagonal(alpha[:size], beta[: size - 1])
        coefficients = vectors @ (np.exp(-1j * tau * values) * vectors[0])
        new_state = norm * (basis[:size].T @ coefficients)
        error = 0.0 if size < m else norm * beta[m - 1] * abs(coefficients[-1])
        return new_state, float(error)

    def _propagate(self, state: np.ndarray, t: float, tol: float, total: float) -> np.ndarray:
        direction = 1.0 if t >= 0 else -1.0
        remaining = abs(t)
        tau = self._initial_step()
        while remaining > 0:
            tau = min(tau, remaining)
            budget = tol * tau / total
            new_state, error = self._krylov_step(state, direction * tau)
            self.steps_taken += 1
            if self.steps_taken > self.max_steps:
                raise ConvergenceError(
                    f"Lanczos propagation exceeded {self.max_steps} steps",
                    error_code="STEP_BUDGET",
                    context={"remaining_time": remaining, "step": tau},
                )
            if error > budget:
                tau *= 0.5
                if tau < 1e-12 * total:
                    raise ConvergenceError(
                        "Lanczos step size collapsed below resolution", error_code="STEP_COLLAPSE"
                    )
                continue
            state = new_state
            remaining -= tau
            if error < 0.1 * budget:
                tau = min(1.5 * tau, self._initial_step())
        return state

    def evolve(self, state: np.ndarray, t: float, tol: float) -> np.ndarray:
        if t == 0:
            return state.copy()
        self.steps_taken = 0
        return self._propagate(state, t, tol, abs(t))

    def series(
        self, state: np.ndarray, times: Sequence[float], tol: float
    ) -> Iterator[np.ndarray]:
        times = _check_times(times)
        self.steps_taken = 0
        total = max(abs(times[-1]), abs(times[0]), 1e-300)
        current, clock = state, 0.0
        for t in times:
            if t != clock:
                current = self._propagate(current, t - clock, tol, total)
                clock = t
            yield current
        logger.debug(f"📊 Lanczos series - points={times.size}, steps={self.steps_taken}")
