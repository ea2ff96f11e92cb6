"""
에러 처리 유틸리티
"""
import logging
import traceback
from functools import wraps
from typing import Any, Callable, Dict, List, Optional

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


class DiracWalkError(Exception):
    """DiracWalk 커스텀 예외 클래스"""

    exit_code = EXIT_NUMERICAL

    def __init__(
        self,
        message: str,
        error_code: Optional[str] = None,
        context: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(message)
        self.message = message
        self.error_code = error_code
        self.context = context or {}


class ConfigurationError(DiracWalkError, ValueError):
    """입력 파라미터 검증 오류"""

    exit_code = EXIT_USAGE


class NumericalError(DiracWalkError):
    """수치 계산 오류"""

    exit_code = EXIT_NUMERICAL


class ResolventSingularError(NumericalError):
    """탐침 에너지가 스펙트럼 갭에 닿거나 넘어선 경우"""
    pass


class NoCriticalSolutionError(NumericalError):
    """U(0)=1 해가 존재하지 않는 경우"""
    pass


class BracketError(NumericalError):
    """구간 양 끝에서 부호 변화가 없는 경우"""
    pass


class ConvergenceError(NumericalError):
    """반복 계산이 예산 안에 수렴하지 않은 경우"""
    pass


class CapacityError(NumericalError):
    """밀집 행렬 또는 메모리 한도 초과"""
    pass


class DivergentIntegralError(NumericalError):
    """적외선 발산 적분 요청"""
    pass


class ExportError(DiracWalkError):
    """파일 출력 오류"""

    exit_code = EXIT_IO


def exit_code_of(error: BaseException) -> int:
    """예외를 CLI 종료 코드로 변환"""
    if isinstance(error, DiracWalkError):
        return error.exit_code
    if isinstance(error, OSError):
        return EXIT_IO
    if isinstance(error, ValueError):
        return EXIT_USAGE
    return EXIT_NUMERICAL


def exit_code_boundary(error_message: str = "실행 중 오류가 발생했습니다"):
    """
    종료 코드 경계 데코레이터

    Args:
        error_message (str): 로그에 남길 에러 메시지
    """
    def decorator(func: Callable[..., int]) -> Callable[..., int]:
        @wraps(func)
        def wrapper(*args, **kwargs) -> int:
            logger = logging.getLogger(func.__module__)
            try:
                return func(*args, **kwargs)
            except DiracWalkError as e:
                logger.error(f"💥 {error_message}: {e.message}")
                if e.context:
                    logger.debug(f"🔍 Error context: {e.context}")
                return e.exit_code
            except Exception as e:
                logger.error(f"💥 Unexpected error in {func.__name__}: {str(e)}")
                logger.debug(f"🔍 Traceback: {traceback.format_exc()}")
                return exit_code_of(e)
        return wrapper
    return decorator


class ErrorReporter:
    """검증 실패 리포팅 클래스"""

    def __init__(self):
        self.logger = logging.getLogger("diracwalk.ErrorReporter")
        self.error_counts: Dict[str, int] = {}
        self.error_details: List[Dict[str, Any]] = []

    def report_error(
        self,
        error: Exception,
        context: Optional[Dict[str, Any]] = None,
        severity: str = "error",
    ):
        """
        에러 리포트

        Args:
            error (Exception): 발생한 에러
            context (Optional[Dict[str, Any]]): 에러 컨텍스트
            severity (str): 심각도 ("warning", "error", "critical")
        """
        error_type = type(error).__name__
        self.error_counts[error_type] = self.error_counts.get(error_type, 0) + 1
        self.error_details.append(
            {
                "type": error_type,
                "message": str(error),
                "context": context or {},
                "severity": severity,
            }
        )

        log_method = getattr(self.logger, severity)
        log_method(f"📊 Error Report: {error_type} - {error}")
        if context:
            log_method(f"🔍 Context: {context}")

    def get_error_summary(self) -> Dict[str, Any]:
        """에러 요약 정보 조회"""
        return {
            "total_errors": len(self.error_details),
            "error_counts": dict(self.error_counts),
            "most_common_error": max(self.error_counts.items(), key=lambda x: x[1])[0]
            if self.error_counts
            else None,
            "recent_errors": self.error_details[-5:],
        }

    def clear_error_history(self):
        """에러 히스토리 초기화"""
        self.error_counts.clear()
        self.error_details.clear()
