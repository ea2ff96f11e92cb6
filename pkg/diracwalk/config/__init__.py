"""
DiracWalk 설정 관리 모듈
"""
import os
from typing import Dict, Any

from dotenv import load_dotenv

load_dotenv()


def _env_float(key: str, default: float) -> float:
    return float(os.getenv(key, str(default)))


def _env_int(key: str, default: int) -> int:
    return int(os.getenv(key, str(default)))


class Settings:
    """시뮬레이션 설정 클래스"""

    # 격자 크기 제한
    MAX_SITES = _env_int("DIRACWALK_MAX_SITES", 2_000_000)
    DENSE_CAP = _env_int("DIRACWALK_DENSE_CAP", 5000)

    # 브릴루앙 영역 적분 설정
    GL_NODES = _env_int("DIRACWALK_GL_NODES", 24)
    RADIAL_PANELS = _env_int("DIRACWALK_RADIAL_PANELS", 14)
    RADIAL_RATIO = _env_float("DIRACWALK_RADIAL_RATIO", 0.35)
    QMC_POINTS = _env_int("DIRACWALK_QMC_POINTS", 2**20)
    QMC_SEED = _env_int("DIRACWALK_QMC_SEED", 0)

    # 허용 오차
    ROOT_TOL = _env_float("DIRACWALK_ROOT_TOL", 1e-12)
    CRITICAL_TOL = _env_float("DIRACWALK_CRITICAL_TOL", 1e-10)
    CRITICALITY_CHECK_TOL = 1e-8
    GAP_MARGIN = _env_float("DIRACWALK_GAP_MARGIN", 1e-9)
    NORM_DRIFT_TOL = _env_float("DIRACWALK_NORM_DRIFT_TOL", 1e-9)
    ALGEBRA_TOL = 1e-14
    HERMITIAN_TOL = 1e-13
    GOLDEN_XTOL = 1e-6

    # 임계 곡선 스캔 범위 (r = ω/γ)
    R_SCAN_MIN = _env_float("DIRACWALK_R_SCAN_MIN", 1e-3)
    R_SCAN_MAX = _env_float("DIRACWALK_R_SCAN_MAX", 1e2)
    R_SCAN_POINTS = _env_int("DIRACWALK_R_SCAN_POINTS", 81)
    R_BRANCH_MIN = 1e-8

    # 실험 기본값
    OMEGA_FRACTION = _env_float("DIRACWALK_OMEGA_FRACTION", 0.9)
    BRANCH = os.getenv("DIRACWALK_BRANCH", "upper")
    GRID_POINTS = _env_int("DIRACWALK_GRID_POINTS", 64)
    EVOLVE_TOL = _env_float("DIRACWALK_EVOLVE_TOL", 1e-9)

    # 크릴로프 전파기
    KRYLOV_DIM = _env_int("DIRACWALK_KRYLOV_DIM", 30)
    KRYLOV_MAX_STEPS = _env_int("DIRACWALK_KRYLOV_MAX_STEPS", 200_000)

    # 병렬 실행
    WORKERS = _env_int("DIRACWALK_WORKERS", 0)

    # 출력 포맷
    FLOAT_FORMAT = "%.17g"
    VERSION = "1.0.0"

    @classmethod
    def worker_count(cls) -> int:
        """병렬 작업자 수 (0이면 CPU 수 기준)"""
        if cls.WORKERS > 0:
            return cls.WORKERS
        return max(1, (os.cpu_count() or 1) - 1)

    @classmethod
    def quadrature_tolerance(cls, d: int) -> float:
        """연속 적분 상대 허용 오차"""
        return 1e-6 if d <= 3 else 1e-3

    @classmethod
    def override(cls, **values: Any) -> None:
        """CLI 플래그로 설정값 덮어쓰기 (None 은 무시)"""
        for key, value in values.items():
            if value is not None:
                setattr(cls, key.upper(), value)

    @classmethod
    def snapshot(cls) -> Dict[str, Any]:
        """현재 유효한 대문자 설정값 전체 (작업자 프로세스에 그대로 전달)"""
        return {
            key: value
            for key, value in vars(cls).items()
            if key.isupper() and not callable(value)
        }

    @classmethod
    def as_dict(cls) -> Dict[str, Any]:
        """출력 파일에 기록할 설정 요약"""
        return {
            "max_sites": cls.MAX_SITES,
            "dense_cap": cls.DENSE_CAP,
            "gl_nodes": cls.GL_NODES,
            "radial_panels": cls.RADIAL_PANELS,
            "qmc_points": cls.QMC_POINTS,
            "qmc_seed": cls.QMC_SEED,
            "krylov_dim": cls.KRYLOV_DIM,
            "root_tol": cls.ROOT_TOL,
            "critical_tol": cls.CRITICAL_TOL,
            "gap_margin": cls.GAP_MARGIN,
        }


# 전역 설정 인스턴스
settings = Settings()
