import os
import sys
from pathlib import Path

import numpy as np
import pytest

# 프로젝트 루트 경로 추가
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

# 테스트 중에는 로그 파일을 만들지 않음
os.environ.setdefault("LOG_TO_FILE", "false")


@pytest.fixture(autouse=True)
def restore_settings():
    """settings.override 로 바뀐 클래스 속성을 테스트마다 복원"""
    from diracwalk.config import Settings

    snapshot = {key: value for key, value in vars(Settings).items() if key.isupper()}
    yield
    for key, value in snapshot.items():
        setattr(Settings, key, value)


@pytest.fixture
def rng():
    """고정 시드 난수 생성기"""
    return np.random.default_rng(20240611)


@pytest.fixture
def lattice_2d():
    """d=2, side=5 격자"""
    from diracwalk.services.lattice_service import build_lattice

    return build_lattice(2, 5)


@pytest.fixture
def lattice_3d():
    """d=3, side=8 격자"""
    from diracwalk.services.lattice_service import build_lattice

    return build_lattice(3, 8)


@pytest.fixture
def full_rep_2d():
    """d=2 완전 표현 (파울리 행렬)"""
    from diracwalk.services.clifford_service import build_full_rep

    return build_full_rep(2)


@pytest.fixture
def reduced_rep_3d():
    """d=3 축소 표현 (4차원)"""
    from diracwalk.services.clifford_service import build_reduced_rep

    return build_reduced_rep(3)


@pytest.fixture
def small_search_params(full_rep_2d):
    """d=2, side=4 의 작은 탐색 파라미터 (밀집 차원 32)"""
    from diracwalk.domain import SearchParams
    from diracwalk.services.lattice_service import build_lattice

    return SearchParams(build_lattice(2, 4), full_rep_2d, 0.6, 0.35, w=3)


@pytest.fixture(scope="session")
def critical_d3_side8():
    """d=3, side=8 임계점과 예측 (세션 동안 한 번 계산)"""
    from diracwalk.services.prediction_service import experiment_point

    return experiment_point(3, 8)


@pytest.fixture
def sample_run_config():
    """샘플 실행 설정"""
    from diracwalk.models import RunConfig

    return RunConfig(command="predict", d=3, side=8, seed=0, settings={"dense_cap": 5000})
