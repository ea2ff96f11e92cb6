"""
결과 파일 출력 유틸리티

CSV: '#' 주석 헤더(버전, 유효 설정 JSON) + 고정 열 순서, 부동소수점 17 유효자리
JSON: {"version", "config", "result"}, 부동소수점은 최단 왕복 표현
모든 파일은 UTF-8, LF 줄바꿈이며 임시 파일 + rename 으로 원자적으로 기록한다.
"""

import io
import json
import logging
import os
import sys
import tempfile
from pathlib import Path
from typing import Any, Dict, Optional

import pandas as pd

from ..config import settings
from .error_handling import ExportError

logger = logging.getLogger(__name__)


def format_csv(frame: pd.DataFrame, config: Dict[str, Any]) -> str:
    """CSV 텍스트 (설정 헤더 포함)"""
    buffer = io.StringIO()
    buffer.write(f"# diracwalk {settings.VERSION}\n")
    buffer.write(f"# config {json.dumps(config, sort_keys=True)}\n")
    frame.to_csv(buffer, index=False, float_format=settings.FLOAT_FORMAT, lineterminator="\n")
    return buffer.getvalue()


def format_json(result: Dict[str, Any], config: Dict[str, Any]) -> str:
    """JSON 텍스트"""
    document = {"version": settings.VERSION, "config": config, "result": result}
    return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_atomic(path: str, text: str) -> Path:
    """
    임시 파일에 쓴 뒤 os.replace 로 교체

    Raises:
        ExportError: 디렉터리 생성/쓰기/교체 실패
    """
    target = Path(path)
    tmp_name = None
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        with tempfile.NamedTemporaryFile(
            "w", encoding="utf-8", newline="\n", dir=target.parent, delete=False, suffix=".tmp"
        ) as handle:
            tmp_name = handle.name
            handle.write(text)
        os.replace(tmp_name, target)
    except OSError as e:
        if tmp_name and os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise ExportError(f"failed to write {target}: {e}", error_code="WRITE_FAILED") from e
    logger.info(f"💾 wrote {target}")
    return target


def emit(text: str, out: Optional[str] = None) -> None:
    """out 이 없으면 stdout, 있으면 원자적 파일 쓰기"""
    if out is None:
        sys.stdout.write(text)
        return
    write_atomic(out, text)


def companion_path(out: str, suffix: str) -> str:
    """요약 파일 경로 (예: run.csv → run.json)"""
    return str(Path(out).with_suffix(suffix))
