#!/usr/bin/env python3
"""
DiracWalk 명령행 실행 스크립트

예시:
    python start_cli.py critical --dim 2 3 --side 32
    python start_cli.py evolve --dim 3 --side 12 --rep reduced --out runs/d3_s12.csv
    python start_cli.py validate --level full
"""

import sys
from pathlib import Path

# 프로젝트 루트를 Python 경로에 추가
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

if __name__ == "__main__":
    from diracwalk.cli import main

    sys.exit(main())
