"""
DiracWalk 명령행 드라이버

하위 명령: critical, predict, evolve, validate, scaling
종료 코드: 0 성공, 2 사용법 오류, 3 수치 실패, 4 입출력 실패
"""

import argparse
import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from logger import get_cli_logger, setup_logger

from .config import settings
from .domain import Branch, Observable, RepKind, SearchParams, Source
from .models import RunConfig
from .services import critical_service, dynamics_service, prediction_service
from .services.clifford_service import build_rep
from .services.validation_service import LEVELS, ValidationService
from .utils.error_handling import (
    EXIT_NUMERICAL,
    EXIT_OK,
    ConfigurationError,
    ErrorReporter,
    exit_code_boundary,
)
from .utils.export import companion_path, emit, format_csv, format_json

logger = get_cli_logger("CLI")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer: {text}")
    return value


def _add_tuning(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--omega", type=float, help="ω 직접 지정 (생략하면 ω* 의 비율)")
    parser.add_argument("--omega-fraction", type=float, default=settings.OMEGA_FRACTION)
    parser.add_argument(
        "--branch", choices=[b.value for b in Branch], default=settings.BRANCH
    )


def _add_output(parser: argparse.ArgumentParser, default_format: str) -> None:
    parser.add_argument("--out", help="출력 파일 경로 (생략하면 stdout)")
    parser.add_argument("--format", choices=["csv", "json"], default=default_format)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diracwalk", description="Dirac-type quantum walk search on the periodic cubic lattice"
    )
    parser.add_argument("--log-level", default=os.getenv("LOG_LEVEL", "INFO"))
    parser.add_argument("--seed", type=int, default=settings.QMC_SEED, help="QMC seed")
    sub = parser.add_subparsers(dest="command", required=True)

    critical = sub.add_parser("critical", help="critical curve (ω, γ) with U(0)=1")
    critical.add_argument("--dim", type=_positive_int, nargs="+", required=True)
    critical.add_argument("--side", type=_positive_int)
    critical.add_argument("--source", choices=[s.value for s in Source], default=Source.LATTICE.value)
    critical.add_argument("--r-min", type=float, default=settings.R_SCAN_MIN)
    critical.add_argument("--r-max", type=float, default=settings.R_SCAN_MAX)
    critical.add_argument("--points", type=_positive_int, default=settings.R_SCAN_POINTS)
    _add_output(critical, "csv")

    predict = sub.add_parser("predict", help="closed-form predictions at criticality")
    predict.add_argument("--dim", type=_positive_int, required=True)
    predict.add_argument("--side", type=_positive_int, required=True)
    _add_tuning(predict)
    _add_output(predict, "json")

    evolve = sub.add_parser("evolve", help="end-to-end search run")
    evolve.add_argument("--dim", type=_positive_int, required=True)
    evolve.add_argument("--side", type=_positive_int, required=True)
    evolve.add_argument("--rep", choices=[r.value for r in RepKind], default=RepKind.REDUCED.value)
    evolve.add_argument("--points", type=_positive_int, default=settings.GRID_POINTS)
    evolve.add_argument("--t-max", type=float, help="시간 격자 끝 (기본 2·T_pred)")
    evolve.add_argument("--tol", type=float, default=settings.EVOLVE_TOL)
    _add_tuning(evolve)
    _add_output(evolve, "csv")

    validate = sub.add_parser("validate", help="invariant suites")
    validate.add_argument("--level", choices=LEVELS, default="fast")
    validate.add_argument("--tol", type=float, help="모든 검사의 허용 오차 덮어쓰기")
    _add_output(validate, "json")

    scaling = sub.add_parser("scaling", help="scaling study over lattice sizes")
    scaling.add_argument("--dim", type=_positive_int, required=True)
    scaling.add_argument("--sides", type=_positive_int, nargs="+", required=True)
    scaling.add_argument("--rep", choices=[r.value for r in RepKind], default=RepKind.REDUCED.value)
    scaling.add_argument(
        "--observable", choices=[o.value for o in Observable], default=Observable.T_STAR.value
    )
    scaling.add_argument("--points", type=_positive_int, default=settings.GRID_POINTS)
    scaling.add_argument("--tol", type=float, default=settings.EVOLVE_TOL)
    _add_tuning(scaling)
    _add_output(scaling, "csv")
    return parser


def run_config_from_args(args: argparse.Namespace) -> RunConfig:
    """파싱된 인자를 검증된 RunConfig 로 변환 (계산 전에 모든 값 검사)"""
    dims = getattr(args, "dim", None)
    if isinstance(dims, list):
        dims = dims[0] if len(dims) == 1 else None
    fields: Dict[str, Any] = dict(
        command=args.command,
        d=dims,
        side=getattr(args, "side", None),
        sides=getattr(args, "sides", None),
        seed=args.seed,
        tol=getattr(args, "tol", None),
        out=args.out,
        format=args.format,
        settings=settings.as_dict(),
    )
    for name in ("rep", "source", "branch", "observable", "level", "omega", "omega_fraction"):
        value = getattr(args, name, None)
        if value is not None:
            fields[name] = value
    if args.command == "critical":
        if not (0 < args.r_min < args.r_max) or args.points < 2:
            raise ConfigurationError(
                f"empty or invalid r range: [{args.r_min}, {args.r_max}] with {args.points} points"
            )
        if args.source == Source.LATTICE.value and args.side is None:
            raise ConfigurationError("--side is required with --source lattice")
        fields.update(r_min=args.r_min, r_max=args.r_max, points=args.points)
    if args.command in ("evolve", "scaling"):
        fields["grid_points"] = args.points
    if args.command == "evolve":
        if args.t_max is not None and not args.t_max > 0:
            raise ConfigurationError("--t-max must be positive")
        fields["t_max"] = args.t_max
    run = RunConfig(**fields)
    if args.command in ("predict", "evolve", "scaling"):
        run.tuning()
    return run


def _config_dict(run: RunConfig, **extra: Any) -> Dict[str, Any]:
    config = run.model_dump(mode="json")
    config.update(extra)
    return config


def _dim_path(out: Optional[str], d: int, many: bool) -> Optional[str]:
    if out is None or not many:
        return out
    path = Path(out)
    return str(path.with_name(f"{path.stem}_d{d}{path.suffix}"))


def cmd_critical(run: RunConfig, dims: Sequence[int]) -> int:
    """임계 곡선: 열 r, omega, gamma, u, U0"""
    r_values = np.logspace(np.log10(run.r_min), np.log10(run.r_max), run.points)
    for d in dims:
        points = critical_service.critical_curve(d, r_values, run.source, run.side)
        frame = pd.DataFrame(
            {
                "r": [p.ratio for p in points],
                "omega": [p.omega for p in points],
                "gamma": [p.gamma for p in points],
                "u": [p.gamma for p in points],
                "U0": [p.u0 for p in points],
            }
        )
        config = _config_dict(run, d=d)
        out = _dim_path(run.out, d, len(dims) > 1)
        if run.format == "json":
            emit(format_json({"curve": frame.to_dict(orient="list")}, config), out)
        else:
            emit(format_csv(frame, config), out)
    return EXIT_OK


def cmd_predict(run: RunConfig) -> int:
    """임계점 재계산 → E± → 예측 레코드"""
    cfg, point, roots, prediction = prediction_service.experiment_point(run.d, run.side, run.tuning())
    result = prediction.model_dump()
    result.update(
        u0=point.u0,
        residual=roots.residual,
        converged=roots.converged,
        gap=roots.gap,
        d=run.d,
        side=run.side,
    )
    if run.format == "csv":
        emit(format_csv(pd.DataFrame([result]), _config_dict(run)), run.out)
    else:
        emit(format_json(result, _config_dict(run)), run.out)
    return EXIT_OK


def cmd_evolve(run: RunConfig) -> int:
    """전체 파이프라인: 임계점 → 예측 → 전개. CSV 시계열 + JSON 요약"""
    cfg, point, roots, prediction = prediction_service.experiment_point(run.d, run.side, run.tuning())
    if run.t_max is None:
        t_grid = dynamics_service.default_grid(prediction.T, run.grid_points)
    else:
        t_grid = np.linspace(0.0, run.t_max, run.grid_points)
    params = SearchParams(cfg, build_rep(run.rep, run.d), point.omega, point.gamma)
    result = dynamics_service.run_search(params, t_grid, run.tol)
    series = pd.DataFrame(
        {"t": result.times, "p_marked": result.p_marked, "p_eta_marked": result.p_eta_marked}
    )
    summary = {
        "t_star": result.t_star,
        "p_star": result.p_star,
        "p_eta_star": result.p_eta_star,
        "norm_drift": result.norm_drift,
        "unitary": result.unitary,
        "method": result.method,
        "prediction": prediction.model_dump(),
        "t_star_over_t_pred": result.t_star / prediction.T,
        "p_star_over_2R": result.p_star / (2.0 * prediction.R),
    }
    config = _config_dict(run)
    if run.out is None:
        emit(format_json(summary, config) if run.format == "json" else format_csv(series, config))
        return EXIT_OK
    emit(format_csv(series, config), companion_path(run.out, ".csv"))
    emit(format_json(summary, config), companion_path(run.out, ".json"))
    return EXIT_OK


def cmd_validate(run: RunConfig) -> int:
    """검증 스위트, 모두 통과하면 종료 코드 0"""
    reporter = ErrorReporter()
    report = ValidationService(reporter, tol=run.tol).run(run.level)
    result = report.model_dump()
    result["passed"] = report.passed
    result["errors"] = reporter.get_error_summary()
    emit(format_json(result, _config_dict(run)), run.out)
    for check in report.failures():
        logger.error(
            f"❌ {check.name}: observed={check.observed:.6g}, required={check.required:.6g} {check.detail}"
        )
    return EXIT_OK if report.passed else EXIT_NUMERICAL


def cmd_scaling(run: RunConfig) -> int:
    """스케일링 분석: 표 CSV + 적합 JSON"""
    fit = dynamics_service.scaling_study(
        run.d,
        run.sides,
        run.rep,
        run.observable,
        tuning=run.tuning(),
        grid_points=run.grid_points,
        tol=run.tol,
    )
    table = pd.DataFrame([row.model_dump() for row in fit.table])
    summary = fit.model_dump(exclude={"table"}, mode="json")
    config = _config_dict(run)
    if run.out is None:
        emit(format_json(summary, config) if run.format == "json" else format_csv(table, config))
        return EXIT_OK
    emit(format_csv(table, config), companion_path(run.out, ".csv"))
    emit(format_json(summary, config), companion_path(run.out, ".json"))
    return EXIT_OK


@exit_code_boundary("명령 실행 중 오류가 발생했습니다")
def run_command(args: argparse.Namespace) -> int:
    settings.override(qmc_seed=args.seed)
    run = run_config_from_args(args)
    logger.info(f"🚀 {run.command} started")
    if run.command == "critical":
        return cmd_critical(run, args.dim)
    handlers = {
        "predict": cmd_predict,
        "evolve": cmd_evolve,
        "validate": cmd_validate,
        "scaling": cmd_scaling,
    }
    return handlers[run.command](run)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logger("diracwalk", args.log_level, "cli")
    return run_command(args)


if __name__ == "__main__":
    raise SystemExit(main())
