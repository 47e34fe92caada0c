"""
コマンドライン: python -m ising_loschmidt_echo <subcommand> [flags]

設定は --config の JSON とフラグから作り、フラグがファイルの値を上書きする。
終了コード: 0 成功、1 検査の不合格、2 使い方・設定・入出力のエラー
（エラーは標準エラーに一行の JSON で出す）。
"""
import argparse
import json
import logging
import sys
from typing import List, Optional

from .. import __version__
from ..errors import ConfigError, EchoSimulationError
from ..model.chain_params import ChainParams, GridConvention
from ..model.echo import DEFAULT_REVIVAL_THRESHOLD, DEFAULT_TIME_STEP, echo_curve
from ..model.spectrum import momentum_grid
from .analysis import (
    GAUSSIAN_FIT_SAMPLES, GAUSSIAN_FIT_TMAX, ValleyMetric, detect_valley, gaussian_check,
    oracle_check, revival_table, scaling_report,
)
from .config import OutputFormat, SweepConfig, config_from_dict, read_config_file
from .emit import emit_csv, emit_json, emit_svg
from .progress import LoggingObserver, SweepProgress
from .sweep import run_sweep

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_ERROR = 2
DEFAULT_TMAX = 27.0
REVIVAL_SIZES = [50, 100, 150, 200, 250]


def _chain_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("chain and grids")
    group.add_argument("--config", help="JSON config file; flags override its values")
    group.add_argument("--N", type=int, help="number of sites (even, >= 4)")
    group.add_argument("--J", type=float, help="Ising coupling (default 1)")
    group.add_argument("--a", type=float, help="lattice spacing (default 1)")
    group.add_argument("--lambda", dest="lam", type=float, help="transverse field (single point)")
    group.add_argument("--lambda-min", type=float)
    group.add_argument("--lambda-max", type=float)
    group.add_argument("--lambda-step", type=float)
    group.add_argument("--delta", type=float, help="perturbation from the central qubit")
    group.add_argument("--tmin", type=float)
    group.add_argument("--tmax", type=float)
    group.add_argument("--dt", type=float)
    group.add_argument("--grid", choices=[c.value for c in GridConvention],
                       help="momentum quantization (default paper)")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ising_loschmidt_echo",
        description="Loschmidt echo of a transverse-field Ising chain coupled to a central qubit",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default="WARNING",
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    subparsers = parser.add_subparsers(dest="command", required=True)
    chain = _chain_flags()

    echo = subparsers.add_parser("echo", parents=[chain], help="single L(t) curve as CSV on stdout")
    echo.add_argument("--svg", help="also plot the curve to this SVG file")
    echo.set_defaults(handler=_run_echo)

    sweep = subparsers.add_parser("sweep", parents=[chain], help="L(lambda, t) surface")
    sweep.add_argument("--workers", type=int, default=1)
    sweep.set_defaults(handler=_run_sweep)

    valley = subparsers.add_parser("valley", parents=[chain], help="locate the valley of a sweep")
    valley.add_argument("--workers", type=int, default=1)
    valley.add_argument("--metric", choices=[m.value for m in ValleyMetric],
                        default=ValleyMetric.MEAN.value,
                        help="row metric for lambda_min (default mean; depth is always reported "
                             "as depth_lambda_min)")
    valley.set_defaults(handler=_run_valley)

    oracle = subparsers.add_parser("oracle-check", parents=[chain],
                                   help="pair-block and spin-ED oracle suites")
    oracle.add_argument("--seed", type=int, default=0)
    oracle.add_argument("--samples", type=int, default=100)
    oracle.set_defaults(handler=_run_oracle_check)

    revival = subparsers.add_parser("revival", parents=[chain],
                                    help="first revival time against N with a linear fit")
    revival.add_argument("--sizes", type=int, nargs="+", default=REVIVAL_SIZES)
    revival.add_argument("--threshold", type=float, default=DEFAULT_REVIVAL_THRESHOLD)
    revival.add_argument("--svg", help="overlay the curves in this SVG file")
    revival.set_defaults(handler=_run_revival)

    scaling = subparsers.add_parser("scaling-check", parents=[chain],
                                    help="collapse under t -> t/alpha, delta -> alpha delta, N -> N/alpha")
    scaling.add_argument("--alpha", type=float, default=10.0)
    scaling.add_argument("--tolerance", type=float)
    scaling.set_defaults(handler=_run_scaling_check)

    gaussian = subparsers.add_parser("gaussian-check", parents=[chain],
                                     help="short-time fit of -ln L against the exact t^2 rate")
    gaussian.add_argument("--fit-tmax", type=float, default=GAUSSIAN_FIT_TMAX)
    gaussian.add_argument("--samples", type=int, default=GAUSSIAN_FIT_SAMPLES)
    gaussian.set_defaults(handler=_run_gaussian_check)
    return parser


def _overlay_range(raw: dict, key: str, point, low, high, step) -> None:
    if point is not None:
        raw[key] = point
        return
    if low is None and high is None and step is None:
        return
    current = raw.get(key)
    if isinstance(current, dict):
        merged = dict(current)
    elif current is not None:
        merged = {"min": current, "max": current}
    else:
        merged = {}
    for name, value in (("min", low), ("max", high), ("step", step)):
        if value is not None:
            merged[name] = value
    raw[key] = merged


def resolve_raw_config(args, defaults: Optional[dict] = None) -> dict:
    """既定値 < 設定ファイル < フラグ の順に重ねた設定辞書"""
    raw = dict(defaults or {})
    if args.config:
        raw.update(read_config_file(args.config))
    for key, value in (("N", args.N), ("J", args.J), ("a", args.a), ("delta", args.delta),
                       ("grid", args.grid)):
        if value is not None:
            raw[key] = value
    _overlay_range(raw, "lambda", args.lam, args.lambda_min, args.lambda_max, args.lambda_step)
    _overlay_range(raw, "time", None, args.tmin, args.tmax, args.dt)
    return raw


def _curve_defaults() -> dict:
    return {"time": {"min": 0.0, "max": DEFAULT_TMAX, "step": DEFAULT_TIME_STEP}}


def _single_point(config: SweepConfig) -> ChainParams:
    if not config.lambda_grid.is_single_point:
        raise ConfigError("this subcommand needs a single lambda (use --lambda)")
    return config.params_base


def _print_json(payload) -> None:
    emit_json(payload, sys.stdout)


def _run_echo(args) -> int:
    config = config_from_dict(resolve_raw_config(args, _curve_defaults()))
    params = _single_point(config)
    curve = echo_curve(params, momentum_grid(params, config.convention), config.times())
    emit_csv(curve, sys.stdout)
    if args.svg:
        emit_svg(curve, args.svg)
    return EXIT_OK


def _sweep_from_args(args) -> tuple:
    config = config_from_dict(resolve_raw_config(args))
    progress = SweepProgress()
    progress.register_observer(LoggingObserver())
    return config, run_sweep(config, workers=args.workers, progress=progress)


def _run_sweep(args) -> int:
    config, result = _sweep_from_args(args)
    if not config.outputs:
        emit_csv(result, sys.stdout)
        return EXIT_OK
    for output in config.outputs:
        if output.format is OutputFormat.CSV:
            emit_csv(result, output.path)
        elif output.format is OutputFormat.JSON:
            emit_json(result, output.path)
        else:
            if config.lambda_grid.is_single_point:
                emit_svg(echo_curve(config.params_base,
                                    momentum_grid(config.params_base, config.convention),
                                    config.times()), output.path)
            else:
                emit_svg(result, output.path)
    return EXIT_OK


def _run_valley(args) -> int:
    _, result = _sweep_from_args(args)
    report = detect_valley(result, ValleyMetric(args.metric))
    _print_json(report)
    return EXIT_OK


def _params_with_defaults(args, **defaults) -> tuple:
    raw = resolve_raw_config(args, {**defaults, **_curve_defaults()})
    config = config_from_dict(raw)
    return _single_point(config), config


def _run_oracle_check(args) -> int:
    params, config = _params_with_defaults(args, N=8, delta=0.1, **{"lambda": 0.9})
    report = oracle_check(params, seed=args.seed, samples=args.samples,
                          convention=config.convention)
    _print_json(report)
    return EXIT_OK if report["passed"] else EXIT_CHECK_FAILED


def _run_revival(args) -> int:
    params, config = _params_with_defaults(args, N=args.sizes[0], delta=0.1, **{"lambda": 0.9})
    table = revival_table(args.sizes, params.lam, params.delta, J=params.J, a=params.a,
                          dt=config.time_grid.step, threshold=args.threshold,
                          convention=config.convention)
    _print_json(table)
    if args.svg:
        emit_svg(table.curves, args.svg)
    return EXIT_OK


def _run_scaling_check(args) -> int:
    params, config = _params_with_defaults(args, N=2000, delta=0.01, **{"lambda": 1.0})
    report = scaling_report(params, args.alpha, config.times(), config.convention,
                            tolerance=args.tolerance)
    _print_json(report)
    return EXIT_CHECK_FAILED if report.passed is False else EXIT_OK


def _run_gaussian_check(args) -> int:
    params, config = _params_with_defaults(args, N=200, delta=0.1, **{"lambda": 0.9})
    report = gaussian_check(params, config.convention, t_max=args.fit_tmax, samples=args.samples)
    _print_json(report)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def _print_error(error: Exception) -> None:
    sys.stderr.write(json.dumps({"error": type(error).__name__, "message": str(error)}) + "\n")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.handler(args)
    except (EchoSimulationError, OSError) as error:
        logger.debug("command failed", exc_info=True)
        _print_error(error)
        return EXIT_ERROR
