"""
結果のファイル出力（CSV, JSON, SVG）

CSV は 17 有効桁、LF 改行、UTF-8。SVG は matplotlib の SVG バックエンドで描き、
ハッシュ塩と日付メタデータを固定して同じ入力から同じバイト列を出す。
"""
import json
import logging
from pathlib import Path
from typing import NamedTuple, Optional, Sequence, Union

import matplotlib
import numpy as np
import pandas as pd
from matplotlib.figure import Figure
from matplotlib.ticker import FormatStrFormatter, LinearLocator

from ..model.echo import EchoCurve
from .sweep import SweepResult

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["lambda", "t", "L"]
FLOAT_FORMAT = "%.17g"
# SVG の座標は 72 単位/インチ。これで viewBox が width_px × height_px になる
SVG_DPI = 72

SVG_RC = {
    "svg.hashsalt": "ising-loschmidt-echo",
    "svg.fonttype": "path",
    "svg.image_inline": True,
}


class SvgStyle(NamedTuple):
    width_px: int = 800
    height_px: int = 600
    ticks: int = 11          # 軸ごとの目盛り数（10 区間）
    title: Optional[str] = None
    colormap: str = "gray"


def sweep_frame(result: SweepResult) -> pd.DataFrame:
    """λ 外側、t 内側の行優先順"""
    lambdas, times = result.lambdas, result.times
    return pd.DataFrame({
        "lambda": np.repeat(lambdas, times.size),
        "t": np.tile(times, lambdas.size),
        "L": result.surface.ravel(),
    }, columns=CSV_COLUMNS)


def curve_frame(curve: EchoCurve) -> pd.DataFrame:
    return pd.DataFrame({
        "lambda": np.full(len(curve), curve.params.lam),
        "t": curve.times,
        "L": curve.values,
    }, columns=CSV_COLUMNS)


def _prepare(path) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
    except OSError as error:
        raise OSError(f"cannot create directory for {path}: {error.strerror}") from error
    return path


def write_csv(frame: pd.DataFrame, target) -> None:
    """パスまたは開いたテキストストリームへ書く"""
    if hasattr(target, "write"):
        frame.to_csv(target, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        return
    path = _prepare(target)
    try:
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n",
                     encoding="utf-8")
    except OSError as error:
        raise OSError(f"cannot write CSV to {path}: {error.strerror or error}") from error
    logger.info("wrote %d rows to %s", len(frame), path)


def emit_csv(result: Union[SweepResult, EchoCurve], target) -> None:
    frame = curve_frame(result) if isinstance(result, EchoCurve) else sweep_frame(result)
    write_csv(frame, target)


def emit_json(payload, target) -> None:
    """SweepResult または to_dict を持つもの、もしくは dict を JSON で書く"""
    if hasattr(payload, "to_dict"):
        payload = payload.to_dict()
    text = json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    if hasattr(target, "write"):
        target.write(text)
        return
    path = _prepare(target)
    try:
        path.write_text(text, encoding="utf-8", newline="\n")
    except OSError as error:
        raise OSError(f"cannot write JSON to {path}: {error.strerror}") from error
    logger.info("wrote %s", path)


def _style_axes(axes, style: SvgStyle) -> None:
    for axis in (axes.xaxis, axes.yaxis):
        axis.set_major_locator(LinearLocator(style.ticks))
        axis.set_major_formatter(FormatStrFormatter("%.3g"))
    if style.title:
        axes.set_title(style.title)


def _draw_curves(figure: Figure, curves: Sequence[EchoCurve], style: SvgStyle) -> None:
    axes = figure.add_subplot()
    for curve in curves:
        axes.plot(curve.times, curve.values, linewidth=1.0, label=f"N={curve.params.N}")
    axes.set_xlim(min(c.times[0] for c in curves), max(c.times[-1] for c in curves))
    axes.set_ylim(0.0, 1.05)
    axes.set_xlabel("t [1/J]")
    axes.set_ylabel("L")
    _style_axes(axes, style)
    if len(curves) > 1:
        axes.legend(loc="lower right")


def _draw_surface(figure: Figure, result: SweepResult, style: SvgStyle) -> None:
    axes = figure.add_subplot()
    times, lambdas = result.times, result.lambdas
    # 一点の λ でも幅を持たせる
    lambda_pad = 0.5 * (lambdas[1] - lambdas[0]) if lambdas.size > 1 else 0.5
    image = axes.imshow(
        result.surface, cmap=style.colormap, vmin=0.0, vmax=1.0, origin="lower",
        aspect="auto", interpolation="nearest",
        extent=(times[0], times[-1], lambdas[0] - lambda_pad, lambdas[-1] + lambda_pad),
    )
    axes.set_xlabel("t [1/J]")
    axes.set_ylabel("lambda")
    _style_axes(axes, style)
    figure.colorbar(image, ax=axes, label="L")


def emit_svg(target: Union[SweepResult, EchoCurve, Sequence[EchoCurve]], path,
             style: Optional[SvgStyle] = None) -> None:
    """
    曲線（一本または重ね描き）は L-t の折れ線、面は L(λ, t) のグレースケール熱図

    外部ファイルを参照しない単一の SVG を書く
    """
    style = style or SvgStyle()
    path = _prepare(path)
    with matplotlib.rc_context(SVG_RC):
        figure = Figure(figsize=(style.width_px / SVG_DPI, style.height_px / SVG_DPI), dpi=SVG_DPI)
        if isinstance(target, SweepResult):
            _draw_surface(figure, target, style)
        else:
            curves = [target] if isinstance(target, EchoCurve) else list(target)
            if not curves:
                raise ValueError("emit_svg needs at least one curve")
            _draw_curves(figure, curves, style)
        try:
            figure.savefig(path, format="svg", metadata={"Date": None})
        except OSError as error:
            raise OSError(f"cannot write SVG to {path}: {error.strerror}") from error
    logger.info("wrote %s", path)
