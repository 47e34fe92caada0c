from .config import GridRange, OutputFormat, OutputSpec, SweepConfig, config_from_dict, load_config
from .progress import LoggingObserver, SweepProgress
from .sweep import SweepResult, run_sweep
from .analysis import (
    ValleyMetric, ValleyReport, detect_valley, gaussian_check, oracle_check, revival_table,
    scaling_report,
)
from .emit import SvgStyle, emit_csv, emit_json, emit_svg

__all__ = [
    'GridRange', 'OutputFormat', 'OutputSpec', 'SweepConfig', 'config_from_dict', 'load_config',
    'LoggingObserver', 'SweepProgress',
    'SweepResult', 'run_sweep',
    'ValleyMetric', 'ValleyReport', 'detect_valley', 'gaussian_check', 'oracle_check',
    'revival_table', 'scaling_report',
    'SvgStyle', 'emit_csv', 'emit_json', 'emit_svg',
]
