# Import utility modules
from neutralsets.utils.loaders import load_input, parse_code
from neutralsets.utils.report_exporter import build_report, export_factor_set, export_report, render

# Export utilities
__all__ = ['load_input', 'parse_code', 'build_report', 'export_factor_set', 'export_report', 'render']
