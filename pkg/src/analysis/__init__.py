# src/analysis/__init__.py
# Módulo de trazas y reportes

"""
Este módulo contiene:
- Escritura y lectura en streaming del formato de traza
- Reportes de diseminación, integridad y speedup
"""

from .trace_format import TraceEvent, TraceWriter, parse_trace
from .reports import check_integrity, dissemination_report, speedup_report

__all__ = [
    'TraceEvent',
    'TraceWriter',
    'parse_trace',
    'dissemination_report',
    'check_integrity',
    'speedup_report',
]
