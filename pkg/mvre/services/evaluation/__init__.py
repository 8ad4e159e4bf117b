# mvre/services/evaluation/__init__.py

"""
evaluation: currency-scale metrics, improvement accounting and report documents.
"""

from .metrics import mae, rmse
from .evaluate import evaluate, improvement, currency_metrics
from .report_emitter import emit, sort_reports, model_label, FORMATS, CSV_COLUMNS

__all__ = [
    'mae', 'rmse', 'evaluate', 'improvement', 'currency_metrics',
    'emit', 'sort_reports', 'model_label', 'FORMATS', 'CSV_COLUMNS',
]
