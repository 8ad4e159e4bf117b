# mvre/services/synthbench/__init__.py

"""
synthbench: synthetic records and images from a known price law, with
ground-truth oracles.
"""

from .rendering import render_disks, oracle_quality, disk_count, disk_area, disk_radius
from .generator import generate, bayes_mae, true_coefficients
from .emitter import emit_dataset, describe_numeric, records_frame

__all__ = [
    'render_disks', 'oracle_quality', 'disk_count', 'disk_area', 'disk_radius',
    'generate', 'bayes_mae', 'true_coefficients',
    'emit_dataset', 'describe_numeric', 'records_frame',
]
