# mvre/services/tabular/__init__.py

"""
tabular: record encoding, target transform and the split protocol.
"""

from .encoding import fit_transform, transform
from .target import log_target, inv_log_target
from .splitting import split_geographic, split_random, parse_split, plan_split, SplitPlan
from .ingestion import load_records, GeocodingTable

__all__ = [
    'fit_transform', 'transform', 'log_target', 'inv_log_target',
    'split_geographic', 'split_random', 'parse_split', 'plan_split', 'SplitPlan',
    'load_records', 'GeocodingTable',
]
