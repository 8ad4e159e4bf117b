# mvre/services/forest/__init__.py

"""
forest: CART regression trees and the random forest of the concatenation strategy.
"""

from .cart import Leaf, Split, TreeNode, TreeParams, fit_tree, predict_tree, tree_depth
from .random_forest import (ForestParams, ForestModel, fit_forest, predict, save_forest,
    load_forest, forest_to_dict, forest_from_dict)

__all__ = [
    'Leaf', 'Split', 'TreeNode', 'TreeParams', 'fit_tree', 'predict_tree', 'tree_depth',
    'ForestParams', 'ForestModel', 'fit_forest', 'predict', 'save_forest', 'load_forest',
    'forest_to_dict', 'forest_from_dict',
]
