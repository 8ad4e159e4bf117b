# mvre/services/numkit/__init__.py

"""
numkit: deterministic tensor engine with reverse-mode gradients, the layer
set of the fusion architectures, Adam and the composite RMSE+MAE loss.
"""

from .layers import Layer, Dense, Conv2D, ReLU, MaxPool2, Flatten, Concat, Identity
from .network import Network, Node, ForwardCache, forward, backward, PORTS
from .optimizer import AdamState, adam_step
from .loss import composite_loss
from .snapshot import save_parameters, load_parameters, to_bytes, from_bytes

__all__ = [
    'Layer', 'Dense', 'Conv2D', 'ReLU', 'MaxPool2', 'Flatten', 'Concat', 'Identity',
    'Network', 'Node', 'ForwardCache', 'forward', 'backward', 'PORTS',
    'AdamState', 'adam_step', 'composite_loss',
    'save_parameters', 'load_parameters', 'to_bytes', 'from_bytes',
]
