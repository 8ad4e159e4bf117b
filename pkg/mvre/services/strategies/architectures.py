# mvre/services/strategies/architectures.py

"""
Network wirings of the image kernel, the hybrid multi-view network and the
black-box multi-view network.
"""

# Dependencies
import numpy as np

# Deps from this project
from ...objects.strategy import TrainConfig
from ..numkit import Concat, Conv2D, Dense, Flatten, Identity, MaxPool2, Network, Node, ReLU


PENULTIMATE = "penultimate"
IMAGE_SCALAR = "image_scalar"
OUTPUT = "output"


def image_port(config: TrainConfig) -> tuple[int, int, int]:
    return (config.image_size, config.image_size, 3)


def cnn_trunk(config: TrainConfig) -> list[Node]:
    """
    conv3x3(8) -> relu -> pool -> conv3x3(16) -> relu -> pool -> flatten
    -> dense(penultimate) -> relu. The last node is named PENULTIMATE.
    """
    s = config.image_size
    side = ((s - 2) // 2 - 2) // 2
    flat = side * side * 16
    return [
        Node("conv1", Conv2D(3, 8, 3), ("image",)),
        Node("relu1", ReLU(), ("conv1",)),
        Node("pool1", MaxPool2(), ("relu1",)),
        Node("conv2", Conv2D(8, 16, 3), ("pool1",)),
        Node("relu2", ReLU(), ("conv2",)),
        Node("pool2", MaxPool2(), ("relu2",)),
        Node("flatten", Flatten(), ("pool2",)),
        Node("dense_pen", Dense(flat, config.penultimate), ("flatten",)),
        Node(PENULTIMATE, ReLU(), ("dense_pen",)),
    ]


def warm_start(net: Network, target_mean: float) -> Network:
    """ Start the scalar output at the mean training target """
    net.set_param(OUTPUT, "bias", np.array([target_mean]))
    return net


def build_cnn(config: TrainConfig, seed: int | None = None) -> Network:
    """ Image-only regressor: trunk -> dense(1) """
    nodes = cnn_trunk(config) + [Node(OUTPUT, Dense(config.penultimate, 1), (PENULTIMATE,))]
    return Network(nodes, OUTPUT, {"image": image_port(config)},
        seed=config.seed if seed is None else seed)


def build_hybrid(n_tabular: int, config: TrainConfig, seed: int | None = None) -> Network:
    """
    Structured branch without hidden layers, image branch compressed to one
    linear scalar, and a single linear output over their concatenation. The
    output weights read as regression coefficients over the tabular columns
    plus the image scalar.
    """
    nodes = [Node("tabular_identity", Identity(), ("tabular",))] + cnn_trunk(config) + [
        Node(IMAGE_SCALAR, Dense(config.penultimate, 1), (PENULTIMATE,)),
        Node("fusion", Concat(), ("tabular_identity", IMAGE_SCALAR)),
        Node(OUTPUT, Dense(n_tabular + 1, 1), ("fusion",)),
    ]
    return Network(nodes, OUTPUT, {"tabular": (n_tabular,), "image": image_port(config)},
        seed=config.seed if seed is None else seed)


def disable_image_branch(net: Network) -> Network:
    """ Pin the hybrid's image scalar to 0 so the network is a linear regression """
    net.set_param(IMAGE_SCALAR, "weight", np.zeros(1))
    net.set_param(IMAGE_SCALAR, "bias", np.zeros(1))
    net.freeze(IMAGE_SCALAR)
    return net


def build_blackbox(n_tabular: int, config: TrainConfig, seed: int | None = None) -> Network:
    """
    Dense(branch_width)+relu on the tabular side, the CNN trunk on the image
    side, then Dense(branch_width)+relu and a scalar output after the
    concatenation.
    """
    width = config.branch_width
    nodes = [
        Node("tabular_dense", Dense(n_tabular, width), ("tabular",)),
        Node("tabular_relu", ReLU(), ("tabular_dense",)),
    ] + cnn_trunk(config) + [
        Node("fusion", Concat(), ("tabular_relu", PENULTIMATE)),
        Node("head_dense", Dense(width + config.penultimate, width), ("fusion",)),
        Node("head_relu", ReLU(), ("head_dense",)),
        Node(OUTPUT, Dense(width, 1), ("head_relu",)),
    ]
    return Network(nodes, OUTPUT, {"tabular": (n_tabular,), "image": image_port(config)},
        seed=config.seed if seed is None else seed)
