# mvre/services/numkit/network.py

"""
Code file for housing the Network graph and its forward/backward passes.

A network is an acyclic wiring of layers with up to two input ports
("tabular": flat vectors, "image": H x W x C tensors) and exactly one
scalar-per-sample output node.
"""

# Default libs
from dataclasses import dataclass, field
from typing import Any

# Dependencies
import numpy as np

# Deps from this project
from ...objects.errors import NonFiniteError, ShapeError, StaleCacheError, ValidationError
from ...objects.tensor import Tensor
from .layers import Layer, Shape, layer_from_description


PORTS = ("tabular", "image")


@dataclass(frozen=True)
class Node:
    name: str
    layer: Layer
    inputs: tuple[str, ...]


@dataclass
class ForwardCache:
    """
    Activation record of one forward pass. Tied to the network object and
    the parameter version it was computed with.
    """
    network_id: int
    version: int
    batch: int
    layer_caches: dict[str, Any] = field(default_factory=dict)
    outputs: dict[str, np.ndarray] = field(default_factory=dict)


class Network:
    """
    Layer graph with named nodes. Nodes may be given in any order; they are
    sorted topologically at construction and every edge is shape-checked.
    """

    def __init__(self, nodes: list[Node], output: str,
                 port_shapes: dict[str, Shape], seed: int = 0):
        unknown_ports = set(port_shapes) - set(PORTS)
        if unknown_ports:
            raise ShapeError(f"Unknown input ports: {sorted(unknown_ports)}")

        self.port_shapes = {k: tuple(v) for k, v in port_shapes.items()}
        self.nodes = self._toposort(nodes)
        self.output = output
        self.seed = seed
        self.version = 0
        self.frozen: set[str] = set()

        by_name = {n.name: n for n in self.nodes}
        if output not in by_name:
            raise ShapeError(f"Output node '{output}' is not part of the network")

        # Shape propagation
        self.shapes: dict[str, Shape] = dict(self.port_shapes)
        for node in self.nodes:
            in_shapes = [self.shapes[src] for src in node.inputs]
            try:
                self.shapes[node.name] = tuple(node.layer.output_shape(in_shapes))
            except ShapeError as e:
                raise ShapeError(f"Node '{node.name}': {e}") from e

        if self.shapes[output] != (1,):
            raise ShapeError(f"Output node must be scalar per sample, got {self.shapes[output]}")

        self.used_ports = sorted({src for n in self.nodes for src in n.inputs if src in PORTS})

        # Parameter init in node order
        rng = np.random.default_rng(seed)
        self.params: dict[str, dict[str, Tensor]] = {}
        for node in self.nodes:
            raw = node.layer.init_params(rng)
            if raw:
                self.params[node.name] = {k: Tensor(v) for k, v in raw.items()}


    def _toposort(self, nodes: list[Node]) -> list[Node]:
        """
        Kahn's algorithm. Ties keep the given order so init is deterministic.
        """
        names = [n.name for n in nodes]
        if len(set(names)) != len(names):
            raise ShapeError("Node names must be unique")
        if set(names) & set(PORTS):
            raise ShapeError(f"Node names may not shadow ports {PORTS}")

        known = set(names) | set(self.port_shapes)
        for node in nodes:
            missing = [src for src in node.inputs if src not in known]
            if missing:
                raise ShapeError(f"Node '{node.name}' reads from unknown {missing}")

        ordered: list[Node] = []
        done = set(self.port_shapes)
        pending = list(nodes)
        while pending:
            ready = [n for n in pending if all(src in done for src in n.inputs)]
            if not ready:
                raise ShapeError("Network wiring contains a cycle: "
                    f"{[n.name for n in pending]}")
            for node in ready:
                ordered.append(node)
                done.add(node.name)
            pending = [n for n in pending if n.name not in done]
        return ordered


    # parameters

    def param_keys(self) -> list[tuple[str, str]]:
        """ (node, param) pairs in snapshot order """
        return [(node, key) for node, group in self.params.items() for key in group]


    def parameters(self) -> list[Tensor]:
        return [self.params[node][key] for node, key in self.param_keys()]


    def load_parameters(self, tensors: list[Tensor]) -> None:
        """
        Replace all parameters. Shapes must match exactly. Bumps the version so
        outstanding forward caches become stale.
        """
        keys = self.param_keys()
        if len(tensors) != len(keys):
            raise ShapeError(f"Expected {len(keys)} parameter tensors, got {len(tensors)}")
        for (node, key), tensor in zip(keys, tensors):
            if tensor.shape != self.params[node][key].shape:
                raise ShapeError(f"Parameter {node}.{key}: shape {tensor.shape} "
                    f"!= {self.params[node][key].shape}")
        for (node, key), tensor in zip(keys, tensors):
            self.params[node][key] = tensor.copy()
        self.version += 1


    def snapshot(self) -> list[Tensor]:
        return [t.copy() for t in self.parameters()]


    def set_param(self, node: str, key: str, value: np.ndarray) -> None:
        self.params[node][key] = Tensor(np.broadcast_to(value, self.params[node][key].data.shape))
        self.version += 1


    def freeze(self, *names: str) -> None:
        """ Frozen nodes receive zero gradient """
        self.frozen.update(names)


    def param_count(self) -> int:
        return sum(t.size for t in self.parameters())


    def describe(self) -> dict[str, Any]:
        """ JSON-ready architecture, enough to rebuild the network """
        return {
            "ports": {k: list(v) for k, v in self.port_shapes.items()},
            "output": self.output,
            "seed": self.seed,
            "frozen": sorted(self.frozen),
            "nodes": [{"name": n.name, "inputs": list(n.inputs), "layer": n.layer.describe()}
                for n in self.nodes],
        }


    @classmethod
    def from_description(cls, desc: dict[str, Any]) -> "Network":
        nodes = [Node(d["name"], layer_from_description(d["layer"]), tuple(d["inputs"]))
            for d in desc["nodes"]]
        net = cls(nodes, desc["output"], {k: tuple(v) for k, v in desc["ports"].items()},
            seed=desc.get("seed", 0))
        net.freeze(*desc.get("frozen", []))
        return net


def _port_array(net: Network, port: str, value: Tensor | np.ndarray | None) -> np.ndarray:
    """ Validate one port input and return it batched as (n, *port_shape) """
    if value is None:
        raise ValidationError(f"Missing input for port '{port}'")
    arr = value.data if isinstance(value, Tensor) else np.asarray(value, dtype=np.float64)
    expected = net.port_shapes[port]
    if arr.shape == expected:
        arr = arr.reshape((1,) + expected)      # single sample
    if arr.shape[1:] != expected:
        raise ShapeError(f"Port '{port}' expects samples of shape {expected}, got {arr.shape[1:]}")
    return arr


def forward(net: Network, tabular: Tensor | np.ndarray | None = None,
            image: Tensor | np.ndarray | None = None) -> tuple[Tensor, ForwardCache]:
    """
    Run the network on a batch.

    Returns:
        (output, cache): output has shape (n,), cache feeds backward()
    """
    given = {"tabular": tabular, "image": image}
    values: dict[str, np.ndarray] = {}
    for port in net.used_ports:
        values[port] = _port_array(net, port, given[port])

    batches = {v.shape[0] for v in values.values()}
    if len(batches) > 1:
        raise ShapeError(f"Ports disagree on batch size: {sorted(batches)}")
    batch = batches.pop() if batches else 0

    cache = ForwardCache(network_id=id(net), version=net.version, batch=batch)
    for node in net.nodes:
        params = {k: t.data for k, t in net.params.get(node.name, {}).items()}
        out, layer_cache = node.layer.forward(params, [values[src] for src in node.inputs])
        if not np.all(np.isfinite(out)):
            raise NonFiniteError(f"Non-finite activation at node '{node.name}'")
        values[node.name] = out
        cache.layer_caches[node.name] = layer_cache
        cache.outputs[node.name] = out

    return Tensor(values[net.output].reshape(-1)), cache


def backward(net: Network, cache: ForwardCache, loss_grad: Tensor | np.ndarray) -> list[Tensor]:
    """
    Reverse-mode pass. Returns one gradient tensor per parameter tensor, in
    Network.param_keys() order. Parameters of nodes that do not reach the
    output, and of frozen nodes, get zero gradient.
    """
    if cache.network_id != id(net) or cache.version != net.version:
        raise StaleCacheError("Forward cache does not belong to this network state")

    dy = loss_grad.data if isinstance(loss_grad, Tensor) else np.asarray(loss_grad, dtype=np.float64)
    if dy.size != cache.batch:
        raise ShapeError(f"Loss gradient has {dy.size} entries for a batch of {cache.batch}")

    upstream: dict[str, np.ndarray] = {net.output: dy.reshape(cache.batch, 1)}
    grads: dict[str, dict[str, np.ndarray]] = {}

    for node in reversed(net.nodes):
        dout = upstream.pop(node.name, None)
        if dout is None:
            continue
        params = {k: t.data for k, t in net.params.get(node.name, {}).items()}
        dxs, pgrads = node.layer.backward(params, cache.layer_caches[node.name], dout)
        grads[node.name] = pgrads
        for src, dx in zip(node.inputs, dxs):
            if src in PORTS:
                continue
            upstream[src] = upstream[src] + dx if src in upstream else dx

    out: list[Tensor] = []
    for node, key in net.param_keys():
        shape = net.params[node][key].data.shape
        g = grads.get(node, {}).get(key)
        if g is None or node in net.frozen:
            g = np.zeros(shape)
        out.append(Tensor(np.asarray(g).reshape(shape)))
    return out
