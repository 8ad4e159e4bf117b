# mvre/services/numkit/layers.py

"""
Layer set of the numkit engine.

Every layer works on float64 numpy batches whose first axis is the sample
axis. Image batches are NHWC. Layers are stateless: parameters live in the
Network and are passed in, and forward() returns whatever backward() needs.
"""

# Default libs
from typing import Any

# Dependencies
import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

# Deps from this project
from ...objects.errors import ShapeError


Shape = tuple[int, ...]


def glorot_uniform(rng: np.random.Generator, shape: Shape, fan_in: int, fan_out: int) -> np.ndarray:
    """ Uniform in +-sqrt(6/(fan_in+fan_out)) """
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape)


class Layer:
    """
    Base class. Subclasses set `kind` and implement the shape rule and the
    forward/backward pair.
    """

    kind = "layer"
    n_inputs = 1

    def output_shape(self, in_shapes: list[Shape]) -> Shape:
        raise NotImplementedError

    def init_params(self, rng: np.random.Generator) -> dict[str, np.ndarray]:
        return {}

    def forward(self, params: dict[str, np.ndarray], inputs: list[np.ndarray]) -> tuple[np.ndarray, Any]:
        raise NotImplementedError

    def backward(self, params: dict[str, np.ndarray], cache: Any,
                 dout: np.ndarray) -> tuple[list[np.ndarray], dict[str, np.ndarray]]:
        raise NotImplementedError

    def describe(self) -> dict[str, Any]:
        return {"kind": self.kind}

    def _expect_inputs(self, in_shapes: list[Shape]) -> None:
        if len(in_shapes) != self.n_inputs:
            raise ShapeError(f"{self.kind} takes {self.n_inputs} input(s), got {len(in_shapes)}")


class Dense(Layer):
    kind = "dense"

    def __init__(self, n_in: int, n_out: int, bias: bool = True):
        if n_in < 1 or n_out < 1:
            raise ShapeError(f"Dense widths must be >= 1, got ({n_in}, {n_out})")
        self.n_in, self.n_out, self.bias = n_in, n_out, bias

    def output_shape(self, in_shapes):
        self._expect_inputs(in_shapes)
        if in_shapes[0] != (self.n_in,):
            raise ShapeError(f"Dense({self.n_in},{self.n_out}) got input shape {in_shapes[0]}")
        return (self.n_out,)

    def init_params(self, rng):
        params = {"weight": glorot_uniform(rng, (self.n_in, self.n_out), self.n_in, self.n_out)}
        if self.bias:
            params["bias"] = np.zeros(self.n_out)
        return params

    def forward(self, params, inputs):
        x = inputs[0]
        out = x @ params["weight"]
        if self.bias:
            out = out + params["bias"]
        return out, x

    def backward(self, params, cache, dout):
        x = cache
        grads = {"weight": x.T @ dout}
        if self.bias:
            grads["bias"] = dout.sum(axis=0)
        return [dout @ params["weight"].T], grads

    def describe(self):
        return {"kind": self.kind, "n_in": self.n_in, "n_out": self.n_out, "bias": self.bias}


class Conv2D(Layer):
    """
    Valid (unpadded) 2D convolution over NHWC batches. Weight layout is
    (kernel, kernel, c_in, c_out).
    """

    kind = "conv2d"

    def __init__(self, c_in: int, c_out: int, kernel: int = 3, stride: int = 1):
        if min(c_in, c_out, kernel, stride) < 1:
            raise ShapeError("Conv2D channels, kernel and stride must be >= 1")
        self.c_in, self.c_out, self.kernel, self.stride = c_in, c_out, kernel, stride

    def output_shape(self, in_shapes):
        self._expect_inputs(in_shapes)
        shape = in_shapes[0]
        if len(shape) != 3 or shape[2] != self.c_in:
            raise ShapeError(f"Conv2D expects (H, W, {self.c_in}), got {shape}")
        h, w, _ = shape
        if h < self.kernel or w < self.kernel:
            raise ShapeError(f"Conv2D kernel {self.kernel} larger than input {h}x{w}")
        return ((h - self.kernel) // self.stride + 1,
                (w - self.kernel) // self.stride + 1, self.c_out)

    def init_params(self, rng):
        k = self.kernel
        fan_in, fan_out = self.c_in * k * k, self.c_out * k * k
        return {
            "weight": glorot_uniform(rng, (k, k, self.c_in, self.c_out), fan_in, fan_out),
            "bias": np.zeros(self.c_out),
        }

    def _windows(self, x: np.ndarray) -> np.ndarray:
        # (n, Ho, Wo, c_in, k, k)
        win = sliding_window_view(x, (self.kernel, self.kernel), axis=(1, 2))
        return win[:, ::self.stride, ::self.stride]

    def forward(self, params, inputs):
        x = inputs[0]
        win = self._windows(x)
        w = params["weight"].transpose(2, 0, 1, 3)          # (c_in, k, k, c_out)
        out = np.tensordot(win, w, axes=([3, 4, 5], [0, 1, 2])) + params["bias"]
        return out, (x.shape, win)

    def backward(self, params, cache, dout):
        x_shape, win = cache
        k, s = self.kernel, self.stride
        ho, wo = dout.shape[1], dout.shape[2]

        dw = np.tensordot(win, dout, axes=([0, 1, 2], [0, 1, 2]))   # (c_in, k, k, c_out)
        grads = {"weight": dw.transpose(1, 2, 0, 3), "bias": dout.sum(axis=(0, 1, 2))}

        w = params["weight"].transpose(2, 0, 1, 3)
        dwin = np.tensordot(dout, w, axes=([3], [3]))               # (n, Ho, Wo, c_in, k, k)
        dx = np.zeros(x_shape)
        for i in range(k):
            for j in range(k):
                dx[:, i:i + s * (ho - 1) + 1:s, j:j + s * (wo - 1) + 1:s, :] += dwin[..., i, j]
        return [dx], grads

    def describe(self):
        return {"kind": self.kind, "c_in": self.c_in, "c_out": self.c_out,
                "kernel": self.kernel, "stride": self.stride}


class ReLU(Layer):
    kind = "relu"

    def output_shape(self, in_shapes):
        self._expect_inputs(in_shapes)
        return in_shapes[0]

    def forward(self, params, inputs):
        x = inputs[0]
        return np.maximum(x, 0.0), x > 0

    def backward(self, params, cache, dout):
        return [dout * cache], {}


class MaxPool2(Layer):
    """
    2x2 max pooling with stride 2 over NHWC. Odd trailing rows/columns are
    dropped. Ties route the gradient to the first maximum.
    """

    kind = "maxpool2"

    def output_shape(self, in_shapes):
        self._expect_inputs(in_shapes)
        shape = in_shapes[0]
        if len(shape) != 3 or shape[0] < 2 or shape[1] < 2:
            raise ShapeError(f"MaxPool2 expects (H>=2, W>=2, C), got {shape}")
        return (shape[0] // 2, shape[1] // 2, shape[2])

    def forward(self, params, inputs):
        x = inputs[0]
        n, h, w, c = x.shape
        ho, wo = h // 2, w // 2
        blocks = (x[:, :2 * ho, :2 * wo, :]
            .reshape(n, ho, 2, wo, 2, c)
            .transpose(0, 1, 3, 5, 2, 4)
            .reshape(n, ho, wo, c, 4))
        idx = np.argmax(blocks, axis=-1)
        out = np.take_along_axis(blocks, idx[..., None], axis=-1)[..., 0]
        return out, (x.shape, idx)

    def backward(self, params, cache, dout):
        x_shape, idx = cache
        n, h, w, c = x_shape
        ho, wo = h // 2, w // 2
        blocks = np.zeros((n, ho, wo, c, 4))
        np.put_along_axis(blocks, idx[..., None], dout[..., None], axis=-1)
        dx = np.zeros(x_shape)
        dx[:, :2 * ho, :2 * wo, :] = (blocks
            .reshape(n, ho, wo, c, 2, 2)
            .transpose(0, 1, 4, 2, 5, 3)
            .reshape(n, 2 * ho, 2 * wo, c))
        return [dx], {}


class Flatten(Layer):
    kind = "flatten"

    def output_shape(self, in_shapes):
        self._expect_inputs(in_shapes)
        return (int(np.prod(in_shapes[0])),)

    def forward(self, params, inputs):
        x = inputs[0]
        return x.reshape(x.shape[0], -1), x.shape

    def backward(self, params, cache, dout):
        return [dout.reshape(cache)], {}


class Concat(Layer):
    """ Joins flat per-sample vectors along the feature axis """

    kind = "concat"
    n_inputs = 2

    def output_shape(self, in_shapes):
        self._expect_inputs(in_shapes)
        if any(len(s) != 1 for s in in_shapes):
            raise ShapeError(f"Concat expects flat inputs, got {in_shapes}")
        return (sum(s[0] for s in in_shapes),)

    def forward(self, params, inputs):
        widths = [x.shape[1] for x in inputs]
        return np.concatenate(inputs, axis=1), widths

    def backward(self, params, cache, dout):
        cuts = np.cumsum(cache)[:-1]
        return list(np.split(dout, cuts, axis=1)), {}


class Identity(Layer):
    kind = "identity"

    def output_shape(self, in_shapes):
        self._expect_inputs(in_shapes)
        return in_shapes[0]

    def forward(self, params, inputs):
        return inputs[0], None

    def backward(self, params, cache, dout):
        return [dout], {}


LAYER_KINDS: dict[str, type[Layer]] = {
    cls.kind: cls for cls in (Dense, Conv2D, ReLU, MaxPool2, Flatten, Concat, Identity)
}


def layer_from_description(desc: dict[str, Any]) -> Layer:
    """ Inverse of Layer.describe() """
    desc = dict(desc)
    cls = LAYER_KINDS.get(desc.pop("kind", ""))
    if cls is None:
        raise ShapeError(f"Unknown layer description: {desc}")
    return cls(**desc)
