# mvre/objects/tensor.py

"""
Code file for housing the Tensor class, the numeric substrate of numkit.
"""

# Default libs
from dataclasses import dataclass, field
from typing import Iterable

# Dependencies
import numpy as np

# Deps from this project
from .errors import NonFiniteError, ShapeError


@dataclass
class Tensor:
    """
    Shape-tagged row-major float64 array with an optional gradient buffer.

    The data array always owns its memory and is C-contiguous, so flat
    views and the snapshot layout agree on element order.
    """

    data: np.ndarray
    grad: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        self.data = np.ascontiguousarray(self.data, dtype=np.float64)
        if self.data.ndim == 0:
            self.data = self.data.reshape(1)
        if any(d < 1 for d in self.data.shape):
            raise ShapeError(f"Tensor dims must be positive, got {list(self.data.shape)}")
        if self.grad is not None:
            self.grad = np.ascontiguousarray(self.grad, dtype=np.float64)
            if self.grad.size != self.data.size:
                raise ShapeError(
                    f"Gradient length {self.grad.size} != data length {self.data.size}")
            self.grad = self.grad.reshape(self.data.shape)
        self.check_finite("tensor construction")


    @classmethod
    def of(cls, values: Iterable[float], shape: Iterable[int] | None = None) -> "Tensor":
        """
        Build a tensor from flat row-major values and an optional shape.
        """
        arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values,
            dtype=np.float64)
        if shape is not None:
            shape = tuple(int(s) for s in shape)
            if int(np.prod(shape)) != arr.size:
                raise ShapeError(
                    f"{arr.size} values do not fill shape {list(shape)}")
            arr = arr.reshape(shape)
        return cls(arr)


    @classmethod
    def zeros(cls, shape: Iterable[int]) -> "Tensor":
        return cls(np.zeros(tuple(shape)))


    @property
    def shape(self) -> list[int]:
        return list(self.data.shape)


    @property
    def size(self) -> int:
        return int(self.data.size)


    def flat(self) -> np.ndarray:
        """ Row-major flat view of the data """
        return self.data.reshape(-1)


    def copy(self) -> "Tensor":
        return Tensor(self.data.copy(), None if self.grad is None else self.grad.copy())


    def zero_grad(self) -> None:
        self.grad = np.zeros_like(self.data)


    def check_finite(self, where: str) -> None:
        """
        Raise NonFiniteError if data or grad hold NaN/Inf.
        """
        if not np.all(np.isfinite(self.data)):
            raise NonFiniteError(f"Non-finite values in {where}")
        if self.grad is not None and not np.all(np.isfinite(self.grad)):
            raise NonFiniteError(f"Non-finite gradient in {where}")
