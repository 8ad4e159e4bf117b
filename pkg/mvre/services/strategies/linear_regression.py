# mvre/services/strategies/linear_regression.py

"""
Ordinary least squares with an intercept, the hedonic regression stage of
the baseline and of the boosted strategy.
"""

# Default libs
from dataclasses import dataclass, field
from typing import Any

# Dependencies
import numpy as np
from scipy import stats

# Deps from this project
from ...constants.constant import INTERCEPT_NAME
from ...objects.errors import RankDeficiencyError, ShapeError, ValidationError
from ...objects.strategy import Coefficient


# Relative residual norm below which a column counts as a combination of earlier ones
RANK_TOL = 1e-8


@dataclass
class LinearFit:
    """
    Attributes:
        names: intercept name followed by the kept column names
        kept: indices of the kept columns in the input matrix
        weights: intercept first
        std_errors / t_values / p_values: aligned with weights; t and p are
            None where the standard error is 0
        dropped: names of the columns removed as redundant
    """
    names: list[str]
    kept: list[int]
    weights: np.ndarray
    std_errors: np.ndarray
    t_values: list[float | None]
    p_values: list[float | None]
    n_features: int
    dof: int
    sigma2: float
    dropped: list[str] = field(default_factory=list)

    @property
    def intercept(self) -> float:
        return float(self.weights[0])

    def coefficient(self, name: str) -> float:
        return float(self.weights[self.names.index(name)])

    def coefficients(self) -> list[Coefficient]:
        return [Coefficient(name, float(w), float(se), t, p) for name, w, se, t, p
            in zip(self.names, self.weights, self.std_errors, self.t_values, self.p_values)]

    def to_dict(self) -> dict[str, Any]:
        return {
            "names": self.names, "kept": self.kept,
            "weights": self.weights.tolist(), "std_errors": self.std_errors.tolist(),
            "t_values": self.t_values, "p_values": self.p_values,
            "n_features": self.n_features, "dof": self.dof, "sigma2": self.sigma2,
            "dropped": self.dropped,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "LinearFit":
        return cls(
            names=list(d["names"]), kept=[int(i) for i in d["kept"]],
            weights=np.asarray(d["weights"], dtype=np.float64),
            std_errors=np.asarray(d["std_errors"], dtype=np.float64),
            t_values=list(d["t_values"]), p_values=list(d["p_values"]),
            n_features=int(d["n_features"]), dof=int(d["dof"]), sigma2=float(d["sigma2"]),
            dropped=list(d.get("dropped", [])),
        )


def independent_columns(X: np.ndarray) -> list[int]:
    """
    Greedy left-to-right selection: a column is kept when it is not (up to
    RANK_TOL) a linear combination of the columns kept before it.
    """
    basis: list[np.ndarray] = []
    kept: list[int] = []
    for j in range(X.shape[1]):
        col = X[:, j].astype(np.float64)
        norm = float(np.linalg.norm(col))
        residual = col.copy()
        for _ in range(2):
            for q in basis:
                residual -= (q @ residual) * q
        res_norm = float(np.linalg.norm(residual))
        if norm > 0 and res_norm > RANK_TOL * max(norm, 1.0):
            basis.append(residual / res_norm)
            kept.append(j)
    return kept


def fit_linear_regression(X, y, columns: list[str] | None = None,
                          drop_redundant: bool = True) -> LinearFit:
    """
    Least squares of y on [1, X].

    Columns that are constant or linearly dependent on earlier columns (the
    intercept comes first) are dropped and reported. With drop_redundant
    False they raise RankDeficiencyError instead.

    Standard errors are sqrt(diag(sigma2 * (A^T A)^-1)) with
    sigma2 = RSS / (n - p); p-values are two-sided under Student's t with
    n - p degrees of freedom.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    if X.ndim != 2:
        raise ShapeError(f"Expected a 2D design matrix, got shape {X.shape}")
    n, d = X.shape
    if y.size != n:
        raise ShapeError(f"X has {n} rows, y has {y.size}")
    if not (np.all(np.isfinite(X)) and np.all(np.isfinite(y))):
        raise ValidationError("Regression inputs must be finite")
    columns = list(columns) if columns is not None else [f"x{j}" for j in range(d)]
    if len(columns) != d:
        raise ShapeError(f"{len(columns)} column names for {d} columns")

    A_full = np.hstack([np.ones((n, 1)), X])
    independent = independent_columns(A_full)
    kept = [j - 1 for j in independent if j > 0]
    dropped = [columns[j] for j in range(d) if j not in set(kept)]
    if dropped and not drop_redundant:
        raise RankDeficiencyError("Design matrix is rank deficient", dropped)

    A = A_full[:, [0] + [j + 1 for j in kept]]
    p = A.shape[1]
    if n <= p:
        raise ValidationError(f"Regression needs more rows than parameters (n={n}, p={p})")

    weights, *_ = np.linalg.lstsq(A, y, rcond=None)
    residuals = y - A @ weights
    dof = n - p
    sigma2 = float(residuals @ residuals / dof)
    cov = sigma2 * np.linalg.inv(A.T @ A)
    std_errors = np.sqrt(np.clip(np.diag(cov), 0.0, None))

    t_values: list[float | None] = []
    p_values: list[float | None] = []
    for w, se in zip(weights, std_errors):
        if se > 0:
            t = float(w / se)
            t_values.append(t)
            p_values.append(float(2 * stats.t.sf(abs(t), dof)))
        else:
            t_values.append(None)
            p_values.append(None)

    return LinearFit(
        names=[INTERCEPT_NAME] + [columns[j] for j in kept],
        kept=kept, weights=weights, std_errors=std_errors,
        t_values=t_values, p_values=p_values,
        n_features=d, dof=dof, sigma2=sigma2, dropped=dropped,
    )


def predict_linear(fit: LinearFit, X) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != fit.n_features:
        raise ShapeError(f"Regression was fit on {fit.n_features} columns, got shape {X.shape}")
    return fit.weights[0] + X[:, fit.kept] @ fit.weights[1:]
