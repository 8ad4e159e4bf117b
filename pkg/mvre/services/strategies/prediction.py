# mvre/services/strategies/prediction.py

"""
Log-space prediction for every strategy, image feature extraction and
coefficient extraction.
"""

# Dependencies
import numpy as np

# Deps from this project
from ...constants.constant import INTERCEPT_NAME, SATELLITE_COEFFICIENT
from ...objects.errors import NotInterpretableError, ShapeError, UntrainedError
from ...objects.strategy import Coefficient, CoefficientReport, StrategyId
from ..forest import predict as forest_predict
from ..numkit import Network, forward
from .architectures import OUTPUT, PENULTIMATE
from .artifact import TrainedArtifact
from .dataset import ViewData
from .linear_regression import predict_linear
from .training_loop import LoopData, predict_batched


def extract_image_features(source: TrainedArtifact | Network, images: np.ndarray,
                           batch: int = 256) -> np.ndarray:
    """
    Penultimate dense activations of the image kernel, one row per image.

    Raises:
        UntrainedError: the artifact has no image kernel, or the network has
            never been trained or loaded
    """
    net = source.networks.get("cnn") if isinstance(source, TrainedArtifact) else source
    if net is None:
        raise UntrainedError(f"{source.strategy.value} has no image kernel to extract features from")
    if net.version == 0:
        raise UntrainedError("Image kernel has not been trained")
    if PENULTIMATE not in net.shapes:
        raise ShapeError(f"Network has no '{PENULTIMATE}' layer")

    images = np.asarray(images, dtype=np.float64)
    rows = []
    for start in range(0, images.shape[0], batch):
        _, cache = forward(net, image=images[start:start + batch])
        rows.append(cache.outputs[PENULTIMATE])
    if not rows:
        return np.empty((0, net.shapes[PENULTIMATE][0]))
    return np.concatenate(rows, axis=0)


def _cnn(artifact: TrainedArtifact, view: ViewData) -> np.ndarray:
    images = view.require_images(artifact.strategy.value)
    return predict_batched(artifact.networks["cnn"], LoopData(np.zeros(view.n), image=images))


def kernel_predictions(artifact: TrainedArtifact, view: ViewData) -> dict[str, np.ndarray]:
    """ The multi-kernel strategy's two kernels, each in log space """
    if artifact.strategy != StrategyId.M1_MULTIKERNEL:
        raise ShapeError(f"{artifact.strategy.value} is not a multi-kernel strategy")
    return {
        "tabular": predict_linear(artifact.linear["tabular_kernel"], view.X),
        "image": _cnn(artifact, view),
    }


def boosted_design(X: np.ndarray, residual_prediction: np.ndarray) -> np.ndarray:
    return np.hstack([X, residual_prediction.reshape(-1, 1)])


def predict_log(artifact: TrainedArtifact, view: ViewData) -> np.ndarray:
    """ Log-price predictions for an encoded partition """
    if view.X.shape[1] != len(artifact.columns):
        raise ShapeError(f"Artifact expects {len(artifact.columns)} encoded columns, "
            f"got {view.X.shape[1]}")
    s = artifact.strategy

    if s == StrategyId.BASELINE:
        return predict_linear(artifact.linear["regression"], view.X)

    if s == StrategyId.M1_MULTIKERNEL:
        kernels = kernel_predictions(artifact, view)
        return 0.5 * kernels["tabular"] + 0.5 * kernels["image"]

    if s == StrategyId.M2_CONCAT_RF:
        features = extract_image_features(artifact, view.require_images(s.value))
        return forest_predict(artifact.forest, np.hstack([view.X, features]))

    if s == StrategyId.M3_BOOSTED:
        residual = _cnn(artifact, view)
        return predict_linear(artifact.linear["stage3"], boosted_design(view.X, residual))

    name = "hybrid" if s == StrategyId.M4_HYBRID else "blackbox"
    images = view.images
    if images is None and artifact.notes.get("image_branch") is False:
        size = artifact.config.image_size
        images = np.zeros((view.n, size, size, 3))
    elif images is None:
        images = view.require_images(s.value)
    return predict_batched(artifact.networks[name], LoopData(np.zeros(view.n), view.X, images))


def extract_coefficients(artifact: TrainedArtifact) -> CoefficientReport:
    """
    Named coefficients for the baseline, boosted and hybrid strategies.

    Raises:
        NotInterpretableError: for the multi-kernel, concatenation and
            black-box strategies
    """
    s = artifact.strategy
    if not s.interpretable:
        raise NotInterpretableError(f"{s.value} ({s.family}) is not interpretable: "
            "it exposes no named coefficients")

    if s == StrategyId.BASELINE:
        fit = artifact.linear["regression"]
        return CoefficientReport(s, fit.coefficients(), dropped=list(fit.dropped))

    if s == StrategyId.M3_BOOSTED:
        fit = artifact.linear["stage3"]
        return CoefficientReport(s, fit.coefficients(), dropped=list(fit.dropped))

    # Hybrid: the output layer is a linear regression over the tabular columns and the image scalar
    net = artifact.networks["hybrid"]
    weight = net.params[OUTPUT]["weight"].data.reshape(-1)
    bias = float(net.params[OUTPUT]["bias"].data[0])
    image_branch = artifact.notes.get("image_branch", True)
    names = list(artifact.columns) + ([SATELLITE_COEFFICIENT] if image_branch else [])
    coefficients = [Coefficient(INTERCEPT_NAME, bias)] + [
        Coefficient(name, float(w)) for name, w in zip(names, weight)]
    dropped = [] if image_branch else [SATELLITE_COEFFICIENT]
    return CoefficientReport(s, coefficients, dropped=dropped, source="network")
