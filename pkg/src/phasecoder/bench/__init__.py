"""Desk-scale synthetic benchmark for angle regression heads."""

from .dataset import OrientedBox, Sample, generate_dataset
from .evaluate import EvalReport, evaluate, oracle_roundtrip_error
from .network import Regressor, backward, forward
from .train import HEADS, TrainConfig, TrainingDiverged, train
from .runner import RunConfig, run_bench

__all__ = [
    "OrientedBox",
    "Sample",
    "generate_dataset",
    "EvalReport",
    "evaluate",
    "oracle_roundtrip_error",
    "Regressor",
    "forward",
    "backward",
    "HEADS",
    "TrainConfig",
    "TrainingDiverged",
    "train",
    "RunConfig",
    "run_bench",
]
