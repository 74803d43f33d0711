"""Applications of a fitted density: one-class scoring, denoising and synthesis."""

from rbig_kit.tasks.one_class import OneClassModel, OneClassScores, fit_one_class, score, threshold_for
from rbig_kit.tasks.denoise import DenoiseResult, NoiseModel, denoise
from rbig_kit.tasks.synthesis import synthesize

__all__ = [
    "OneClassModel",
    "OneClassScores",
    "fit_one_class",
    "score",
    "threshold_for",
    "NoiseModel",
    "DenoiseResult",
    "denoise",
    "synthesize",
]
