"""Gamma-distribution oversampling for imbalanced binary classification."""

from .dataset import (
    ClassSummary,
    LabeledDataset,
    ScalingParams,
    apply_min_max,
    class_counts,
    fit_min_max,
    split_by_class,
)
from .exceptions import (
    ConfigError,
    DataError,
    DomainError,
    EmptyClass,
    EmptyInput,
    GammaBalanceError,
    ParseError,
    SchemaError,
    TooFewMinority,
    TooFewSamples,
    UndefinedMetric,
)
from .gamma_dist import GammaParams
from .samplers import ResampleResult, SamplerSpec, balance_dataset, fit_resample
from .classifiers import ClassifierSpec, ForestParams
from .evaluation import ExperimentConfig, ExperimentReport, run_experiment, stratified_folds
from .synth import SynthSpec, generate as make_synthetic

__version__ = "0.1.0"
