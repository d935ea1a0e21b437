"""Indoor/outdoor scenario detection from NMEA 0183 GPS receiver output."""

from .classifier import (
    RuleSet,
    Scenario,
    classify,
    classify_combined,
    classify_stream,
    classify_sum_only,
)
from .epochs import EpochMetrics, EpochRecord, compute_metrics, fold_epoch, stream_epochs
from .nmea import ParsePolicy, assemble_gsv, compute_checksum, parse_sentence
from .synth import GeneratorConfig, ScenarioProfile, generate_epoch, generate_log, load_profile
from .validation import LabelInterval, ValidationReport, evaluate, load_labels

__version__ = "0.1.0"

__all__ = [
    "RuleSet",
    "Scenario",
    "classify",
    "classify_combined",
    "classify_stream",
    "classify_sum_only",
    "EpochMetrics",
    "EpochRecord",
    "compute_metrics",
    "fold_epoch",
    "stream_epochs",
    "ParsePolicy",
    "assemble_gsv",
    "compute_checksum",
    "parse_sentence",
    "GeneratorConfig",
    "ScenarioProfile",
    "generate_epoch",
    "generate_log",
    "load_profile",
    "LabelInterval",
    "ValidationReport",
    "evaluate",
    "load_labels",
]
