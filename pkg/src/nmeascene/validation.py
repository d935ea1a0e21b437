"""Scoring scenario predictions against known site labels."""

from __future__ import annotations

import bisect
import csv
import io
import json
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from typing import Iterable, TextIO

import numpy as np

from .classifier import Scenario

__all__ = [
    "LabelInterval",
    "ValidationReport",
    "OverlapError",
    "UnknownLabel",
    "EmptyFile",
    "UncoveredEpoch",
    "load_labels",
    "parse_labels",
    "evaluate",
    "PREDICTED_ORDER",
    "TRUTH_ORDER",
]

TRUTH_ORDER = (
    Scenario.OPEN_OUTDOOR,
    Scenario.OBSTRUCTED_OUTDOOR,
    Scenario.INDOOR_NEAR_OPENING,
    Scenario.INDOOR,
)
PREDICTED_ORDER = TRUTH_ORDER + (Scenario.INDETERMINATE,)


class OverlapError(ValueError):
    pass


class UnknownLabel(ValueError):
    pass


class EmptyFile(ValueError):
    pass


class UncoveredEpoch(LookupError):
    pass


@dataclass(frozen=True)
class LabelInterval:
    start_epoch: int
    end_epoch: int  # exclusive
    truth: Scenario

    def __contains__(self, epoch: int) -> bool:
        return self.start_epoch <= epoch < self.end_epoch


def _check_intervals(intervals: list) -> list:
    intervals = sorted(intervals, key=lambda iv: (iv.start_epoch, iv.end_epoch))
    for prev, cur in zip(intervals, intervals[1:]):
        if cur.start_epoch < prev.end_epoch:
            raise OverlapError(
                f"intervals [{prev.start_epoch},{prev.end_epoch}) and "
                f"[{cur.start_epoch},{cur.end_epoch}) overlap")
    return intervals


def parse_labels(fh: TextIO) -> list:
    reader = csv.reader(fh)
    intervals = []
    for n, row in enumerate(reader, start=1):
        if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
            continue
        if n == 1 and row[0].strip() == "start_epoch":
            continue
        if len(row) < 3:
            raise ValueError(f"label line {n}: expected start_epoch,end_epoch,label")
        try:
            start, end = int(row[0]), int(row[1])
        except ValueError as exc:
            raise ValueError(f"label line {n}: {exc}") from exc
        name = row[2].strip()
        try:
            truth = Scenario(name)
        except ValueError:
            raise UnknownLabel(f"label line {n}: unknown scenario {name!r}") from None
        if truth is Scenario.INDETERMINATE:
            raise UnknownLabel(f"label line {n}: 'indeterminate' is not a ground-truth label")
        if not 0 <= start < end:
            raise ValueError(f"label line {n}: need 0 <= start_epoch < end_epoch")
        intervals.append(LabelInterval(start, end, truth))
    if not intervals:
        raise EmptyFile("label file has no intervals")
    return _check_intervals(intervals)


def load_labels(path) -> list:
    """Read a ``start_epoch,end_epoch,label`` CSV into sorted, non-overlapping intervals."""
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_labels(fh)


def _pct(count: int, total: int) -> Decimal:
    if total == 0:
        return Decimal("0.00")
    exact = Fraction(100 * count, total)
    return (Decimal(exact.numerator) / Decimal(exact.denominator)).quantize(Decimal("0.01"), ROUND_HALF_UP)


@dataclass(frozen=True)
class ValidationReport:
    total_epochs: int
    matches: int
    mismatches: int
    indeterminate: int
    confusion: np.ndarray  # rows PREDICTED_ORDER, columns TRUTH_ORDER

    @property
    def accuracy(self) -> Fraction:
        return Fraction(self.matches, self.total_epochs) if self.total_epochs else Fraction(0)

    @property
    def accuracy_pct(self) -> Decimal:
        return _pct(self.matches, self.total_epochs)

    @property
    def error_pct(self) -> Decimal:
        return _pct(self.mismatches, self.total_epochs)

    def to_dict(self) -> dict:
        return {
            "total_epochs": self.total_epochs,
            "matches": self.matches,
            "mismatches": self.mismatches,
            "indeterminate": self.indeterminate,
            "accuracy_pct": float(self.accuracy_pct),
            "error_pct": float(self.error_pct),
            "confusion": {
                "rows_predicted": [s.value for s in PREDICTED_ORDER],
                "columns_truth": [s.value for s in TRUTH_ORDER],
                "counts": self.confusion.tolist(),
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def format_table(self) -> str:
        out = io.StringIO()
        out.write(f"{'Epochs':<16}{self.total_epochs:>10}\n")
        out.write(f"{'Matches':<16}{self.matches:>10} ({self.accuracy_pct}%)\n")
        out.write(f"{'Errors':<16}{self.mismatches:>10} ({self.error_pct}%)\n")
        out.write(f"{'  indeterminate':<16}{self.indeterminate:>10}\n\n")
        width = max(len(s.value) for s in PREDICTED_ORDER) + 2
        out.write("predicted \\ truth".ljust(width))
        out.write("".join(f"{s.value:>{width}}" for s in TRUTH_ORDER) + "\n")
        for label, row in zip(PREDICTED_ORDER, self.confusion):
            out.write(label.value.ljust(width) + "".join(f"{int(v):>{width}}" for v in row) + "\n")
        return out.getvalue()


def evaluate(predicted: Iterable[tuple], truth: Iterable[LabelInterval]) -> ValidationReport:
    """Compare per-epoch predictions against labelled intervals.

    ``INDETERMINATE`` predictions count as errors and are also tallied on
    their own. Raises :class:`UncoveredEpoch` for a prediction outside every
    interval.
    """
    intervals = _check_intervals(list(truth))
    starts = [iv.start_epoch for iv in intervals]
    confusion = np.zeros((len(PREDICTED_ORDER), len(TRUTH_ORDER)), dtype=np.int64)
    row_of = {s: i for i, s in enumerate(PREDICTED_ORDER)}
    col_of = {s: i for i, s in enumerate(TRUTH_ORDER)}

    total = matches = indeterminate = 0
    for epoch, label in predicted:
        label = Scenario(label)
        k = bisect.bisect_right(starts, epoch) - 1
        if k < 0 or epoch not in intervals[k]:
            raise UncoveredEpoch(f"epoch {epoch} is not covered by any label interval")
        t = intervals[k].truth
        confusion[row_of[label], col_of[t]] += 1
        total += 1
        matches += label is t
        indeterminate += label is Scenario.INDETERMINATE
    return ValidationReport(total, matches, total - matches, indeterminate, confusion)
