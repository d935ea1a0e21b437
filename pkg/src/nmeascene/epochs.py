"""Grouping parsed sentences into 1 Hz epochs and computing per-epoch metrics.

A GGA sentence opens a new epoch; every GSA/GSV that follows, up to the next
GGA, belongs to it. GSV has no timestamp of its own, so GGA is the only
reliable anchor.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, TextIO

from .nmea import (
    DOP_SENTINEL,
    GGA,
    GSA,
    GSV,
    Diagnostic,
    DopValues,
    FixData,
    ParsePolicy,
    Unhandled,
    assemble_gsv,
    iter_sentences,
)

__all__ = [
    "EpochRecord",
    "EpochMetrics",
    "EpochFolder",
    "fold_epoch",
    "compute_metrics",
    "iter_epoch_records",
    "stream_epochs",
    "write_metrics_csv",
    "write_metrics_jsonl",
    "read_metrics",
    "METRICS_HEADER",
]

METRICS_HEADER = ("epoch", "cn0_sum", "cn0_mean", "pdop", "hdop", "sat_count", "has_measurement")


@dataclass
class EpochRecord:
    epoch_index: int = 0
    fix: Optional[FixData] = None
    dop: Optional[DopValues] = None
    satellites: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)
    duplicates: int = 0


@dataclass(frozen=True)
class EpochMetrics:
    """Feature vector for one epoch.

    ``satellite_count`` is normally an int. Averaged fixtures (a site's mean
    over an hour) may carry a fractional count; the classifier rounds it.
    """

    epoch_index: int
    cn0_sum: float
    cn0_mean: Optional[float]
    pdop: float
    hdop: float
    satellite_count: float
    has_measurement: bool

    @classmethod
    def from_summary(cls, cn0_sum: float, cn0_mean: Optional[float], pdop: float = DOP_SENTINEL,
                     hdop: float = DOP_SENTINEL, satellite_count: float = 0,
                     epoch_index: int = 0) -> "EpochMetrics":
        return cls(epoch_index, cn0_sum, cn0_mean, pdop, hdop, satellite_count, satellite_count > 0)


def _split_gsv_groups(parts: list) -> tuple:
    """Keep the last complete run of GSV parts per talker."""
    by_talker: dict = {}
    for p in parts:
        by_talker.setdefault(p.raw.talker, []).append(p)

    groups, replaced = [], 0
    for talker_parts in by_talker.values():
        runs: list = []
        for p in talker_parts:
            if not runs or p.message_number <= runs[-1][-1].message_number:
                runs.append([p])
            else:
                runs[-1].append(p)
        replaced += len(runs) - 1
        groups.append(runs[-1])
    return groups, replaced


def fold_epoch(records: Iterable, epoch_index: int = 0) -> EpochRecord:
    """Reduce the sentences of one epoch into an :class:`EpochRecord`.

    Duplicate GGA/GSA sentences are resolved last-one-wins and counted in
    ``duplicates``; repeated GSV reports from the same talker likewise keep
    the last one.
    """
    rec = EpochRecord(epoch_index=epoch_index)
    gsv_parts = []
    for r in records:
        rec.diagnostics.extend(r.diagnostics)
        if isinstance(r, GGA):
            if rec.fix is not None:
                rec.duplicates += 1
            rec.fix = r.fix
        elif isinstance(r, GSA):
            if rec.dop is not None:
                rec.duplicates += 1
            rec.dop = r.dop
        elif isinstance(r, GSV):
            gsv_parts.append(r)

    groups, replaced = _split_gsv_groups(gsv_parts)
    rec.duplicates += replaced
    for g in groups:
        sats, diags = assemble_gsv(g)
        rec.satellites.extend(sats)
        rec.diagnostics.extend(diags)
    if rec.duplicates:
        rec.diagnostics.append(Diagnostic("Duplicate", f"{rec.duplicates} duplicate sentence(s) in epoch {epoch_index}"))
    return rec


def compute_metrics(record: EpochRecord) -> EpochMetrics:
    """Sum, mean and count of positive C/N0 readings plus PDOP/HDOP.

    Satellites without a reading, or reading 0, are left out entirely. A
    missing DOP (no GSA, or empty fields) becomes the 99.99 sentinel.
    """
    readings = [s.cn0_dbhz for s in record.satellites if s.cn0_dbhz is not None and s.cn0_dbhz > 0]
    count = len(readings)
    total = math.fsum(readings)
    mean = total / count if count else None

    dop = record.dop or DopValues()
    pdop = dop.pdop if dop.pdop is not None else DOP_SENTINEL
    hdop = dop.hdop if dop.hdop is not None else DOP_SENTINEL
    return EpochMetrics(record.epoch_index, total, mean, pdop, hdop, count, count > 0)


class EpochFolder:
    """Single-consumer fold from parsed records to epoch records.

    Feed records one at a time; a completed :class:`EpochRecord` is returned
    whenever a GGA closes the previous epoch. Call :meth:`flush` at end of
    input for the last one. Records seen before the first GGA belong to no
    epoch and are dropped with a diagnostic.
    """

    def __init__(self, start_index: int = 0):
        self._next_index = start_index
        self._pending: Optional[list] = None
        self.orphans = 0
        self.diagnostics: list = []

    def feed(self, record) -> Optional[EpochRecord]:
        if isinstance(record, Unhandled):
            self.diagnostics.extend(record.diagnostics)
            return None
        done = None
        if isinstance(record, GGA):
            done = self._close()
            self._pending = [record]
        elif self._pending is None:
            self.orphans += 1
            self.diagnostics.append(Diagnostic(
                "Orphan", f"{record.raw.address} before first GGA dropped", record.raw.line_number))
        else:
            self._pending.append(record)
        return done

    def flush(self) -> Optional[EpochRecord]:
        done = self._close()
        self._pending = None
        return done

    def _close(self) -> Optional[EpochRecord]:
        if self._pending is None:
            return None
        rec = fold_epoch(self._pending, self._next_index)
        self._next_index += 1
        return rec


def iter_epoch_records(records: Iterable, start_index: int = 0,
                       diagnostics: Optional[list] = None) -> Iterator[EpochRecord]:
    folder = EpochFolder(start_index)
    for r in records:
        done = folder.feed(r)
        if done is not None:
            yield done
    last = folder.flush()
    if last is not None:
        yield last
    if diagnostics is not None:
        diagnostics.extend(folder.diagnostics)


def stream_epochs(lines: Iterable[str], policy: ParsePolicy = ParsePolicy(),
                  diagnostics: Optional[list] = None, start_index: int = 0) -> Iterator[EpochMetrics]:
    """NMEA text lines in, one :class:`EpochMetrics` per GGA out.

    Bad sentences never stop the stream; their diagnostics, and those of
    each epoch, are appended to ``diagnostics`` if a list is given.
    """
    records = iter_sentences(lines, policy, diagnostics)
    for rec in iter_epoch_records(records, start_index, diagnostics):
        if diagnostics is not None:
            diagnostics.extend(rec.diagnostics)
        yield compute_metrics(rec)


def _fmt(value: Optional[float]) -> str:
    return "" if value is None else f"{value:.2f}"


def _count_str(n: float) -> str:
    return str(int(n)) if float(n).is_integer() else f"{n:.2f}"


def write_metrics_csv(metrics: Iterable[EpochMetrics], fh: TextIO) -> int:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(METRICS_HEADER)
    n = 0
    for m in metrics:
        writer.writerow([m.epoch_index, _fmt(m.cn0_sum), _fmt(m.cn0_mean), _fmt(m.pdop), _fmt(m.hdop),
                         _count_str(m.satellite_count), int(m.has_measurement)])
        n += 1
    return n


def write_metrics_jsonl(metrics: Iterable[EpochMetrics], fh: TextIO) -> int:
    n = 0
    for m in metrics:
        row = {
            "epoch": m.epoch_index,
            "cn0_sum": round(m.cn0_sum, 2),
            "cn0_mean": None if m.cn0_mean is None else round(m.cn0_mean, 2),
            "pdop": round(m.pdop, 2),
            "hdop": round(m.hdop, 2),
            "sat_count": m.satellite_count,
            "has_measurement": m.has_measurement,
        }
        fh.write(json.dumps(row) + "\n")
        n += 1
    return n


def _parse_bool(text) -> bool:
    if isinstance(text, bool):
        return text
    t = str(text).strip().lower()
    if t in ("1", "true", "yes"):
        return True
    if t in ("0", "false", "no"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _row_to_metrics(row: dict) -> EpochMetrics:
    mean = row["cn0_mean"]
    count = float(row["sat_count"])
    return EpochMetrics(
        epoch_index=int(row["epoch"]),
        cn0_sum=float(row["cn0_sum"]),
        cn0_mean=None if mean in (None, "") else float(mean),
        pdop=float(row["pdop"]),
        hdop=float(row["hdop"]),
        satellite_count=int(count) if count.is_integer() else count,
        has_measurement=_parse_bool(row["has_measurement"]),
    )


def read_metrics(fh: TextIO) -> Iterator[EpochMetrics]:
    """Read metrics written by either :func:`write_metrics_csv` or :func:`write_metrics_jsonl`."""
    text = fh.read()
    stripped = text.lstrip()
    if not stripped:
        return
    if stripped.startswith("{"):
        for n, line in enumerate(text.splitlines(), start=1):
            if line.strip():
                try:
                    yield _row_to_metrics(json.loads(line))
                except (KeyError, ValueError) as exc:
                    raise ValueError(f"metrics line {n}: {exc}") from exc
        return
    reader = csv.DictReader(io.StringIO(text))
    missing = set(METRICS_HEADER) - set(reader.fieldnames or ())
    if missing:
        raise ValueError(f"metrics CSV missing columns: {', '.join(sorted(missing))}")
    for n, row in enumerate(reader, start=2):
        try:
            yield _row_to_metrics(row)
        except (KeyError, ValueError, TypeError) as exc:
            raise ValueError(f"metrics line {n}: {exc}") from exc
