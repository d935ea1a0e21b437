"""Threshold rules mapping epoch metrics to an environment scenario.

Two rule sets are available. The sum-only rules split the per-epoch C/N0 sum
into four bands. The combined rules add mean C/N0, DOP and satellite-count
conditions; they are narrower, so an epoch can fail all of them and come out
``INDETERMINATE``.

Every interval is lower-inclusive and upper-exclusive.
"""

from __future__ import annotations

import configparser
import csv
import enum
import io
import json
import math
from collections import Counter, deque
from dataclasses import dataclass, fields, replace
from typing import Iterable, Iterator, Optional, TextIO

from .epochs import EpochMetrics

__all__ = [
    "Scenario",
    "RuleSet",
    "DEFAULT_SUM_RULES",
    "DEFAULT_COMBINED_RULES",
    "load_rules",
    "parse_rules",
    "classify",
    "classify_sum_only",
    "classify_combined",
    "classify_stream",
    "smooth_labels",
    "write_scenarios_csv",
    "write_scenarios_jsonl",
    "read_scenarios",
]


class Scenario(str, enum.Enum):
    OPEN_OUTDOOR = "open_outdoor"
    OBSTRUCTED_OUTDOOR = "obstructed_outdoor"
    INDOOR_NEAR_OPENING = "indoor_near_opening"
    INDOOR = "indoor"
    INDETERMINATE = "indeterminate"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class RuleSet:
    """Thresholds for both rule sets.

    ``count_rule`` decides what happens when fewer than ``min_sats``
    satellites are seen while the C/N0 sum is already in the near-opening
    band or above. ``"banded"`` (default) treats the contradiction as
    indeterminate, which keeps every combined label consistent with the
    sum-only label. ``"literal"`` lets the satellite count alone force
    ``INDOOR``.
    """

    mode: str = "sum"
    sum_open: float = 350.0
    sum_obstructed: float = 200.0
    sum_near_opening: float = 100.0
    mean_open: float = 30.0
    mean_indoor: float = 25.0
    mean_obstructed: float = 20.0
    dop_max: float = 7.0
    min_sats: int = 4
    count_rule: str = "banded"

    def __post_init__(self):
        if self.mode not in ("sum", "combined"):
            raise ValueError(f"mode must be 'sum' or 'combined', got {self.mode!r}")
        if self.count_rule not in ("banded", "literal"):
            raise ValueError(f"count_rule must be 'banded' or 'literal', got {self.count_rule!r}")
        if not 0 <= self.sum_near_opening < self.sum_obstructed < self.sum_open:
            raise ValueError("sum thresholds must satisfy 0 <= near_opening < obstructed < open")
        if not 0 <= self.mean_obstructed < self.mean_indoor < self.mean_open:
            raise ValueError("mean thresholds must satisfy 0 <= obstructed < indoor < open")
        if not self.dop_max > 0:
            raise ValueError("dop_max must be positive")
        if self.min_sats < 1:
            raise ValueError("min_sats must be at least 1")


DEFAULT_SUM_RULES = RuleSet(mode="sum")
DEFAULT_COMBINED_RULES = RuleSet(mode="combined")

_RULE_KEYS = {f.name: f.type for f in fields(RuleSet)}
_INT_KEYS = {"min_sats"}
_STR_KEYS = {"mode", "count_rule"}


def parse_rules(text: str, base: Optional[RuleSet] = None) -> RuleSet:
    """Read flat ``key=value`` lines (``#`` comments allowed) over ``base``."""
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    cp.optionxform = str
    cp.read_string("[rules]\n" + text)
    overrides = {}
    for key, value in cp["rules"].items():
        if key not in _RULE_KEYS:
            raise ValueError(f"unknown rule key {key!r}")
        if key in _STR_KEYS:
            overrides[key] = value.strip()
        elif key in _INT_KEYS:
            overrides[key] = int(value)
        else:
            overrides[key] = float(value)
    return replace(base or RuleSet(), **overrides)


def load_rules(path, base: Optional[RuleSet] = None) -> RuleSet:
    with open(path, encoding="utf-8") as fh:
        return parse_rules(fh.read(), base)


def _round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def classify_sum_only(m: EpochMetrics, rules: RuleSet = DEFAULT_SUM_RULES) -> Scenario:
    s = m.cn0_sum
    if s >= rules.sum_open:
        return Scenario.OPEN_OUTDOOR
    if s >= rules.sum_obstructed:
        return Scenario.OBSTRUCTED_OUTDOOR
    if s >= rules.sum_near_opening:
        return Scenario.INDOOR_NEAR_OPENING
    return Scenario.INDOOR


def classify_combined(m: EpochMetrics, rules: RuleSet = DEFAULT_COMBINED_RULES) -> Scenario:
    """Apply the combined rules in order: indoor, open, obstructed, near opening.

    An absent mean (no satellites) fails every mean comparison; such epochs
    are caught by the satellite-count clause. Fractional counts are rounded
    half up first.
    """
    s, mean = m.cn0_sum, m.cn0_mean
    count = _round_half_up(m.satellite_count)
    has_mean = mean is not None

    if s < rules.sum_near_opening and has_mean and mean < rules.mean_indoor:
        return Scenario.INDOOR
    if count < rules.min_sats:
        if rules.count_rule == "literal" or s < rules.sum_near_opening:
            return Scenario.INDOOR
        return Scenario.INDETERMINATE

    if (s >= rules.sum_open and has_mean and mean >= rules.mean_open
            and m.pdop <= rules.dop_max and m.hdop <= rules.dop_max):
        return Scenario.OPEN_OUTDOOR
    if (rules.sum_obstructed <= s < rules.sum_open
            and has_mean and rules.mean_obstructed <= mean < rules.mean_open):
        return Scenario.OBSTRUCTED_OUTDOOR
    if (rules.sum_near_opening <= s < rules.sum_obstructed
            and m.pdop > rules.dop_max and m.hdop > rules.dop_max):
        return Scenario.INDOOR_NEAR_OPENING
    return Scenario.INDETERMINATE


def classify(m: EpochMetrics, rules: RuleSet = DEFAULT_SUM_RULES) -> Scenario:
    if rules.mode == "combined":
        return classify_combined(m, rules)
    return classify_sum_only(m, rules)


def smooth_labels(labels: Iterable[Scenario], window: int = 1) -> Iterator[Scenario]:
    """Centred majority vote over ``window`` labels (truncated at the ends).

    When no single label has the most votes, the epoch keeps its own label.
    """
    if window < 1 or window % 2 == 0:
        raise ValueError(f"smoothing window must be a positive odd integer, got {window}")
    if window == 1:
        yield from labels
        return

    half = window // 2
    buf: deque = deque()
    centre = 0  # index into buf of the label being decided
    it = iter(labels)

    def decide() -> Scenario:
        own = buf[centre]
        counts = Counter(buf).most_common()
        best, n = counts[0]
        if len(counts) > 1 and counts[1][1] == n:
            return own
        return best

    for label in it:
        buf.append(label)
        if len(buf) - 1 - centre >= half:
            yield decide()
            if centre >= half:
                buf.popleft()
            else:
                centre += 1
    while centre < len(buf):
        yield decide()
        if centre >= half:
            buf.popleft()
        else:
            centre += 1


def classify_stream(metrics: Iterable[EpochMetrics], rules: RuleSet = DEFAULT_SUM_RULES,
                    smoothing_window: int = 1) -> Iterator[tuple]:
    """Yield ``(epoch_index, Scenario)`` per input epoch, optionally smoothed."""
    indices: deque = deque()

    def labels():
        for m in metrics:
            indices.append(m.epoch_index)
            yield classify(m, rules)

    for label in smooth_labels(labels(), smoothing_window):
        yield indices.popleft(), label


def write_scenarios_csv(rows: Iterable[tuple], fh: TextIO) -> int:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["epoch", "scenario"])
    n = 0
    for epoch, scenario in rows:
        writer.writerow([epoch, Scenario(scenario).value])
        n += 1
    return n


def write_scenarios_jsonl(rows: Iterable[tuple], fh: TextIO) -> int:
    n = 0
    for epoch, scenario in rows:
        fh.write(json.dumps({"epoch": epoch, "scenario": Scenario(scenario).value}) + "\n")
        n += 1
    return n


def read_scenarios(fh: TextIO) -> list:
    """Read ``(epoch, Scenario)`` pairs from scenario CSV or JSON lines."""
    text = fh.read()
    out = []
    if text.lstrip().startswith("{"):
        rows = (json.loads(line) for line in text.splitlines() if line.strip())
    else:
        reader = csv.DictReader(io.StringIO(text))
        if not reader.fieldnames or not {"epoch", "scenario"} <= set(reader.fieldnames):
            raise ValueError("scenario CSV needs 'epoch' and 'scenario' columns")
        rows = reader
    for row in rows:
        try:
            out.append((int(row["epoch"]), Scenario(row["scenario"].strip())))
        except (KeyError, ValueError) as exc:
            raise ValueError(f"bad scenario row {row!r}: {exc}") from exc
    return out
