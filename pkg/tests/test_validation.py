import io
import json
from decimal import Decimal

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nmeascene.classifier import Scenario
from nmeascene.validation import (
    EmptyFile,
    LabelInterval,
    OverlapError,
    UncoveredEpoch,
    UnknownLabel,
    evaluate,
    load_labels,
    parse_labels,
)

S = Scenario
TRUTHS = [S.OPEN_OUTDOOR, S.OBSTRUCTED_OUTDOOR, S.INDOOR_NEAR_OPENING, S.INDOOR]


def labels(text):
    return parse_labels(io.StringIO(text))


class TestLoadLabels:
    def test_single(self):
        (iv,) = labels("start_epoch,end_epoch,label\n0,3600,open_outdoor\n")
        assert (iv.start_epoch, iv.end_epoch, iv.truth) == (0, 3600, S.OPEN_OUTDOOR)
        assert iv.end_epoch - iv.start_epoch == 3600

    def test_overlap(self):
        with pytest.raises(OverlapError):
            labels("0,10,indoor\n5,15,indoor\n")

    def test_walk(self):
        ivs = labels("start_epoch,end_epoch,label\n300,400,indoor\n0,100,open_outdoor\n"
                     "100,200,obstructed_outdoor\n200,300,indoor_near_opening\n")
        assert [iv.truth for iv in ivs] == TRUTHS
        assert [iv.start_epoch for iv in ivs] == [0, 100, 200, 300]

    def test_unknown(self):
        with pytest.raises(UnknownLabel):
            labels("0,10,cave\n")
        with pytest.raises(UnknownLabel):
            labels("0,10,indeterminate\n")

    def test_empty(self):
        with pytest.raises(EmptyFile):
            labels("start_epoch,end_epoch,label\n")

    def test_bad_range(self):
        with pytest.raises(ValueError):
            labels("10,10,indoor\n")

    def test_from_path(self, tmp_path):
        p = tmp_path / "labels.csv"
        p.write_text("0,5,indoor\n")
        assert len(load_labels(p)) == 1


def make_pairs(total, matches, truth=S.OPEN_OUTDOOR, wrong=S.INDOOR):
    preds = [(i, truth if i < matches else wrong) for i in range(total)]
    return preds, [LabelInterval(0, total, truth)]


class TestEvaluate:
    @pytest.mark.parametrize("total, matches, acc, err", [
        (82323, 80765, "98.11", "1.89"),
        (82323, 73650, "89.46", "10.54"),
    ])
    def test_reported_percentages(self, total, matches, acc, err):
        report = evaluate(*make_pairs(total, matches))
        assert report.accuracy_pct == Decimal(acc)
        assert report.error_pct == Decimal(err)
        assert report.mismatches == total - matches

    def test_perfect(self):
        preds = [(i, TRUTHS[i // 10]) for i in range(40)]
        truth = [LabelInterval(10 * k, 10 * k + 10, t) for k, t in enumerate(TRUTHS)]
        report = evaluate(preds, truth)
        assert report.accuracy_pct == Decimal("100.00")
        off = report.confusion.copy()
        off[:4, :4] -= np.diag(np.diag(report.confusion[:4, :4]))
        assert not off.any()

    def test_indeterminate_counted_as_error(self):
        preds = [(0, S.INDOOR), (1, S.INDETERMINATE), (2, S.OPEN_OUTDOOR)]
        report = evaluate(preds, [LabelInterval(0, 3, S.INDOOR)])
        assert (report.matches, report.mismatches, report.indeterminate) == (1, 2, 1)
        assert report.confusion[4, 3] == 1

    def test_uncovered(self):
        with pytest.raises(UncoveredEpoch):
            evaluate([(5, S.INDOOR)], [LabelInterval(0, 5, S.INDOOR)])
        with pytest.raises(UncoveredEpoch):
            evaluate([(5, S.INDOOR)], [LabelInterval(0, 3, S.INDOOR), LabelInterval(6, 9, S.INDOOR)])

    def test_serialization(self):
        report = evaluate(*make_pairs(82323, 80765))
        data = json.loads(report.to_json())
        assert data["accuracy_pct"] == 98.11
        assert data["total_epochs"] == 82323
        assert len(data["confusion"]["counts"]) == 5
        assert "80765 (98.11%)" in report.format_table()

    @given(st.lists(st.tuples(st.sampled_from(TRUTHS), st.integers(1, 30)), min_size=1, max_size=8),
           st.data())
    def test_invariants(self, spans, data):
        truth, start = [], 0
        for label, length in spans:
            truth.append(LabelInterval(start, start + length, label))
            start += length
        preds = [(e, data.draw(st.sampled_from(list(S)))) for e in range(start)]
        report = evaluate(preds, truth)
        shuffled = evaluate(preds, data.draw(st.permutations(truth)))
        assert shuffled.to_dict() == report.to_dict()
        assert report.matches + report.mismatches == report.total_epochs == start
        assert report.indeterminate <= report.mismatches
        assert report.confusion.sum() == start
        assert int(np.trace(report.confusion[:4])) == report.matches
        assert report.confusion[4].sum() == report.indeterminate
