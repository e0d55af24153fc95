import io as _io
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from llrcal.calibration import AffineCalibration
from llrcal.errors import DomainError, ScoreFileError
from llrcal.evaluation import det_curve, evaluate
from llrcal.io import (parse_score_file, read_calibration, read_det_csv, read_report,
                       write_calibration, write_det_csv, write_report, write_score_file)
from llrcal.scores import TrialScores

finite = st.floats(allow_nan=False, allow_infinity=False)


def roundtrip(scores):
    buf = _io.StringIO()
    write_score_file(scores, buf)
    return parse_score_file(_io.StringIO(buf.getvalue())), buf.getvalue()


class TestScoreFile:
    def test_basic(self):
        s = parse_score_file("tgt 1.5\nnon -0.3\n")
        assert list(s.targets) == [1.5] and list(s.nontargets) == [-0.3]

    def test_comments_and_blanks(self):
        s = parse_score_file("# comment\n\ntgt 0  # trailing\n")
        assert list(s.targets) == [0.0] and s.n_nontargets == 0

    def test_scientific(self):
        assert parse_score_file("non 1e-3\n").nontargets[0] == 0.001

    @pytest.mark.parametrize("text,line,msg", [
        ("tgt abc", 1, "non-numeric"),
        ("tgt 1\nfoo 2\n", 2, "unknown label"),
        ("tgt 1 2\n", 1, "expected"),
        ("\n\nnon nan\n", 3, "non-finite"),
        ("tgt inf\n", 1, "non-finite"),
    ])
    def test_errors(self, text, line, msg):
        with pytest.raises(ScoreFileError, match=msg) as info:
            parse_score_file(text)
        assert info.value.line == line
        assert f"line {line}" in str(info.value)

    def test_write(self):
        _, text = roundtrip(TrialScores([1.5], []))
        assert text == "tgt 1.5\n"

    def test_empty(self):
        s, text = roundtrip(TrialScores())
        assert text == "" and s == TrialScores()

    @given(st.lists(finite, max_size=30), st.lists(finite, max_size=30))
    def test_round_trip(self, tar, non):
        s = TrialScores(tar, non)
        assert roundtrip(s)[0] == s

    def test_label_order_independent(self):
        grouped = "tgt 1\ntgt 2\nnon 3\nnon 4\n"
        interleaved = "non 3\ntgt 1\nnon 4\ntgt 2\n"
        assert parse_score_file(grouped) == parse_score_file(interleaved)

    def test_duplicates_preserved(self):
        assert parse_score_file("tgt 1\ntgt 1\n").n_targets == 2

    def test_scores_validation(self):
        with pytest.raises(DomainError):
            TrialScores([math.nan], [])


class TestCalibrationFile:
    @pytest.mark.parametrize("a,b", [(1.0, 0.0), (2.5, -0.75), (math.pi, -1 / 3)])
    def test_round_trip(self, a, b):
        buf = _io.StringIO()
        write_calibration(AffineCalibration(a, b), buf, method="cmlg")
        cal = read_calibration(_io.StringIO(buf.getvalue()))
        assert (cal.a, cal.b) == (a, b)

    def test_missing_field(self):
        with pytest.raises(ScoreFileError, match="'a'"):
            read_calibration("b 1.0\n")

    def test_non_finite(self):
        with pytest.raises(ScoreFileError, match="non-finite"):
            read_calibration("a inf\nb 0\n")

    def test_extra_keys_ignored(self):
        cal = read_calibration("# fitted\nversion 2\na 2\nb -1\nnote anything goes\n")
        assert (cal.a, cal.b) == (2.0, -1.0)

    def test_nonpositive_scale(self):
        with pytest.raises(ScoreFileError):
            read_calibration("a -1\nb 0\n")


def test_report_round_trip():
    rng = np.random.default_rng(0)
    r = evaluate(TrialScores(rng.normal(1, 1, 100), rng.normal(-1, 1, 100)))
    buf = _io.StringIO()
    write_report(r, buf)
    assert read_report(buf.getvalue()) == r


def test_det_csv_round_trip():
    c = det_curve(TrialScores([1.0, 2.0, 2.0], [0.5, 2.0]))
    buf = _io.StringIO()
    write_det_csv(c, buf)
    text = buf.getvalue()
    assert text.splitlines()[0] == "threshold,p_miss,p_fa"
    back = read_det_csv(text)
    np.testing.assert_array_equal(back.threshold, c.threshold)
    np.testing.assert_array_equal(back.p_miss, c.p_miss)
