"""Plain-text persistence for scores, calibrations, reports and DET points.

Score files hold one trial per line, ``<label> <value>``, with labels ``tgt``
and ``non``. ``#`` starts a comment and blank lines are skipped. Calibration
and report files are flat ``key value`` documents. Floats are written with
17 significant digits, which round-trips binary64 exactly.
"""

import math

import numpy as np

from .calibration import AffineCalibration
from .errors import DomainError, ScoreFileError
from .evaluation import DetCurve, EvaluationReport
from .scores import TrialScores

TARGET_LABEL = "tgt"
NONTARGET_LABEL = "non"


def format_float(x):
    return "%.17g" % x


def _parse_float(token, line_no, what="value"):
    try:
        value = float(token)
    except ValueError:
        raise ScoreFileError(f"non-numeric {what} {token!r}", line_no) from None
    if not math.isfinite(value):
        raise ScoreFileError(f"non-finite {what} {token!r}", line_no)
    return value


def _content_lines(stream):
    for line_no, line in enumerate(stream, start=1):
        text = line.split("#", 1)[0].strip()
        if text:
            yield line_no, text


def parse_score_file(stream):
    """Read a score file from an iterable of lines (e.g. an open text file)."""
    if isinstance(stream, str):
        stream = stream.splitlines()
    tar, non = [], []
    for line_no, text in _content_lines(stream):
        parts = text.split()
        if len(parts) != 2:
            raise ScoreFileError(f"expected '<label> <value>', got {text!r}", line_no)
        label, token = parts
        value = _parse_float(token, line_no)
        if label == TARGET_LABEL:
            tar.append(value)
        elif label == NONTARGET_LABEL:
            non.append(value)
        else:
            raise ScoreFileError(f"unknown label {label!r} (expected 'tgt' or 'non')", line_no)
    return TrialScores(tar, non)


def write_score_file(scores, sink):
    """Write targets first, then non-targets."""
    lines = [f"{TARGET_LABEL} {format_float(x)}\n" for x in scores.targets.tolist()]
    lines += [f"{NONTARGET_LABEL} {format_float(x)}\n" for x in scores.nontargets.tolist()]
    sink.write("".join(lines))


def read_key_values(stream):
    if isinstance(stream, str):
        stream = stream.splitlines()
    out = {}
    for line_no, text in _content_lines(stream):
        parts = text.split(None, 1)
        if len(parts) != 2:
            raise ScoreFileError(f"expected '<key> <value>', got {text!r}", line_no)
        out[parts[0]] = (parts[1].strip(), line_no)
    return out


def read_calibration(stream):
    """Read ``a`` and ``b``; any other keys are ignored."""
    fields = read_key_values(stream)
    values = {}
    for key in ("a", "b"):
        if key not in fields:
            raise ScoreFileError(f"calibration file is missing field {key!r}")
        token, line_no = fields[key]
        values[key] = _parse_float(token, line_no, what=f"field {key!r}")
    try:
        return AffineCalibration(values["a"], values["b"])
    except DomainError as exc:
        raise ScoreFileError(str(exc)) from None


def write_calibration(cal, sink, **metadata):
    lines = [f"a {format_float(cal.a)}\n", f"b {format_float(cal.b)}\n"]
    lines += [f"{k} {v}\n" for k, v in metadata.items()]
    sink.write("".join(lines))


def _format_value(v):
    return str(v) if isinstance(v, int) else format_float(v)


def write_report(report, sink):
    sink.write("".join(f"{k} {_format_value(v)}\n" for k, v in report.as_dict().items()))


def read_report(stream):
    fields = read_key_values(stream)
    kwargs = {}
    for name, field in EvaluationReport.__dataclass_fields__.items():
        if name not in fields:
            raise ScoreFileError(f"report is missing field {name!r}")
        token, line_no = fields[name]
        if field.type is int:
            kwargs[name] = int(token)
        else:
            try:
                kwargs[name] = float(token)
            except ValueError:
                raise ScoreFileError(f"non-numeric field {name!r}", line_no) from None
    return EvaluationReport(**kwargs)


def write_det_csv(curve, sink):
    rows = ["threshold,p_miss,p_fa\n"]
    rows += [f"{format_float(t)},{format_float(m)},{format_float(f)}\n"
             for t, m, f in zip(curve.threshold.tolist(), curve.p_miss.tolist(), curve.p_fa.tolist())]
    sink.write("".join(rows))


def read_det_csv(stream):
    if isinstance(stream, str):
        stream = stream.splitlines()
    lines = [ln.strip() for ln in stream if ln.strip()]
    if not lines or lines[0] != "threshold,p_miss,p_fa":
        raise ScoreFileError("missing DET csv header", 1)
    data = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]]).reshape(-1, 3)
    return DetCurve(data[:, 0], data[:, 1], data[:, 2])
