"""Command line interface: ``llrcal <subcommand> ...``.

Exit status: 0 success, 2 usage or parse error, 3 fit/evaluation error,
4 I/O error.
"""

import argparse
import contextlib
import sys

from . import io
from .calibration import AffineCalibration, cmlg_fit, implied_llr_model, logreg_fit, score_stats
from .errors import DomainError, LlrcalError, ScoreFileError
from .evaluation import det_curve, det_slope, evaluate
from .model import CalibratedGaussianLlrModel, dprime, eer_of_model, from_eer, theoretical_cllr
from .normal import Quadrature
from .synth import SynthSpec, simulate

EXIT_USAGE = 2
EXIT_FIT = 3
EXIT_IO = 4


class UsageError(Exception):
    pass


def _num(x):
    return "%.6g" % x


@contextlib.contextmanager
def _open_out(path):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _read_scores(path):
    if path == "-":
        return io.parse_score_file(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return io.parse_score_file(fh)


def _model_from_args(args):
    try:
        if args.eer is not None:
            return from_eer(args.eer)
        return CalibratedGaussianLlrModel(args.mu)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def cmd_calibrate(args):
    scores = _read_scores(args.scores)
    if args.method == "cmlg":
        cal = cmlg_fit(scores, args.alpha)
    else:
        cal = logreg_fit(scores, args.alpha)
    with _open_out(args.out) as fh:
        io.write_calibration(cal, fh, method=args.method, alpha=io.format_float(args.alpha))
    print(f"a {_num(cal.a)}")
    print(f"b {_num(cal.b)}")
    if args.method == "cmlg":
        model = implied_llr_model(cal, score_stats(scores, args.alpha))
        print(f"mu {_num(model.mu)}")
        print(f"sigma {_num(model.sigma)}")
        print(f"eer {_num(eer_of_model(model))}")


def cmd_apply(args):
    with open(args.cal, encoding="utf-8") as fh:
        cal = io.read_calibration(fh)
    scores = _read_scores(args.scores)
    with _open_out(args.out) as fh:
        io.write_score_file(scores.map(cal), fh)


def cmd_evaluate(args):
    report = evaluate(_read_scores(args.scores))
    if args.report:
        with _open_out(args.report) as fh:
            io.write_report(report, fh)
    print(f"min_cllr {_num(report.min_cllr)}")
    print(f"cllr {_num(report.cllr)}")
    print(f"eer {_num(report.eer)}")


def cmd_det(args):
    curve = det_curve(_read_scores(args.scores))
    with _open_out(args.out) as fh:
        io.write_det_csv(curve, fh)
    print(f"det_slope {_num(det_slope(curve, args.lo, args.hi))}")


def cmd_theory(args):
    model = _model_from_args(args)
    quad = Quadrature(args.abs_tol, args.rel_tol, args.max_subdivisions)
    print(f"mu {_num(model.mu)}")
    print(f"sigma {_num(model.sigma)}")
    print(f"dprime {_num(dprime(model))}")
    print(f"eer {_num(eer_of_model(model))}")
    print(f"cllr {_num(theoretical_cllr(model, quad))}")


def cmd_simulate(args):
    model = _model_from_args(args)
    decal = None
    if args.a is not None or args.b is not None:
        try:
            decal = AffineCalibration(1.0 if args.a is None else args.a, 0.0 if args.b is None else args.b)
        except DomainError as exc:
            raise UsageError(str(exc)) from None
    try:
        spec = SynthSpec(model, args.ntar, args.nnon, args.seed, decal)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    with _open_out(args.out) as fh:
        io.write_score_file(simulate(spec), fh)


def _add_model_choice(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--eer", type=float, help="equal error rate in (0, 0.5]")
    g.add_argument("--mu", type=float, help="target LLR mean in nats")


def build_parser():
    parser = argparse.ArgumentParser(prog="llrcal", description="Score-to-LLR calibration and evaluation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("calibrate", help="fit an affine calibration on training scores")
    p.add_argument("--method", choices=("cmlg", "logreg"), default="cmlg")
    p.add_argument("--alpha", type=float, default=0.5, help="target weight / effective prior")
    p.add_argument("--scores", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("apply", help="map raw scores to LLRs with a calibration file")
    p.add_argument("--cal", required=True)
    p.add_argument("--scores", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("evaluate", help="Cllr, min-Cllr, EER and diagnostics of LLR scores")
    p.add_argument("--scores", required=True)
    p.add_argument("--report")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("det", help="DET points as CSV plus the DET slope")
    p.add_argument("--scores", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--lo", type=float, default=0.001)
    p.add_argument("--hi", type=float, default=0.5)
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("theory", help="closed-form quantities of the Gaussian LLR model")
    _add_model_choice(p)
    p.add_argument("--abs-tol", type=float, default=1e-10)
    p.add_argument("--rel-tol", type=float, default=1e-10)
    p.add_argument("--max-subdivisions", type=int, default=10**6)
    p.set_defaults(func=cmd_theory)

    p = sub.add_parser("simulate", help="sample trials from the Gaussian LLR model")
    _add_model_choice(p)
    p.add_argument("--ntar", type=int, required=True)
    p.add_argument("--nnon", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--a", type=float, help="scale of the map the raw scores are de-calibrated through")
    p.add_argument("--b", type=float, help="offset of that map")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "alpha", None) is not None and not 0 <= args.alpha <= 1:
        parser.error("--alpha must lie in [0, 1]")
    try:
        args.func(args)
    except (UsageError, ScoreFileError) as exc:
        print(f"llrcal {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LlrcalError as exc:
        print(f"llrcal {args.command}: {exc}", file=sys.stderr)
        return EXIT_FIT
    except OSError as exc:
        print(f"llrcal {args.command}: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
