"""Calibration of detection scores to log-likelihood-ratios.

Fits affine score-to-LLR maps (closed-form CMLG or logistic regression),
evaluates calibration (Cllr, min-Cllr, EER, DET slope) and provides the
Gaussian calibrated-LLR model with a deterministic synthetic-trial generator.
"""

from .calibration import (AffineCalibration, LogregOptions, ScoreStats, apply_calibration,
                          cmlg_fit, implied_llr_model, logreg_fit, logreg_objective, score_stats)
from .errors import *  # noqa: F401,F403
from .evaluation import (CalibrationDiagnostics, DetCurve, EvaluationReport,
                         calibration_diagnostics, det_curve, det_slope, empirical_cllr,
                         eer_rocch, evaluate, min_cllr_pav)
from .io import (parse_score_file, read_calibration, read_report, write_calibration,
                 write_det_csv, write_report, write_score_file)
from .model import (CalibratedGaussianLlrModel, GaussianPair, dprime, eer_of_model,
                    expectation_constraints, from_eer, llr_of_llr, nontarget_pdf,
                    posterior_target, target_pdf, theoretical_cllr, validate_gaussian_pair)
from .normal import (Quadrature, expect_under_normal, normal_pdf, std_normal_cdf,
                     std_normal_quantile)
from .scores import TrialScores
from .synth import SynthSpec, decalibrate, sample_calibrated, simulate

__version__ = "0.1.0"
