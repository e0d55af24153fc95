"""Affine score-to-LLR calibration: closed-form CMLG and logistic regression.

CMLG (constrained maximum-likelihood Gaussian) models raw scores as two
equal-variance Gaussians and chooses the affine map that sends them onto the
calibrated Gaussian LLR model. Logistic regression minimizes prior-weighted
cross-entropy instead and serves as the baseline.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (ConvergenceError, DegenerateVarianceError, DomainError,
                     InconsistentCalibrationError, InvertedDetectorError,
                     SeparableDataError)
from .model import CalibratedGaussianLlrModel


@dataclass(frozen=True)
class AffineCalibration:
    """The monotone map x = a * s + b from raw score to LLR (nats)."""

    a: float = 1.0
    b: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError(f"calibration parameters must be finite, got a={self.a!r}, b={self.b!r}")
        if not self.a > 0:
            raise DomainError(f"calibration scale must be positive, got a={self.a!r}")

    def __call__(self, s):
        return self.a * np.asarray(s, dtype=float) + self.b

    def inverse(self):
        return AffineCalibration(1.0 / self.a, -self.b / self.a)


@dataclass(frozen=True)
class ScoreStats:
    m_e: float
    m_d: float
    v: float
    n_e: int
    n_d: int
    alpha: float


@dataclass(frozen=True)
class LogregOptions:
    """Settings for :func:`logreg_fit`.

    ``ridge`` adds ``ridge/2 * (a**2 + b**2)`` to the objective; it is zero by
    default and makes separable data fittable when positive.
    """

    max_iter: int = 200
    grad_tol: float = 1e-8
    cap: float = 1e6
    ridge: float = 0.0


def _check_alpha(alpha, open_interval=False):
    ok = 0 < alpha < 1 if open_interval else 0 <= alpha <= 1
    if not ok:
        bounds = "(0, 1)" if open_interval else "[0, 1]"
        raise DomainError(f"alpha must lie in {bounds}, got {alpha!r}")


def score_stats(scores, alpha=0.5):
    """Class means and the alpha-weighted pooled variance (1/N normalization)."""
    _check_alpha(alpha)
    scores.require_both()
    tar, non = scores.targets, scores.nontargets
    n_e, n_d = tar.size, non.size
    m_e = math.fsum(tar) / n_e
    m_d = math.fsum(non) / n_d
    var_e = math.fsum((tar - m_e) ** 2) / n_e
    var_d = math.fsum((non - m_d) ** 2) / n_d
    v = alpha * var_e + (1.0 - alpha) * var_d
    return ScoreStats(m_e=m_e, m_d=m_d, v=v, n_e=n_e, n_d=n_d, alpha=alpha)


def cmlg_from_stats(stats):
    if not stats.v > 0:
        raise DegenerateVarianceError("pooled score variance is zero")
    if not stats.m_e > stats.m_d:
        raise InvertedDetectorError(
            f"target mean {stats.m_e:g} does not exceed non-target mean {stats.m_d:g}")
    a = (stats.m_e - stats.m_d) / stats.v
    b = -a * (stats.m_e + stats.m_d) / 2.0
    return AffineCalibration(float(a), float(b))


def cmlg_fit(scores, alpha=0.5):
    """Closed-form constrained ML Gaussian calibration.

    The calibrated class means come out symmetric about zero and the
    calibrated pooled variance equals their difference, as the Gaussian LLR
    model requires.
    """
    return cmlg_from_stats(score_stats(scores, alpha))


def apply_calibration(cal, scores):
    return scores.map(cal)


def implied_llr_model(cal, stats, tol=1e-6):
    """The LLR model that a CMLG-consistent (cal, stats) pair implies.

    Both residuals are measured relative to max(1, |mu|).
    """
    mu_e = cal.a * stats.m_e + cal.b
    mu_d = cal.a * stats.m_d + cal.b
    sigma2 = cal.a ** 2 * stats.v
    residuals = {"symmetry": mu_e + mu_d, "variance": sigma2 - (mu_e - mu_d)}
    scale = max(1.0, abs(mu_e))
    if any(abs(r) > tol * scale for r in residuals.values()):
        detail = ", ".join(f"{k}={r:.3g}" for k, r in residuals.items())
        raise InconsistentCalibrationError(f"calibration does not satisfy the Gaussian LLR constraints: {detail}", residuals)
    return CalibratedGaussianLlrModel(max(mu_e, 0.0))


def _sigmoid(t):
    return np.exp(-np.logaddexp(0.0, -t))


class _CrossEntropy:
    """Prior-weighted cross-entropy (nats) of the logit a*s + b + offset."""

    def __init__(self, scores, alpha, ridge=0.0):
        self.tar = scores.targets
        self.non = scores.nontargets
        self.w_tar = alpha / self.tar.size
        self.w_non = (1.0 - alpha) / self.non.size
        self.offset = math.log(alpha) - math.log1p(-alpha)
        self.ridge = ridge

    def value(self, a, b):
        c = b + self.offset
        t = a * self.tar + c
        n = a * self.non + c
        return (self.w_tar * math.fsum(np.logaddexp(0.0, -t))
                + self.w_non * math.fsum(np.logaddexp(0.0, n))
                + 0.5 * self.ridge * (a * a + b * b))

    def grad_hess(self, a, b):
        c = b + self.offset
        t = a * self.tar + c
        n = a * self.non + c
        pt = _sigmoid(t)
        pn = _sigmoid(n)
        # d/dt softplus(-t) = pt - 1 ; d/dn softplus(n) = pn
        gt = self.w_tar * (pt - 1.0)
        gn = self.w_non * pn
        ht = self.w_tar * pt * (1.0 - pt)
        hn = self.w_non * pn * (1.0 - pn)
        g = np.array([
            math.fsum(gt * self.tar) + math.fsum(gn * self.non) + self.ridge * a,
            math.fsum(gt) + math.fsum(gn) + self.ridge * b,
        ])
        h_aa = math.fsum(ht * self.tar ** 2) + math.fsum(hn * self.non ** 2) + self.ridge
        h_ab = math.fsum(ht * self.tar) + math.fsum(hn * self.non)
        h_bb = math.fsum(ht) + math.fsum(hn) + self.ridge
        return g, np.array([[h_aa, h_ab], [h_ab, h_bb]])


def logreg_objective(scores, a, b, alpha=0.5, ridge=0.0):
    """Cross-entropy (nats) that :func:`logreg_fit` minimizes."""
    _check_alpha(alpha, open_interval=True)
    scores.require_both()
    return _CrossEntropy(scores, alpha, ridge).value(a, b)


def logreg_fit(scores, alpha=0.5, opts=None, callback=None):
    """Prior-weighted logistic-regression calibration by damped Newton.

    Minimizes ``(alpha/N_e) sum_tar softplus(-(a s + b + lam))
    + ((1-alpha)/N_d) sum_non softplus(a s + b + lam)`` with
    ``lam = log(alpha / (1 - alpha))``, so the returned ``b`` is an LLR offset
    that does not depend on alpha's prior odds. Starts from the CMLG solution.

    Args:
      scores: training scores.
      alpha: effective target prior in (0, 1).
      opts: LogregOptions.
      callback: called as ``callback(iteration, a, b, objective)`` for the
        start point and after every accepted step.

    Raises:
      SeparableDataError: classes are perfectly separated, or the iterates
        exceed ``opts.cap``.
      ConvergenceError: gradient tolerance not met within ``opts.max_iter``.
    """
    opts = opts or LogregOptions()
    _check_alpha(alpha, open_interval=True)
    scores.require_both()
    # overlap only at a tie still leaves the optimum at infinite scale
    if opts.ridge == 0 and scores.nontargets.max() <= scores.targets.min():
        raise SeparableDataError("targets and non-targets are perfectly separated")

    try:
        start = cmlg_fit(scores, alpha)
        a, b = start.a, start.b
    except (DegenerateVarianceError, InvertedDetectorError):
        a, b = 1e-3, 0.0

    obj = _CrossEntropy(scores, alpha, opts.ridge)
    f = obj.value(a, b)
    if callback is not None:
        callback(0, a, b, f)
    gnorm = math.inf
    for it in range(1, opts.max_iter + 1):
        g, h = obj.grad_hess(a, b)
        gnorm = float(np.max(np.abs(g)))
        if gnorm <= opts.grad_tol:
            break
        try:
            step = np.linalg.solve(h, g)
        except np.linalg.LinAlgError:
            step = g
        if not np.all(np.isfinite(step)):
            raise SeparableDataError("Hessian vanished: data appear separable")
        # backtracking on the convex objective; Armijo with c=1e-4
        slope = float(g @ step)
        t = 1.0
        while True:
            na, nb = a - t * step[0], b - t * step[1]
            if max(abs(na), abs(nb)) > opts.cap:
                raise SeparableDataError(
                    f"parameters exceed cap {opts.cap:g}: data appear separable")
            nf = obj.value(na, nb)
            if nf <= f - 1e-4 * t * slope:
                break
            t *= 0.5
            if t < 1e-20:
                break
        if t < 1e-20:
            # no representable decrease left; accept the point if the gradient is near zero
            break
        a, b, f = na, nb, nf
        if callback is not None:
            callback(it, a, b, f)
    else:
        g, _ = obj.grad_hess(a, b)
        gnorm = float(np.max(np.abs(g)))

    if gnorm > opts.grad_tol:
        raise ConvergenceError(
            f"logistic regression did not converge (gradient norm {gnorm:.3g})", a, b, gnorm)
    if not a > 0:
        raise InvertedDetectorError(f"logistic regression gave non-positive scale a={a:g}")
    return AffineCalibration(float(a), float(b))
