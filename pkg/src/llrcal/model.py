"""The calibrated Gaussian LLR model and its closed-form relations.

If non-target LLRs are Gaussian and the LLR of the LLR is the LLR, the target
LLRs are Gaussian too, with the same variance and mirrored mean: targets
~ N(mu, sigma), non-targets ~ N(-mu, sigma), sigma**2 = 2*mu. A single
parameter mu therefore fixes everything, including the equal error rate.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateModelError, DomainError
from .normal import (DEFAULT_QUADRATURE, expect_under_normal, normal_pdf,
                     std_normal_cdf, std_normal_quantile)

LN2 = math.log(2.0)


@dataclass(frozen=True)
class CalibratedGaussianLlrModel:
    """Gaussian target/non-target LLR distributions satisfying idempotence.

    Attributes:
      mu: mean of the target LLR distribution, in nats. The non-target mean
        is ``-mu`` and both standard deviations are ``sqrt(2 * mu)``.
    """

    mu: float

    def __post_init__(self):
        if not (math.isfinite(self.mu) and self.mu >= 0):
            raise DomainError(f"mu must be finite and >= 0, got {self.mu!r}")

    @property
    def sigma(self):
        return math.sqrt(2.0 * self.mu)

    @property
    def target_mean(self):
        return self.mu

    @property
    def nontarget_mean(self):
        return -self.mu

    @property
    def is_degenerate(self):
        return self.mu == 0

    def _require_density(self):
        if self.is_degenerate:
            raise DegenerateModelError("mu=0 model has no LLR density (all LLRs are 0)")


@dataclass(frozen=True)
class GaussianPair:
    """Unconstrained Gaussian for non-target LLRs, before applying idempotence."""

    mu_d: float
    sigma_d: float

    def __post_init__(self):
        if not self.sigma_d > 0:
            raise DomainError(f"sigma_d must be positive, got {self.sigma_d!r}")


@dataclass(frozen=True)
class PairDiagnosis:
    passed: bool
    target_mass: float
    residual: float
    implied_target_mean: float
    implied_target_sigma: float


def from_eer(eer):
    """Model whose equal error rate is ``eer``: mu = 2 * quantile(eer)**2."""
    if not 0 < eer <= 0.5:
        raise DomainError(f"eer must lie in (0, 0.5], got {eer!r}; flip scores if eer > 0.5")
    if eer == 0.5:
        return CalibratedGaussianLlrModel(0.0)
    z = std_normal_quantile(eer)
    return CalibratedGaussianLlrModel(2.0 * z * z)


def eer_of_model(model):
    # threshold for EER is x=0 by symmetry; -mu/sigma simplifies to -sqrt(mu/2)
    if model.is_degenerate:
        return 0.5
    return std_normal_cdf(-model.mu / model.sigma)


def dprime(model):
    """Separation of the class means in units of the common std (equals sigma)."""
    if model.is_degenerate:
        return 0.0
    return 2.0 * model.mu / model.sigma


def target_pdf(model, x):
    model._require_density()
    return normal_pdf(x, model.mu, model.sigma)


def nontarget_pdf(model, x):
    model._require_density()
    return normal_pdf(x, -model.mu, model.sigma)


def llr_of_llr(model, x):
    """log(target_pdf(x) / nontarget_pdf(x)), evaluated in the log domain.

    Analytically this is ``x``; evaluating the Gaussian log densities keeps the
    identity checkable for |x| far beyond where the densities underflow.
    """
    model._require_density()
    x = np.asarray(x, dtype=float)
    s2 = 2.0 * model.sigma ** 2
    log_tar = -((x - model.mu) ** 2) / s2
    log_non = -((x + model.mu) ** 2) / s2
    out = log_tar - log_non
    return float(out) if out.ndim == 0 else out


def posterior_target(x, prior):
    """P(target | LLR x) for target prior ``prior``, without overflow."""
    if not 0 < prior < 1:
        raise DomainError(f"prior must lie in (0, 1), got {prior!r}")
    x = np.asarray(x, dtype=float)
    logit = x + math.log(prior) - math.log1p(-prior)
    # 1/(1+exp(-t)) = exp(-logaddexp(0, -t))
    out = np.exp(-np.logaddexp(0.0, -logit))
    return float(out) if out.ndim == 0 else out


def validate_gaussian_pair(pair, tol=1e-9):
    """Check whether exp(x) * N(x | mu_d, sigma_d) is itself a proper density.

    That mass is exp(mu_d + sigma_d**2 / 2), so the pair is a valid calibrated
    non-target distribution iff mu_d = -sigma_d**2 / 2. The implied target
    density is N(mu_d + sigma_d**2, sigma_d) in either case.
    """
    residual = pair.mu_d + 0.5 * pair.sigma_d ** 2
    return PairDiagnosis(
        passed=abs(residual) <= tol,
        target_mass=math.exp(residual),
        residual=residual,
        implied_target_mean=pair.mu_d + pair.sigma_d ** 2,
        implied_target_sigma=pair.sigma_d,
    )


def _softplus(x):
    return np.logaddexp(0.0, x)


def theoretical_cllr(model, quad=DEFAULT_QUADRATURE):
    """Cllr in bits of a system whose LLRs follow ``model`` exactly.

    By symmetry of the two classes only the target half needs integrating:
    E[log2(1 + exp(-x))] with x ~ N(mu, sigma).
    """
    if model.is_degenerate:
        return 1.0
    nats = expect_under_normal(lambda x: _softplus(-x), model.mu, model.sigma, quad)
    return nats / LN2


def expectation_constraints(model, quad=DEFAULT_QUADRATURE):
    """Return (E[exp(x) | non-target], E[exp(-x) | target]); both are 1 in theory."""
    if model.is_degenerate:
        return 1.0, 1.0
    e_r_non = expect_under_normal(np.exp, -model.mu, model.sigma, quad)
    e_inv_r_tar = expect_under_normal(lambda x: np.exp(-x), model.mu, model.sigma, quad)
    return e_r_non, e_inv_r_tar
