"""Deterministic synthetic trials drawn from the calibrated Gaussian LLR model.

Uniforms come from Philox4x64-10 keyed directly by the seed, counter starting
at zero. Each raw 64-bit word ``w`` becomes ``((w >> 11) + 0.5) * 2**-53``,
which lies strictly inside (0, 1), and is mapped to a normal deviate through
``std_normal_quantile``. Targets consume the stream first, then non-targets.
"""

from dataclasses import dataclass

import numpy as np

from .calibration import AffineCalibration
from .errors import DomainError
from .model import CalibratedGaussianLlrModel, from_eer
from .normal import std_normal_quantile
from .scores import TrialScores

_SEED_LIMIT = 2**64


@dataclass(frozen=True)
class SynthSpec:
    model: CalibratedGaussianLlrModel
    n_tar: int
    n_non: int
    seed: int = 0
    decal: AffineCalibration = None

    def __post_init__(self):
        if self.n_tar < 0 or self.n_non < 0:
            raise DomainError("trial counts must be non-negative")
        if not 0 <= self.seed < _SEED_LIMIT:
            raise DomainError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")

    @classmethod
    def from_eer(cls, eer, n_tar, n_non, seed=0, decal=None):
        return cls(from_eer(eer), n_tar, n_non, seed, decal)


def uniform_stream(seed, n):
    """The first ``n`` uniforms in (0, 1) of the stream keyed by ``seed``."""
    bitgen = np.random.Philox(key=seed)
    raw = bitgen.random_raw(n)
    return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


def standard_normals(seed, n):
    if n == 0:
        return np.empty(0)
    return std_normal_quantile(uniform_stream(seed, n))


def sample_calibrated(spec):
    """Calibrated LLRs: targets ~ N(mu, sigma), non-targets ~ N(-mu, sigma)."""
    z = standard_normals(spec.seed, spec.n_tar + spec.n_non)
    mu, sigma = spec.model.mu, spec.model.sigma
    return TrialScores(mu + sigma * z[:spec.n_tar], -mu + sigma * z[spec.n_tar:])


def decalibrate(llrs, cal):
    """Raw scores ``(x - b) / a`` that ``cal`` maps back onto ``llrs``."""
    return llrs.map(lambda x: (x - cal.b) / cal.a)


def simulate(spec):
    """Calibrated LLRs, de-calibrated through ``spec.decal`` when given."""
    llrs = sample_calibrated(spec)
    return llrs if spec.decal is None else decalibrate(llrs, spec.decal)
