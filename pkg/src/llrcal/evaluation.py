"""Calibration and discrimination metrics for two-class LLR scores."""

import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import InsufficientDataError
from .normal import std_normal_quantile

LN2 = math.log(2.0)


def _softplus(x):
    return np.logaddexp(0.0, x)


def _cllr_nats(tar, non):
    return 0.5 * (math.fsum(_softplus(-tar)) / tar.size + math.fsum(_softplus(non)) / non.size)


def empirical_cllr(llrs):
    """Log-likelihood-ratio cost in bits, with equal weight on both classes."""
    llrs.require_both()
    return _cllr_nats(llrs.targets, llrs.nontargets) / LN2


def _group_counts(llrs):
    """Per distinct score (ascending): number of targets and non-targets."""
    tar, non = llrs.targets, llrs.nontargets
    scores = np.concatenate([tar, non])
    is_tar = np.concatenate([np.ones(tar.size, dtype=np.int64), np.zeros(non.size, dtype=np.int64)])
    order = np.argsort(scores, kind="stable")
    scores = scores[order]
    is_tar = is_tar[order]
    starts = np.flatnonzero(np.concatenate([[True], scores[1:] != scores[:-1]]))
    k_tar = np.add.reduceat(is_tar, starts)
    k_non = np.diff(np.append(starts, scores.size)) - k_tar
    return scores[starts], k_tar, k_non


def _pav_blocks(k_tar, k_non):
    """Pool adjacent violators on ascending score groups.

    Each group's optimal posterior is a monotone function of k_tar/k_non for
    any class weighting, so violations are detected by exact integer
    cross-multiplication. Equal neighbours are pooled too, which yields the
    maximal blocks, i.e. the vertices of the ROC convex hull.

    Returns (block_k_tar, block_k_non, block_end) where ``block_end`` is the
    exclusive end index of each block into the group arrays.
    """
    # pre-pool runs of pure groups of the same class; PAV would pool them anyway
    kind = np.where(k_non == 0, 1, np.where(k_tar == 0, -1, 0))
    new_run = np.concatenate([[True], (kind[1:] != kind[:-1]) | (kind[1:] == 0)])
    starts = np.flatnonzero(new_run)
    rt = np.add.reduceat(k_tar, starts).tolist()
    rn = np.add.reduceat(k_non, starts).tolist()
    ends = np.append(starts[1:], k_tar.size).tolist()

    st, sn, se = [], [], []
    for t, n, e in zip(rt, rn, ends):
        # previous block ratio >= current block ratio  ->  pool
        while st and st[-1] * n >= t * sn[-1]:
            t += st.pop()
            n += sn.pop()
            se.pop()
        st.append(t)
        sn.append(n)
        se.append(e)
    return np.array(st, dtype=np.int64), np.array(sn, dtype=np.int64), np.array(se, dtype=np.int64)


def pav_llrs(llrs):
    """Optimal monotone (PAV) LLRs for ``llrs`` at equal class priors.

    Returns ``(targets, nontargets)`` arrays in the input's element order.
    Blocks holding a single class map to +/- infinity, which is why this is
    not a TrialScores.
    """
    llrs.require_both()
    values, k_tar, k_non = _group_counts(llrs)
    bt, bn, be = _pav_blocks(k_tar, k_non)
    n_e, n_d = llrs.n_targets, llrs.n_nontargets
    with np.errstate(divide="ignore"):
        block_llr = (np.log(bt) - math.log(n_e)) - (np.log(bn) - math.log(n_d))
    group_llr = np.repeat(block_llr, np.diff(np.concatenate([[0], be])))
    idx_t = np.searchsorted(values, llrs.targets)
    idx_n = np.searchsorted(values, llrs.nontargets)
    return group_llr[idx_t], group_llr[idx_n]


def min_cllr_pav(llrs):
    """Minimum Cllr (bits) over all monotone transforms of the scores.

    Separable blocks get infinite LLRs and contribute exactly zero cost, so no
    posterior clipping is needed.
    """
    llrs.require_both()
    _, k_tar, k_non = _group_counts(llrs)
    bt, bn, _ = _pav_blocks(k_tar, k_non)
    n_e, n_d = llrs.n_targets, llrs.n_nontargets
    mixed = (bt > 0) & (bn > 0)
    bt, bn = bt[mixed], bn[mixed]
    block_llr = (np.log(bt) - math.log(n_e)) - (np.log(bn) - math.log(n_d))
    nats = 0.5 * (math.fsum(bt * _softplus(-block_llr)) / n_e
                  + math.fsum(bn * _softplus(block_llr)) / n_d)
    return nats / LN2


def rocch(llrs):
    """Vertices of the ROC convex hull as (p_miss, p_fa), p_miss ascending."""
    llrs.require_both()
    _, k_tar, k_non = _group_counts(llrs)
    bt, bn, _ = _pav_blocks(k_tar, k_non)
    p_miss = np.concatenate([[0], np.cumsum(bt)]) / llrs.n_targets
    p_fa = 1.0 - np.concatenate([[0], np.cumsum(bn)]) / llrs.n_nontargets
    return p_miss, p_fa


def eer_rocch(llrs):
    """Equal error rate where the ROC convex hull crosses p_miss == p_fa."""
    p_miss, p_fa = rocch(llrs)
    diff = p_fa - p_miss
    j = int(np.argmax(diff <= 0))  # diff is decreasing; last vertex has diff = -1
    if diff[j] == 0:
        return float(p_miss[j])
    t = diff[j - 1] / (diff[j - 1] - diff[j])
    return float(p_miss[j - 1] + t * (p_miss[j] - p_miss[j - 1]))


@dataclass(frozen=True)
class DetCurve:
    """Empirical operating points, one per distinct score threshold.

    A trial is accepted when its score is >= the threshold. The last point
    has threshold +inf (everything rejected). ``probit_miss`` and
    ``probit_fa`` are NaN where either error rate is 0 or 1.
    """

    threshold: np.ndarray
    p_miss: np.ndarray
    p_fa: np.ndarray

    @property
    def probit_fa(self):
        return self._probit()[0]

    @property
    def probit_miss(self):
        return self._probit()[1]

    def _probit(self):
        ok = (self.p_miss > 0) & (self.p_miss < 1) & (self.p_fa > 0) & (self.p_fa < 1)
        x = np.full(self.p_fa.shape, np.nan)
        y = np.full(self.p_miss.shape, np.nan)
        if np.any(ok):
            x[ok] = std_normal_quantile(self.p_fa[ok])
            y[ok] = std_normal_quantile(self.p_miss[ok])
        return x, y


def det_curve(llrs):
    llrs.require_both()
    tar = np.sort(llrs.targets)
    non = np.sort(llrs.nontargets)
    thresholds = np.append(np.unique(np.concatenate([tar, non])), np.inf)
    p_miss = np.searchsorted(tar, thresholds, side="left") / tar.size
    p_fa = (non.size - np.searchsorted(non, thresholds, side="left")) / non.size
    return DetCurve(thresholds, p_miss, p_fa)


def det_slope(curve, lo=0.001, hi=0.5):
    """Least-squares slope of probit(p_miss) against probit(p_fa) in [lo, hi]."""
    sel = ((curve.p_miss >= lo) & (curve.p_miss <= hi)
           & (curve.p_fa >= lo) & (curve.p_fa <= hi))
    sel &= (curve.p_miss > 0) & (curve.p_miss < 1) & (curve.p_fa > 0) & (curve.p_fa < 1)
    if np.count_nonzero(sel) < 2:
        raise InsufficientDataError(f"fewer than 2 DET points with both error rates in [{lo}, {hi}]")
    x = std_normal_quantile(curve.p_fa[sel])
    y = std_normal_quantile(curve.p_miss[sel])
    xc = x - x.mean()
    sxx = float(xc @ xc)
    if sxx == 0:
        raise InsufficientDataError("DET points in region share a single false-alarm rate")
    return float(xc @ (y - y.mean())) / sxx


@dataclass(frozen=True)
class CalibrationDiagnostics:
    """Sample checks of the expectation identities calibrated LLRs obey.

    For well-calibrated LLRs, E[exp(x)] over non-targets and E[exp(-x)] over
    targets are both 1, the mean target LLR is >= 0 and the mean non-target
    LLR is <= 0.
    """

    expect_r_nontarget: float
    expect_inv_r_target: float
    mean_target_llr: float
    mean_nontarget_llr: float
    r_nontarget_ok: bool
    inv_r_target_ok: bool
    target_sign_ok: bool
    nontarget_sign_ok: bool

    @property
    def passed(self):
        return (self.r_nontarget_ok and self.inv_r_target_ok
                and self.target_sign_ok and self.nontarget_sign_ok)


def calibration_diagnostics(llrs, tol=0.05):
    llrs.require_both()
    tar, non = llrs.targets, llrs.nontargets
    e_r = math.fsum(np.exp(non)) / non.size
    e_inv = math.fsum(np.exp(-tar)) / tar.size
    m_tar = math.fsum(tar) / tar.size
    m_non = math.fsum(non) / non.size
    return CalibrationDiagnostics(
        expect_r_nontarget=e_r,
        expect_inv_r_target=e_inv,
        mean_target_llr=m_tar,
        mean_nontarget_llr=m_non,
        r_nontarget_ok=abs(e_r - 1.0) <= tol,
        inv_r_target_ok=abs(e_inv - 1.0) <= tol,
        target_sign_ok=m_tar >= 0,
        nontarget_sign_ok=m_non <= 0,
    )


@dataclass(frozen=True)
class EvaluationReport:
    """All metrics for one set of LLRs. ``det_slope`` is NaN when too few
    DET points fall in the slope region (e.g. constant scores)."""

    cllr: float
    min_cllr: float
    eer: float
    det_slope: float
    mean_target_llr: float
    mean_nontarget_llr: float
    expect_r_nontarget: float
    expect_inv_r_target: float
    n_e: int
    n_d: int

    def as_dict(self):
        return asdict(self)


def evaluate(llrs, lo=0.001, hi=0.5):
    llrs.require_both()
    try:
        slope = det_slope(det_curve(llrs), lo, hi)
    except InsufficientDataError:
        slope = math.nan
    diag = calibration_diagnostics(llrs)
    return EvaluationReport(
        cllr=empirical_cllr(llrs),
        min_cllr=min_cllr_pav(llrs),
        eer=eer_rocch(llrs),
        det_slope=slope,
        mean_target_llr=diag.mean_target_llr,
        mean_nontarget_llr=diag.mean_nontarget_llr,
        expect_r_nontarget=diag.expect_r_nontarget,
        expect_inv_r_target=diag.expect_inv_r_target,
        n_e=llrs.n_targets,
        n_d=llrs.n_nontargets,
    )
