"""
DET curves, the DET slope and min-Cllr
======================================

Equal-variance Gaussian scores give a straight DET line of slope -1 on
probit axes. Doubling the non-target spread doubles the slope. PAV finds the
best monotone recalibration, so min-Cllr isolates discrimination from
calibration.
"""

import numpy as np

import llrcal
from llrcal.synth import standard_normals

n = 100_000
equal = llrcal.sample_calibrated(llrcal.SynthSpec(llrcal.CalibratedGaussianLlrModel(2.0), n, n, seed=1))
z = standard_normals(2, 2 * n)
unequal = llrcal.TrialScores(2.0 + z[:n], -2.0 + 2.0 * z[n:])

for name, scores in (("equal variance", equal), ("sigma_d = 2 sigma_e", unequal)):
    curve = llrcal.det_curve(scores)
    print(f"{name:22s} DET slope {llrcal.det_slope(curve):+.3f}  EER {llrcal.eer_rocch(scores):.4f}")

# A badly scaled but well-discriminating system: Cllr suffers, min-Cllr does not
overconfident = equal.map(lambda x: 4.0 * x + 3.0)
for name, scores in (("calibrated", equal), ("scaled x4, shifted +3", overconfident)):
    report = llrcal.evaluate(scores)
    print(f"{name:22s} Cllr {report.cllr:.4f}  min Cllr {report.min_cllr:.4f}  "
          f"E[r|non] {report.expect_r_nontarget:.3g}")

print(llrcal.calibration_diagnostics(overconfident))

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

for name, scores in (("equal variance", equal), ("unequal variance", unequal)):
    c = llrcal.det_curve(scores)
    plt.plot(c.probit_fa, c.probit_miss, label=name)
ticks = np.array([0.001, 0.01, 0.05, 0.2, 0.5])
plt.xticks(llrcal.std_normal_quantile(ticks), [f"{100 * t:g}" for t in ticks])
plt.yticks(llrcal.std_normal_quantile(ticks), [f"{100 * t:g}" for t in ticks])
plt.xlabel("false alarm (%)")
plt.ylabel("miss (%)")
plt.legend()
plt.savefig("det_curves.png", dpi=100)
print("wrote det_curves.png")
