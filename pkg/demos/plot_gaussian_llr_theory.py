"""
Calibrated Gaussian log-likelihood-ratios
=========================================

If calibrated non-target LLRs are Gaussian, target LLRs are Gaussian too,
with the same variance and the mirrored mean, and sigma**2 = 2*mu. One
number, the equal error rate, then fixes the whole picture.
"""

import numpy as np

import llrcal

# From EER to the model parameters
for eer in (0.01, 0.03, 0.10, 0.16, 0.26, 0.5):
    m = llrcal.from_eer(eer)
    print(f"EER {eer:5.2f}  mu {m.mu:7.4f}  sigma {m.sigma:6.4f}  "
          f"d' {llrcal.dprime(m):6.4f}  Cllr {llrcal.theoretical_cllr(m):.4f} bits")

# The LLR of the LLR is the LLR: the density ratio at x is exp(x)
model = llrcal.CalibratedGaussianLlrModel(2.0)
x = np.linspace(-6, 6, 7)
print("x            ", x)
print("llr_of_llr(x)", llrcal.llr_of_llr(model, x))

# Expectation identities: E[r | non-target] = E[1/r | target] = 1
print("E[r|non], E[1/r|tar] =", llrcal.expectation_constraints(model))

# A non-target Gaussian that is not calibrated fails the mass test
print(llrcal.validate_gaussian_pair(llrcal.GaussianPair(mu_d=0.0, sigma_d=1.0)))
print(llrcal.validate_gaussian_pair(llrcal.GaussianPair(mu_d=-2.0, sigma_d=2.0)))

# Draw the two densities
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

xs = np.linspace(-10, 10, 801)
plt.plot(xs, llrcal.nontarget_pdf(model, xs), label="non-target")
plt.plot(xs, llrcal.target_pdf(model, xs), label="target")
plt.axvline(0, color="k", lw=0.5)
plt.xlabel("LLR (nats)")
plt.legend()
plt.savefig("gaussian_llr_densities.png", dpi=100)
print("wrote gaussian_llr_densities.png")
