"""
CMLG versus logistic regression on synthetic trials
===================================================

Raw scores are made by sampling calibrated LLRs and pushing them through a
known affine map in reverse. Both calibration methods are trained on one
sample and scored by Cllr on an independent one, across a range of EERs.
"""

import llrcal

truth = llrcal.AffineCalibration(a=2.5, b=-1.0)

print(" EER    Cllr CMLG  Cllr logreg  min Cllr   CMLG a, b")
for i, eer in enumerate((0.03, 0.05, 0.10, 0.16, 0.26)):
    train = llrcal.simulate(llrcal.SynthSpec.from_eer(eer, 10_000, 10_000, seed=100 + i, decal=truth))
    test = llrcal.simulate(llrcal.SynthSpec.from_eer(eer, 100_000, 100_000, seed=200 + i, decal=truth))

    cmlg = llrcal.cmlg_fit(train, alpha=0.5)
    logreg = llrcal.logreg_fit(train, alpha=0.5)

    c1 = llrcal.empirical_cllr(llrcal.apply_calibration(cmlg, test))
    c2 = llrcal.empirical_cllr(llrcal.apply_calibration(logreg, test))
    cmin = llrcal.min_cllr_pav(test)
    print(f"{eer:5.2f}   {c1:9.4f}  {c2:11.4f}  {cmin:8.4f}   {cmlg.a:.3f}, {cmlg.b:.3f}")

# The CMLG fit also implies an LLR model; its EER should match the truth
stats = llrcal.score_stats(train)
implied = llrcal.implied_llr_model(cmlg, stats)
print("last condition: implied mu", round(implied.mu, 4), "EER", round(llrcal.eer_of_model(implied), 4))
