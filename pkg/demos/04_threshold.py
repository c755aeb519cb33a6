"""Where the third example stops closing, and a sharper bound."""
import numpy as np
from scipy import optimize

from harmsub import ExampleConfig, example3_chain, example3_threshold, run_example

# g(x) = 2(1-x)/(1+x) - (1+x) - x changes sign at (sqrt(33) - 5)/4
root = optimize.brentq(example3_chain, 0, 1, xtol=1e-15)
print("brentq root:", root, " closed form:", (np.sqrt(33) - 5) / 4)

thr = example3_threshold(1.0)
for factor in (0.5, 0.9, 0.999, 1.001, 1.1, 1.3):
    rep = run_example(ExampleConfig(3, 1.0, factor * thr, n_zeta=128, n_m=16))
    d = rep.details
    print(f"M2/M1 = {d['x']:.5f}: {rep.verdict:4s} g = {d['chain_g']:+.4f} scan {rep.scan.verdict}"
          f" sharp chain holds: {d['sharp_chain_holds']}")

# the chain uses (M1 - M2)/(M1 + M2) for Re(D2q/Dq); on the circle the exact value is 1,
# which gives the weaker requirement M1 - 3 M2 > M2, i.e. M2 < M1/4
rep = run_example(ExampleConfig(3, 1.0, 0.2, n_zeta=128, n_m=16))
print("curvature bound used:", rep.details["chain_curvature_bound"], " exact min:", rep.details["exact_curvature_min"])
