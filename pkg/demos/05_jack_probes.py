"""First contact of p(D_r) with the boundary of q(D), analytic and harmonic."""
import numpy as np

from harmsub import BoundaryMapQ, HarmonicSeries, analytic_jack_probe, builtin_boundary_map, jack_probe

# analytic f with f(0) = 0: at the max of |f| on |z| = r0, z f'/f is real and >= 1
rng = np.random.default_rng(0)
for _ in range(5):
    a = np.concatenate([[0], rng.uniform(-1, 1, 6) + 1j * rng.uniform(-1, 1, 6)]) * 0.5
    res = analytic_jack_probe(HarmonicSeries(a, np.zeros_like(a)), 0.9)
    print(f"m = {res.m:.4f}  curvature = {res.curvature:.4f}")

# both maps analytic: m at the contact point is at least 1
q = BoundaryMapQ(HarmonicSeries([1, 0.5, 0.2], [0, 0, 0]))
w = jack_probe(HarmonicSeries([1, 1.0], [0, 0]), q)
print("analytic pair: r0 =", round(w.r0, 6), "m =", round(w.m, 6), "lemma holds:", w.satisfies_lemma())

# harmonic q: the disk 1 + 1.6 z first leaves the ellipse at the ends of the minor axis,
# where Dp/Dq = 0.4i / 1.2i = 1/3.  q^{-1} o p is not analytic, so nothing forces m >= 1.
w = jack_probe(HarmonicSeries([1, 1.6], [0, 0]), builtin_boundary_map("ellipse:0.8,0.4"))
print("harmonic pair: r0 =", round(w.r0, 6), "zeta0 =", np.round(w.zeta0, 6), "m =", round(w.m, 6),
      "gap =", round(w.curvature_gap, 6), "lemma holds:", w.satisfies_lemma())
