"""The two operators on coefficients, checked against finite differences."""
import numpy as np

from harmsub import HarmonicSeries, apply_D, apply_Dfrak, apply_Dn, ellipse_map
from harmsub.numeric_diff import default_samples, fd_D, fd_Dfrak, richardson_ratio

# f = h + conj(g) is stored as two coefficient arrays
q = ellipse_map(0.8, 0.4)
print("q:", q.a, q.b)

# D multiplies a_n by n and b_n by -n; Dfrak keeps the sign
print("Dq:", apply_D(q).a, apply_D(q).b)
print("Dfrak q:", apply_Dfrak(q).a, apply_Dfrak(q).b)

# D = -i d/dtheta and Dfrak = r d/dr, so central differences give an oracle
z = default_samples()
print("max |fd_D - Dq|     =", np.max(np.abs(fd_D(q, z) - apply_D(q).evaluate(z))))
print("max |fd_Dfrak - Dfrak q| =", np.max(np.abs(fd_Dfrak(q, z) - apply_Dfrak(q).evaluate(z))))

# halving the step cuts the error by about 4
f = HarmonicSeries([0, 1, 0.5, 0.25j, -0.1], [0, 0, 0.3, 0, 0.2])
print("Richardson ratio D:", round(richardson_ratio(f, z, operator="D"), 3))
print("Richardson ratio Dfrak:", round(richardson_ratio(f, z, operator="Dfrak"), 3))

# second order: D2 = Dfrak(D f)
print("D2 f coefficients:", apply_Dn(f, 2).a, apply_Dn(f, 2).b)

# Re[Df conj(Dfrak f)] = |z|^2 J_f
lhs = np.real(f.D_at(z) * np.conj(f.Dfrak_at(z)))
print("Jacobian identity residual:", np.max(np.abs(lhs - np.abs(z) ** 2 * f.jacobian(z))))
