"""Scanning psi(r, s, t; z) over the admissibility cone, plus the rho limit."""
import numpy as np

from harmsub import AdmissibilityScanConfig, AffinePsi, Disk, builtin_boundary_map, rho_limit_scan, scan_admissibility

q = builtin_boundary_map("ellipse:0.8,0.4")
psi = AffinePsi(1, 1)  # r + s

cfg = AdmissibilityScanConfig(reference_point=1.0)
rep = scan_admissibility(psi, q, q.domain, cfg)
print(rep.verdict, rep.samples_tested, "samples, distance margin", round(rep.margin, 6))
per_m = rep.details["per_m_min_reference_distance"]
print("min |psi-1| for the first m values:", np.round(per_m[:4], 4), "...")

# a disk that just touches the m = 1 values is hit on its boundary only
rep = scan_admissibility(psi, q, Disk(1, 1.6), cfg)
print("Disk(1, 1.6):", rep.verdict, rep.details["boundary_contacts"], "boundary contacts,",
      rep.details["strict_violations"], "strict")

# dilated boundary maps q(rho z): margins grow with rho
rho = rho_limit_scan(psi, q, q.domain, [0.9, 0.99, 0.999], cfg)
print("rho margins:", np.round(rho.margins, 5), rho.trend)
