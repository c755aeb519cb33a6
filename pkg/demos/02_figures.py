"""CSV data for the two image-of-disk pictures (ellipse and half-plane)."""
import sys
import tempfile
from pathlib import Path

import numpy as np

from harmsub import builtin_boundary_map, image_of_disk
from harmsub.cli import main

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(tempfile.mkdtemp())
out.mkdir(parents=True, exist_ok=True)

# the CLI writes theta,re,im for the boundary and r,theta,re,im for the interior rings
main(["map", "ellipse:0.8,0.4", "--n-boundary", "512", "--output", str(out / "ellipse_boundary.csv"),
      "--interior-output", str(out / "ellipse_interior.csv")])
main(["map", "halfplane", "--n-boundary", "2048", "--n-interior", "16",
      "--output", str(out / "halfplane_boundary.csv"), "--interior-output", str(out / "halfplane_interior.csv")])
print("wrote", sorted(p.name for p in out.glob("*.csv")), "to", out)

# the ellipse has semi-axes M1 + M2 and M1 - M2 about 1
b = np.loadtxt(out / "ellipse_boundary.csv", delimiter=",", skiprows=1)
print("Re range", b[:, 1].min(), b[:, 1].max(), " Im range", b[:, 2].min(), b[:, 2].max())

# the half-plane image creeps toward Re w = -1/2 as r -> 1
img = image_of_disk(builtin_boundary_map("halfplane"), n_boundary=2048, n_rings=16, r_max=0.99)
for r in (0.5, 0.9, 0.99):
    sel = np.isclose(img.interior_r, r, atol=0.03)
    if sel.any():
        print(f"r ~ {r}: min Re = {img.interior.real[sel].min():.4f}")

# J_q is constant for the ellipse map
q = builtin_boundary_map("ellipse:0.8,0.4").q
print("J_q at a few points:", q.jacobian(np.array([0, 0.5j, -0.9])))
