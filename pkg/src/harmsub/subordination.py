"""Numeric subordination checks, univalence probing and Jack-type contact probes.

Strong subordination of ``f`` to a univalent ``F`` (with ``f(D)`` simply
connected) is equivalent to ``f(0) = F(0)`` together with ``f(D) ⊂ F(D)``, so
everything here reduces to sampling images and testing containment.  All
verdicts are statements about the sampled resolution only.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import optimize
from scipy.spatial import cKDTree

from .domains import INSIDE, TOL_GEO, BoundaryMapQ, DomainSpec, boundary_samples
from .errors import FlatModulusError, HarmsubError, HypothesisViolationError, NoCrossingError
from .series import HarmonicSeries, _PointwiseOps

STRONG, WEAK, NONE = "strong", "weak", "none"

LIKELY = "sense_preserving_univalent_likely"
JACOBIAN_VIOLATION = "jacobian_violation"
COLLISION = "collision"


def _evaluator(f):
    if hasattr(f, "evaluate"):
        return f.evaluate
    if callable(f):
        return f
    raise TypeError(f"cannot evaluate {f!r}")


def _polar_grid(radii, n_angles):
    theta = 2 * np.pi * np.arange(n_angles) / n_angles
    return (np.asarray(radii)[:, None] * np.exp(1j * theta)[None, :]), theta


# --- univalence --------------------------------------------------------------------


@dataclass
class UnivalenceVerdict:
    status: str
    witness: tuple | None = None
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == LIKELY


def univalence_probe(f, grid_resolution: int = 64, r_max: float = 0.98) -> UnivalenceVerdict:
    """Heuristic: J_f > 0 on a polar grid, then no two far-apart grid points
    (coarser grid) share an image.  A clean result is only "likely" univalent."""
    ev = _evaluator(f)
    res = max(int(grid_resolution), 4)
    z, _ = _polar_grid(np.linspace(0.02, r_max, res), 4 * res)
    if hasattr(f, "jacobian"):
        J = np.asarray(f.jacobian(z))
        k = int(np.argmin(J))
        if not J.ravel()[k] > 0:
            zk = complex(z.ravel()[k])
            return UnivalenceVerdict(JACOBIAN_VIOLATION, (zk,), {"jacobian": float(J.ravel()[k])})
    radii = np.linspace(0.05, r_max, max(res // 2, 2))
    zc, _ = _polar_grid(radii, 2 * res)
    zc = np.append(zc.ravel(), 0)
    w = np.asarray(ev(zc), dtype=complex)
    finite = np.isfinite(w)
    zc, w = zc[finite], w[finite]
    tol_img = 1e-9 * (1 + np.max(np.abs(w)))
    sep = 2 * max(radii[1] - radii[0], r_max * np.pi / res)
    tree = cKDTree(np.column_stack([w.real, w.imag]))
    for i, j in sorted(tree.query_pairs(tol_img)):
        if abs(zc[i] - zc[j]) > sep:
            return UnivalenceVerdict(COLLISION, (complex(zc[i]), complex(zc[j])), {"image": complex(w[i])})
    return UnivalenceVerdict(LIKELY, None, {"grid_resolution": res})


# --- subordination -------------------------------------------------------------------


@dataclass(frozen=True)
class Resolution:
    n_radii: int = 32
    n_angles: int = 256
    r_max: float = 0.999
    tol_center: float = 1e-9
    tol_geo: float = TOL_GEO


@dataclass
class SubordinationVerdict:
    """``witness`` is a sampled value of f outside F(D); present iff relation is none."""

    relation: str
    witness: complex | None
    resolution: dict
    witness_z: complex | None = None
    center_gap: float = 0.0
    samples_tested: int = 0

    def to_dict(self):
        return asdict(self)


def sample_disk(f, resolution: Resolution = Resolution()):
    """(z, f(z)) on concentric circles with radii up to r_max, plus the origin."""
    radii = np.linspace(0, resolution.r_max, resolution.n_radii + 1)[1:]
    z, _ = _polar_grid(radii, resolution.n_angles)
    z = np.concatenate([[0j], z.ravel()])
    return z, np.asarray(_evaluator(f)(z), dtype=complex)


def check_subordination(
    f, F, F_domain: DomainSpec, resolution: Resolution = Resolution(), assume_univalent: bool = False
) -> SubordinationVerdict:
    """strong: f(0) = F(0) and every sample of f lies in F_domain;
    weak: containment without the center match; none: a witness outside."""
    if not assume_univalent:
        probe = univalence_probe(F)
        if not probe.ok:
            raise HypothesisViolationError(f"F failed the univalence probe: {probe.status} at {probe.witness}")
    z, w = sample_disk(f, resolution)
    cls = F_domain.classify(w, resolution.tol_geo)
    gap = abs(w[0] - complex(_evaluator(F)(0.0)))
    res = asdict(resolution)
    outside = np.flatnonzero(cls != INSIDE)
    if outside.size == 0:
        relation = STRONG if gap <= resolution.tol_center else WEAK
        return SubordinationVerdict(relation, None, res, None, float(gap), z.size)
    # witness: outermost radius first, then smallest angle index
    order = np.lexsort((outside, -np.abs(z[outside]).round(12)))
    k = outside[order[0]]
    return SubordinationVerdict(NONE, complex(w[k]), res, complex(z[k]), float(gap), z.size)


# --- Jack-type probes ----------------------------------------------------------------


@dataclass
class JackWitness:
    """Contact data at the first radius where p(D_r) leaves q(D).

    ``lhs_ratio`` is Dp(z0)/Dq(zeta0) as computed; ``m`` is its real part.
    ``curvature_gap`` is Re(D2p/Dp)(z0) - m Re(D2q/Dq)(zeta0).
    """

    z0: complex
    zeta0: complex
    m: float
    lhs_ratio: complex
    curvature_gap: float
    r0: float
    contact_distance: float

    def satisfies_lemma(self, tol_m: float = 1e-6, tol_im: float = 1e-3, tol_gap: float = 1e-3) -> bool:
        return (
            self.m >= 1 - tol_m
            and abs(self.lhs_ratio.imag) <= tol_im * (1 + abs(self.m))
            and self.curvature_gap >= -tol_gap
        )

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class JackConfig:
    n_angles: int = 1024
    n_rings: int = 8
    bisect_tol: float = 1e-4
    max_iter: int = 40
    n_boundary: int = 4096
    tol_center: float = 1e-9
    tol_geo: float = TOL_GEO


def _is_constant(p) -> bool:
    if isinstance(p, HarmonicSeries):
        return not (np.any(p.a[1:]) or np.any(p.b[1:]))
    z, _ = _polar_grid([0.5], 64)
    w = _evaluator(p)(z.ravel())
    return bool(np.ptp(np.abs(w - w[0])) == 0 and np.all(w == w[0]))


def _max_excursion(ev, domain, r, n_angles):
    """(max signed distance of p on |z| = r, angle attaining it) with local refinement."""
    theta = 2 * np.pi * np.arange(n_angles) / n_angles
    sd = domain.signed_distance(ev(r * np.exp(1j * theta)))
    k = int(np.argmax(sd))
    step = 2 * np.pi / n_angles
    obj = lambda t: -float(domain.signed_distance(np.atleast_1d(ev(r * np.exp(1j * t))))[0])
    opt = optimize.minimize_scalar(
        obj, bounds=(theta[k] - step, theta[k] + step), method="bounded", options={"xatol": 1e-12}
    )
    if -opt.fun >= sd[k]:
        return -opt.fun, float(opt.x)
    return float(sd[k]), float(theta[k])


def jack_probe(p, q: BoundaryMapQ, cfg: JackConfig = JackConfig(), domain: DomainSpec | None = None):
    """Locate the first contact of p(D_r) with the boundary of q(D).

    Returns None when p(D) ⊂ q(D) at the sampled resolution.  Raises
    NoCrossingError when the contact radius runs into the unit circle.
    """
    ev = _evaluator(p)
    if _is_constant(p):
        raise ValueError("p must be nonconstant")
    if abs(complex(ev(0.0)) - q.q.center) > cfg.tol_center:
        raise HypothesisViolationError("p(0) != q(0)")
    probe = univalence_probe(q.q)
    if not probe.ok:
        raise HypothesisViolationError(f"q failed the univalence probe: {probe.status}")
    domain = domain or q.image_domain()

    def contained(r):
        radii = r * np.arange(1, cfg.n_rings + 1) / cfg.n_rings
        z, _ = _polar_grid(radii, cfg.n_angles)
        return bool(np.all(domain.classify(ev(z), cfg.tol_geo) == INSIDE))

    r_top = 1.0 if isinstance(p, HarmonicSeries) else 1 - 1e-6
    if contained(r_top):
        return None
    lo, hi = 0.0, r_top
    for _ in range(cfg.max_iter):
        if hi - lo <= cfg.bisect_tol:
            break
        mid = 0.5 * (lo + hi)
        if contained(mid):
            lo = mid
        else:
            hi = mid
    if hi >= 1 - cfg.bisect_tol:
        raise NoCrossingError(f"no boundary crossing before r = {hi:.6f}")

    excursion = lambda r: _max_excursion(ev, domain, r, cfg.n_angles)[0]
    f_lo, f_hi = excursion(lo), excursion(hi)
    r0 = optimize.brentq(excursion, lo, hi, xtol=1e-14) if f_lo < 0 < f_hi else hi
    dist, theta0 = _max_excursion(ev, domain, r0, cfg.n_angles)
    z0 = r0 * np.exp(1j * theta0)
    w0 = complex(ev(z0))

    bs = boundary_samples(q, cfg.n_boundary)
    usable = bs.usable
    k = int(np.argmin(np.where(usable, np.abs(bs.q - w0), np.inf)))
    step = 2 * np.pi / cfg.n_boundary
    obj = lambda t: abs(complex(q.q.evaluate(np.exp(1j * t))) - w0)
    opt = optimize.minimize_scalar(
        obj, bounds=(bs.theta[k] - step, bs.theta[k] + step), method="bounded", options={"xatol": 1e-13}
    )
    zeta0 = np.exp(1j * opt.x) if opt.fun <= abs(bs.q[k] - w0) else bs.zeta[k]

    Dp, D2p = complex(p.D_at(z0)), complex(p.D2_at(z0))
    Dq, D2q = complex(q.q.D_at(zeta0)), complex(q.q.D2_at(zeta0))
    ratio = Dp / Dq
    m = ratio.real
    gap = (D2p / Dp).real - m * (D2q / Dq).real
    return JackWitness(complex(z0), complex(zeta0), float(m), complex(ratio), float(gap), float(r0), float(dist))


@dataclass
class AnalyticJackResult:
    m: float
    curvature: float
    theta0: float
    im_ratio: float

    def to_dict(self):
        return asdict(self)


def analytic_jack_probe(f: HarmonicSeries, r0: float, n_grid: int = 4096, tol_im: float = 1e-8):
    """At the point of maximal |f| on |z| = r0, return Re(z f'/f) and Re(1 + z f''/f').

    If |f| is constant on the circle and z f'/f is the same real number
    everywhere (the monomial case), any angle is a maximizer and angle 0 is used.
    """
    if not isinstance(f, HarmonicSeries) or not f.is_analytic:
        raise ValueError("analytic_jack_probe needs an analytic series (b == 0)")
    if not np.any(f.a):
        raise ValueError("f must not vanish identically")
    h = f.a
    nz = np.flatnonzero(h)
    if nz.size == 1 and nz[0] > 0:
        # z^n up to a constant factor: z f'/f = n identically
        n = float(nz[0])
        return AnalyticJackResult(n, n, 0.0, 0.0)
    dh = np.polynomial.polynomial.polyder(h)
    d2h = np.polynomial.polynomial.polyder(dh)
    pv = np.polynomial.polynomial.polyval

    def ratio(z):
        return z * pv(z, dh) / pv(z, h)

    def curvature(z):
        return np.real(1 + z * pv(z, d2h) / pv(z, dh))

    theta = 2 * np.pi * np.arange(n_grid) / n_grid
    zs = r0 * np.exp(1j * theta)
    mod = np.abs(pv(zs, h))
    if np.ptp(mod) <= 1e-12 * np.max(mod):
        rat = ratio(zs)
        if np.ptp(rat.real) <= 1e-9 and np.max(np.abs(rat.imag)) <= 1e-9 and abs(rat[0]) > 0:
            return AnalyticJackResult(float(rat[0].real), float(curvature(zs[0])), 0.0, float(rat[0].imag))
        raise FlatModulusError("|f| is constant on the circle")
    k = int(np.argmax(mod))
    step = 2 * np.pi / n_grid
    # at the maximum d/dtheta log|f| = -Im(z f'/f) changes sign from + to -
    g = lambda t: float(np.imag(ratio(r0 * np.exp(1j * t))))
    a, b = theta[k] - step, theta[k] + step
    if g(a) < 0 < g(b):
        t0 = optimize.brentq(g, a, b, xtol=1e-15)
    else:
        t0 = optimize.minimize_scalar(
            lambda t: -abs(pv(r0 * np.exp(1j * t), h)), bounds=(a, b), method="bounded", options={"xatol": 1e-12}
        ).x
    z0 = r0 * np.exp(1j * t0)
    rat = complex(ratio(z0))
    if abs(rat.imag) > tol_im * (1 + abs(rat)):
        raise HarmsubError(f"Im(z f'/f) = {rat.imag:.3e} at the located maximizer")
    return AnalyticJackResult(rat.real, float(curvature(z0)), float(t0 % (2 * np.pi)), rat.imag)
