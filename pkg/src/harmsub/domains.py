"""Planar target regions, boundary sampling of q on the unit circle, disk images."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import shapely
from scipy.spatial import cKDTree

from .errors import DegenerateBoundaryError
from .series import EPS_DIV, HarmonicSeries, ellipse_map, halfplane_map

TOL_GEO = 1e-9
INSIDE, UNCERTAIN, OUTSIDE = 1, 0, -1

_CHUNK = 1 << 21


class DomainSpec:
    """Open planar region.  Signed distances are negative inside."""

    kind = "domain"

    def contains(self, w):
        raise NotImplementedError

    def signed_distance(self, w):
        raise NotImplementedError

    def distance_bounds(self, w):
        """Cheap (lower, upper) bounds on the signed distance."""
        d = self.signed_distance(w)
        return d, d

    def classify(self, w, tol: float = TOL_GEO):
        """INSIDE / OUTSIDE when farther than ``tol`` from the boundary, else UNCERTAIN."""
        w = np.asarray(w, dtype=complex)
        lo, hi = self.distance_bounds(w)
        out = np.full(w.shape, UNCERTAIN, dtype=np.int8)
        out[hi < -tol] = INSIDE
        out[lo > tol] = OUTSIDE
        pending = out == UNCERTAIN
        if np.any(pending):
            d = self.signed_distance(w[pending])
            sub = np.full(d.shape, UNCERTAIN, dtype=np.int8)
            sub[d < -tol] = INSIDE
            sub[d > tol] = OUTSIDE
            out[pending] = sub
        return out

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class HalfPlane(DomainSpec):
    """Re w > c."""

    c: float
    kind = "half_plane"

    def contains(self, w):
        return np.real(w) > self.c

    def signed_distance(self, w):
        return self.c - np.real(w)

    def to_dict(self):
        return {"kind": self.kind, "c": self.c}


@dataclass(frozen=True)
class Disk(DomainSpec):
    center: complex
    radius: float
    kind = "disk"

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("disk radius must be positive")

    def contains(self, w):
        return np.abs(np.asarray(w) - self.center) < self.radius

    def signed_distance(self, w):
        return np.abs(np.asarray(w) - self.center) - self.radius

    def to_dict(self):
        return {"kind": self.kind, "center": [self.center.real, self.center.imag], "radius": self.radius}


def _ellipse_distance(y0, y1, a, b):
    """Unsigned distance from first-quadrant points (y0, y1) to the ellipse with semi-axes a >= b.

    Root of F(t) = (a y0/(t+a^2))^2 + (b y1/(t+b^2))^2 - 1 by bisection
    (Eberly's parametrization); F is monotone on the bracketing interval for
    points inside and outside alike.
    """
    y0 = np.asarray(y0, dtype=float)
    y1 = np.asarray(y1, dtype=float)
    if a == b:
        return np.abs(np.hypot(y0, y1) - a)
    # snap near-axis points onto the axis: bisection cannot resolve t + b^2 ~ b y1
    # below rounding, and distance is 1-Lipschitz so the snap costs at most 1e-12 b
    snap = 1e-12 * b
    y0 = np.where(y0 <= snap, 0.0, y0)
    y1 = np.where(y1 <= snap, 0.0, y1)
    d = np.empty(y0.shape)
    gen = (y0 > 0) & (y1 > 0)
    on_x = (y1 == 0) & ~gen
    on_y = (y0 == 0) & (y1 > 0)

    if np.any(gen):
        u, v = y0[gen], y1[gen]
        lo = -b * b + b * v
        hi = -b * b + np.sqrt(a * a * u * u + b * b * v * v)
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            F = (a * u / (mid + a * a)) ** 2 + (b * v / (mid + b * b)) ** 2 - 1
            pos = F > 0
            lo = np.where(pos, mid, lo)
            hi = np.where(pos, hi, mid)
            if np.all(hi - lo <= 4 * np.finfo(float).eps * np.maximum(1.0, np.abs(hi))):
                break
        t = 0.5 * (lo + hi)
        x0 = a * a * u / (t + a * a)
        x1 = b * b * v / (t + b * b)
        d[gen] = np.hypot(x0 - u, x1 - v)
    if np.any(on_x):
        u = y0[on_x]
        res = np.abs(u - a)
        inner = u < (a * a - b * b) / a
        x0 = a * a * u[inner] / (a * a - b * b)
        x1 = b * np.sqrt(np.clip(1 - (x0 / a) ** 2, 0, None))
        res[inner] = np.hypot(x0 - u[inner], x1)
        d[on_x] = res
    if np.any(on_y):
        d[on_y] = np.abs(y1[on_y] - b)
    return d


@dataclass(frozen=True)
class Ellipse(DomainSpec):
    """Axis-aligned ellipse; ``semi_major`` lies along the real axis."""

    center: complex
    semi_major: float
    semi_minor: float
    kind = "ellipse"

    def __post_init__(self):
        if not self.semi_major >= self.semi_minor > 0:
            raise ValueError("need semi_major >= semi_minor > 0")

    def _gauge(self, w):
        u = np.asarray(w, dtype=complex) - self.center
        return np.hypot(u.real / self.semi_major, u.imag / self.semi_minor)

    def contains(self, w):
        return self._gauge(w) < 1

    def distance_bounds(self, w):
        # between the scaled copy through w and the ellipse itself
        g = self._gauge(w) - 1
        a, b = self.semi_major, self.semi_minor
        return np.where(g >= 0, g * b, g * a), np.where(g >= 0, g * a, g * b)

    def signed_distance(self, w):
        u = np.asarray(w, dtype=complex) - self.center
        d = _ellipse_distance(np.abs(u.real), np.abs(u.imag), self.semi_major, self.semi_minor)
        return np.where(self._gauge(w) < 1, -d, d)

    def to_dict(self):
        return {
            "kind": self.kind,
            "center": [self.center.real, self.center.imag],
            "semi_major": self.semi_major,
            "semi_minor": self.semi_minor,
        }


def winding_number(points, vertices):
    """Winding number of the closed polygon ``vertices`` around each point."""
    p = np.asarray(points, dtype=complex).ravel()
    v = np.asarray(vertices, dtype=complex)
    v0, v1 = v, np.roll(v, -1)
    x0, y0, x1, y1 = v0.real, v0.imag, v1.real, v1.imag
    wn = np.zeros(p.size, dtype=np.int64)
    step = max(1, _CHUNK // max(v.size, 1))
    for s in range(0, p.size, step):
        px = p.real[s : s + step, None]
        py = p.imag[s : s + step, None]
        left = (x1 - x0) * (py - y0) - (px - x0) * (y1 - y0)
        up = (y0 <= py) & (y1 > py) & (left > 0)
        down = (y0 > py) & (y1 <= py) & (left < 0)
        wn[s : s + step] = up.sum(axis=1) - down.sum(axis=1)
    return wn.reshape(np.shape(points))


def polyline_distance(points, vertices):
    p = np.asarray(points, dtype=complex).ravel()
    v = np.asarray(vertices, dtype=complex)
    v0, e = v, np.roll(v, -1) - v
    ee = np.maximum(np.abs(e) ** 2, np.finfo(float).tiny)
    out = np.empty(p.size)
    step = max(1, _CHUNK // max(v.size, 1))
    for s in range(0, p.size, step):
        d = p[s : s + step, None] - v0
        t = np.clip((d.real * e.real + d.imag * e.imag) / ee, 0, 1)
        out[s : s + step] = np.min(np.abs(d - t * e), axis=1)
    return out.reshape(np.shape(points))


def _segments_cross(v):
    """True when two non-adjacent edges of the closed polygon properly intersect."""
    n = v.size
    a, b = v, np.roll(v, -1)

    def orient(p, q, r):
        return np.sign((q.real - p.real) * (r.imag - p.imag) - (q.imag - p.imag) * (r.real - p.real))

    idx = np.arange(n)
    step = max(1, _CHUNK // n)
    for s in range(0, n, step):
        i = idx[s : s + step, None]
        j = idx[None, :]
        mask = (j > i + 1) & ~((i == 0) & (j == n - 1))
        A, B = a[s : s + step, None], b[s : s + step, None]
        C, D = a[None, :], b[None, :]
        o1, o2 = orient(A, B, C), orient(A, B, D)
        o3, o4 = orient(C, D, A), orient(C, D, B)
        hit = (o1 * o2 < 0) & (o3 * o4 < 0) & mask
        if np.any(hit):
            return True
    return False


@dataclass(frozen=True, eq=False)
class JordanImage(DomainSpec):
    """Interior of a closed simple polygon; membership by nonzero winding number."""

    boundary_polyline: np.ndarray
    validate: bool = True
    kind = "jordan_image"

    def __post_init__(self):
        v = np.asarray(self.boundary_polyline, dtype=complex).ravel()
        if v.size > 1 and v[0] == v[-1]:
            v = v[:-1]
        if v.size < 16:
            raise ValueError(f"jordan polyline needs >= 16 vertices, got {v.size}")
        if not np.all(np.isfinite(v)):
            raise ValueError("jordan polyline has non-finite vertices")
        if self.validate and _segments_cross(v):
            raise ValueError("jordan polyline self-intersects")
        v.flags.writeable = False
        object.__setattr__(self, "boundary_polyline", v)
        poly = shapely.Polygon(np.column_stack([v.real, v.imag]))
        ring = poly.exterior
        shapely.prepare(poly)
        shapely.prepare(ring)
        object.__setattr__(self, "_poly", poly)
        object.__setattr__(self, "_ring", ring)
        object.__setattr__(self, "_tree", cKDTree(np.column_stack([v.real, v.imag])))
        object.__setattr__(self, "_half_edge", 0.5 * float(np.max(np.abs(np.roll(v, -1) - v))))

    def contains(self, w):
        w = np.asarray(w, dtype=complex)
        return shapely.contains_xy(self._poly, w.real, w.imag)

    def distance_bounds(self, w):
        # nearest vertex distance d_v brackets the polyline distance in [d_v - L/2, d_v]
        w = np.asarray(w, dtype=complex)
        dv, _ = self._tree.query(np.column_stack([w.real.ravel(), w.imag.ravel()]))
        dv = dv.reshape(w.shape)
        lo = np.maximum(dv - self._half_edge, 0.0)
        inside = self.contains(w)
        return np.where(inside, -dv, lo), np.where(inside, -lo, dv)

    def signed_distance(self, w):
        w = np.asarray(w, dtype=complex)
        d = shapely.distance(self._ring, shapely.points(w.real, w.imag))
        return np.where(self.contains(w), -d, d)

    def to_dict(self):
        v = self.boundary_polyline
        return {"kind": self.kind, "boundary_polyline": [[x.real, x.imag] for x in v]}


def domain_from_dict(doc) -> DomainSpec:
    kind = doc.get("kind")
    c = lambda pair: complex(pair[0], pair[1])
    if kind == "half_plane":
        return HalfPlane(float(doc["c"]))
    if kind == "disk":
        return Disk(c(doc["center"]), float(doc["radius"]))
    if kind == "ellipse":
        return Ellipse(c(doc["center"]), float(doc["semi_major"]), float(doc["semi_minor"]))
    if kind == "jordan_image":
        return JordanImage(np.array([c(p) for p in doc["boundary_polyline"]]))
    raise ValueError(f"unknown domain kind {kind!r}")


# --- q on the boundary ------------------------------------------------------------


def _circular_gap(theta, centers):
    theta = np.asarray(theta)[:, None]
    d = np.abs((theta - np.asarray(centers)[None, :] + np.pi) % (2 * np.pi) - np.pi)
    return d.min(axis=1)


@dataclass(frozen=True, eq=False)
class BoundaryMapQ:
    """A map q of the closed disk with declared exception set E(q) (as angles).

    ``domain`` optionally describes q(D) in closed form; without it, checks
    that need q(D) build a :class:`JordanImage` from sampled boundary values.
    """

    q: object
    exception_angles: tuple | None = None
    exclusion_radius: float = 1e-3
    domain: DomainSpec | None = None
    eps_div: float = EPS_DIV

    def __post_init__(self):
        if self.exception_angles is None:
            object.__setattr__(self, "exception_angles", tuple(getattr(self.q, "exception_angles", ())))
        object.__setattr__(self, "exception_angles", tuple(float(t) % (2 * np.pi) for t in self.exception_angles))

    def dilate(self, rho: float, domain: DomainSpec | None = None) -> BoundaryMapQ:
        """q_rho(z) = q(rho z); for rho < 1 the exception set is empty."""
        return BoundaryMapQ(self.q.dilate(rho), (), self.exclusion_radius, domain, self.eps_div)

    def check_exception_set(self, threshold: float = 1e3, delta: float = 1e-6) -> dict:
        """|q| must exceed ``threshold`` when approaching each declared exception point radially."""
        out = {}
        for t in self.exception_angles:
            val = abs(complex(self.q.evaluate((1 - delta) * np.exp(1j * t))))
            out[t] = bool(val > threshold)
        return out

    def image_domain(self, n: int = 2048) -> DomainSpec:
        if self.domain is not None:
            return self.domain
        return jordan_domain(self, n)


@dataclass(frozen=True)
class BoundarySamples:
    theta: np.ndarray
    zeta: np.ndarray
    q: np.ndarray
    Dq: np.ndarray
    D2q: np.ndarray
    flagged: np.ndarray
    n_requested: int
    n_excluded: int

    def __len__(self):
        return self.theta.size

    @property
    def usable(self):
        return ~self.flagged


MIN_BOUNDARY_SAMPLES = 8


def boundary_samples(bq: BoundaryMapQ, n: int) -> BoundarySamples:
    """n uniform angles on [0, 2pi) minus exclusion arcs around E(q), with q, Dq, D2q."""
    if n < MIN_BOUNDARY_SAMPLES:
        raise ValueError(f"need at least {MIN_BOUNDARY_SAMPLES} boundary samples, got {n}")
    theta = 2 * np.pi * np.arange(n) / n
    if bq.exception_angles:
        keep = _circular_gap(theta, bq.exception_angles) > bq.exclusion_radius
    else:
        keep = np.ones(n, dtype=bool)
    theta = theta[keep]
    zeta = np.exp(1j * theta)
    with np.errstate(all="ignore"):
        qv = np.asarray(bq.q.evaluate(zeta), dtype=complex)
        Dq = np.asarray(bq.q.D_at(zeta), dtype=complex)
        D2q = np.asarray(bq.q.D2_at(zeta), dtype=complex)
    finite = np.isfinite(qv) & np.isfinite(Dq) & np.isfinite(D2q)
    flagged = ~finite | (np.abs(Dq) <= bq.eps_div)
    n_excluded = n - theta.size
    if n_excluded + flagged.sum() > n / 2:
        raise DegenerateBoundaryError(
            f"{n_excluded} of {n} boundary samples excluded and {int(flagged.sum())} flagged"
        )
    return BoundarySamples(theta, zeta, qv, Dq, D2q, flagged, n, n_excluded)


# --- images of the disk --------------------------------------------------------------


@dataclass(frozen=True)
class DiskImage:
    boundary_theta: np.ndarray
    boundary: np.ndarray
    interior_r: np.ndarray
    interior_theta: np.ndarray
    interior: np.ndarray


def image_of_disk(
    q,
    n_boundary: int = 512,
    n_rings: int = 8,
    n_ring_angles: int | None = None,
    exception_angles=None,
    exclusion_radius: float = 1e-3,
    r_max: float = 0.99,
) -> DiskImage:
    """Boundary polyline q(e^{i theta}) with exception arcs clipped, plus images of
    ``n_rings`` concentric circles with radii up to ``r_max``."""
    if isinstance(q, BoundaryMapQ):
        exception_angles = q.exception_angles if exception_angles is None else exception_angles
        exclusion_radius = q.exclusion_radius
        q = q.q
    if exception_angles is None:
        exception_angles = getattr(q, "exception_angles", ())
    theta = 2 * np.pi * np.arange(n_boundary) / n_boundary
    if len(exception_angles):
        theta = theta[_circular_gap(theta, exception_angles) > exclusion_radius]
    boundary = np.asarray(q.evaluate(np.exp(1j * theta)), dtype=complex)
    n_ring_angles = n_ring_angles or n_boundary
    radii = np.linspace(0, r_max, n_rings + 1)[1:]
    ang = 2 * np.pi * np.arange(n_ring_angles) / n_ring_angles
    rr, tt = np.meshgrid(radii, ang, indexing="ij")
    interior = np.asarray(q.evaluate(rr * np.exp(1j * tt)), dtype=complex)
    return DiskImage(theta, boundary, rr.ravel(), tt.ravel(), interior.ravel())


def jordan_domain(bq: BoundaryMapQ, n: int = 2048, validate: bool = False) -> JordanImage:
    """Polygon approximating q(D).  Each clipped exception arc is bridged by a
    counterclockwise far-field arc about q(0), so unbounded images become
    large bounded polygons."""
    theta = 2 * np.pi * np.arange(n) / n
    if not bq.exception_angles:
        return JordanImage(np.asarray(bq.q.evaluate(np.exp(1j * theta))), validate=validate)
    start = bq.exception_angles[0]
    theta = (theta - start) % (2 * np.pi) + start
    theta = np.sort(theta[_circular_gap(theta, bq.exception_angles) > bq.exclusion_radius])
    w = np.asarray(bq.q.evaluate(np.exp(1j * theta)), dtype=complex)
    c = bq.q.center
    pieces = []
    gaps = np.diff(np.append(theta, theta[0] + 2 * np.pi)) > 1.5 * (2 * np.pi / n)
    begin = 0
    for k in np.flatnonzero(gaps):
        pieces.append(w[begin : k + 1])
        a0 = np.angle(w[k] - c)
        a1 = np.angle(w[(k + 1) % w.size] - c)
        sweep = (a1 - a0) % (2 * np.pi)
        radius = 0.5 * (abs(w[k] - c) + abs(w[(k + 1) % w.size] - c))
        arc = c + radius * np.exp(1j * (a0 + sweep * np.linspace(0, 1, 66)[1:-1]))
        pieces.append(arc)
        begin = k + 1
    pieces.append(w[begin:])
    return JordanImage(np.concatenate(pieces), validate=validate)


# --- builtins ------------------------------------------------------------------------


def ellipse_domain(M1: float, M2: float) -> Ellipse:
    """Image of the disk under 1 + M1 z + M2 conj(z): semi-axes M1+M2 (real), |M1-M2|."""
    return Ellipse(1.0 + 0j, M1 + M2, abs(M1 - M2))


def builtin_boundary_map(name: str) -> BoundaryMapQ:
    """``"ellipse:M1,M2"`` or ``"halfplane"``."""
    kind, _, args = name.partition(":")
    if kind == "ellipse":
        try:
            M1, M2 = (float(x) for x in args.split(","))
        except ValueError:
            raise ValueError(f"expected ellipse:M1,M2, got {name!r}") from None
        if not M1 > M2 > 0:
            raise ValueError("ellipse builtin needs M1 > M2 > 0")
        return BoundaryMapQ(ellipse_map(M1, M2), (), domain=ellipse_domain(M1, M2))
    if kind == "halfplane" and not args:
        return BoundaryMapQ(halfplane_map(), (0.0,), domain=HalfPlane(-0.5))
    raise ValueError(f"unknown builtin map {name!r}")
