"""Falsification scans for admissibility classes and subordination-theorem harnesses.

A function psi(r, s, t; z) is admissible for (Omega, q) when psi avoids Omega
at every boundary-contact configuration::

    r = q(zeta),  s = m Dq(zeta),  Re(t/s) >= m Re(D2q(zeta)/Dq(zeta)),

with zeta on the unit circle away from E(q), m >= 1 and z in the disk.  The
``"definition"`` variant uses ``Re(t/s + 1)`` on the left instead.  The
scanner samples that set and reports the first sample with psi in Omega
(points within ``tol_geo`` of the boundary count as in Omega).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from .domains import INSIDE, OUTSIDE, TOL_GEO, UNCERTAIN, BoundaryMapQ, DomainSpec, boundary_samples
from .errors import HypothesisViolationError, NormalizationError
from .report import NO_VIOLATION_FOUND, VIOLATION, ScanReport
from .series import EPS_DIV
from .subordination import STRONG, Resolution, check_subordination, sample_disk, univalence_probe

LEMMA, DEFINITION = "lemma", "definition"


@dataclass(frozen=True)
class AffinePsi:
    """psi(r, s, t; z) = alpha r + beta s + gamma t + delta."""

    alpha: complex = 1.0
    beta: complex = 0.0
    gamma: complex = 0.0
    delta: complex = 0.0
    kind = "affine"

    def __post_init__(self):
        if not np.all(np.isfinite([self.alpha, self.beta, self.gamma, self.delta])):
            raise ValueError("affine coefficients must be finite")

    def __call__(self, r, s, t, z):
        return self.alpha * r + self.beta * s + self.gamma * t + self.delta

    @property
    def depends_on_t(self) -> bool:
        return self.gamma != 0

    depends_on_z = False

    def to_dict(self):
        return {"kind": self.kind, **{k: complex(getattr(self, k)) for k in ("alpha", "beta", "gamma", "delta")}}


@dataclass(frozen=True)
class CustomPsi:
    func: Callable
    label: str = "custom"
    depends_on_t: bool = True
    depends_on_z: bool = True
    kind = "custom"

    def __call__(self, r, s, t, z):
        return self.func(r, s, t, z)

    def to_dict(self):
        return {"kind": self.kind, "label": self.label}


@dataclass(frozen=True)
class AdmissibilityScanConfig:
    n_zeta: int = 512
    m_max: float = 100.0
    n_m: int = 64
    x_max: float = 10.0
    y_max: float = 10.0
    n_x: int = 32
    n_y: int = 32
    z_radii: tuple = (0.0, 0.5, 0.9)
    n_z_angles: int = 8
    variant: str = LEMMA
    tol_geo: float = TOL_GEO
    eps_div: float = EPS_DIV
    reference_point: complex | None = None
    record_values: bool = False
    threads: int | None = None

    def __post_init__(self):
        if self.m_max < 1:
            raise ValueError("m_max must be >= 1")
        if min(self.n_m, self.n_x, self.n_y, self.n_z_angles) < 1 or self.n_zeta < 2:
            raise ValueError("grid counts must be positive")
        if self.variant not in (LEMMA, DEFINITION):
            raise ValueError(f"variant must be {LEMMA!r} or {DEFINITION!r}")

    def m_grid(self):
        """Geometric grid from exactly 1 to m_max."""
        if self.n_m == 1 or self.m_max == 1:
            return np.array([1.0])
        g = np.geomspace(1.0, self.m_max, self.n_m)
        g[0] = 1.0
        return g

    def t_offsets(self):
        """Offsets x + iy added to the cone bound; x = 0 is always included."""
        x = np.linspace(0.0, self.x_max, self.n_x)
        y = np.union1d(np.linspace(-self.y_max, self.y_max, self.n_y), [0.0])
        return (x[:, None] + 1j * y[None, :]).ravel()

    def z_grid(self):
        pts = [0j]
        theta = 2 * np.pi * np.arange(self.n_z_angles) / self.n_z_angles
        for r in self.z_radii:
            if r > 0:
                pts.extend(r * np.exp(1j * theta))
        return np.array(pts)


def _thread_count(cfg):
    if cfg.threads:
        return int(cfg.threads)
    try:
        return max(1, int(os.environ.get("HARMSUB_THREADS", "1")))
    except ValueError:
        return 1


_CHUNK = 1 << 20


def _scan_chunk(idx, bs, psi, omega, cfg, m, offsets, zs, ref):
    """Scan zeta indices ``idx``; returns per-chunk aggregates."""
    qv = bs.q[idx][:, None, None, None]
    Dq = bs.Dq[idx][:, None]
    curv = np.real(bs.D2q[idx] / bs.Dq[idx])[:, None]
    s2 = m[None, :] * Dq
    bound = m[None, :] * curv - (1.0 if cfg.variant == DEFINITION else 0.0)
    s = s2[:, :, None, None]
    t = s * (bound[:, :, None, None] + offsets[None, None, :, None])
    z = zs[None, None, None, :]
    with np.errstate(all="ignore"):
        vals = np.asarray(psi(qv, s, t, z), dtype=complex)
    vals = np.broadcast_to(vals, (idx.size, m.size, offsets.size, zs.size))
    zero_s = np.broadcast_to((np.abs(s) < cfg.eps_div), vals.shape)
    live = ~zero_s
    cls = omega.classify(vals, cfg.tol_geo)
    cls = np.where(live, cls, OUTSIDE)
    hit = cls != OUTSIDE
    out = {
        "strict": int(np.count_nonzero(cls == INSIDE)),
        "boundary": int(np.count_nonzero(cls == UNCERTAIN)),
        "zero_s": int(np.count_nonzero(zero_s)),
        "tested": int(np.count_nonzero(live)),
        "first": None,
        "first_strict": None,
    }
    if np.any(hit):
        out["first"] = np.unravel_index(int(np.argmax(hit.ravel())), vals.shape)
    if out["strict"]:
        out["first_strict"] = np.unravel_index(int(np.argmax((cls == INSIDE).ravel())), vals.shape)
    vlive = vals[live]
    if vlive.size:
        lo, hi = omega.distance_bounds(vlive)
        cand = vlive[lo <= np.min(hi)]
        out["margin"] = float(np.min(omega.signed_distance(cand)))
    else:
        out["margin"] = np.inf
    if ref is not None:
        dist = np.where(live, np.abs(vals - ref), np.inf)
        out["per_m_ref"] = dist.min(axis=(0, 2, 3))
    if cfg.record_values and offsets.size == 1 and zs.size == 1:
        out["values"] = vals[:, :, 0, 0].copy()
    out["_arrays"] = (t, vals)
    return out


def scan_admissibility(psi, q: BoundaryMapQ, omega: DomainSpec, cfg: AdmissibilityScanConfig = AdmissibilityScanConfig()):
    """Sample the contact set and look for psi values inside ``omega``.

    NO_VIOLATION_FOUND means none of the sampled configurations hit omega;
    ``margin`` is then the smallest distance from a sampled psi value to omega.
    Witnesses are lexicographically first in (zeta, m, t, z) index order.
    """
    bs = boundary_samples(q, cfg.n_zeta)
    usable = np.flatnonzero(bs.usable)
    m = cfg.m_grid()
    offsets = cfg.t_offsets() if psi.depends_on_t else np.zeros(1, dtype=complex)
    zs = cfg.z_grid() if getattr(psi, "depends_on_z", True) else np.zeros(1, dtype=complex)
    ref = None if cfg.reference_point is None else complex(cfg.reference_point)
    per_zeta = m.size * offsets.size * zs.size
    step = max(1, _CHUNK // per_zeta)
    chunks = [usable[i : i + step] for i in range(0, usable.size, step)]

    def run(idx):
        res = _scan_chunk(idx, bs, psi, omega, cfg, m, offsets, zs, ref)
        t, vals = res.pop("_arrays")
        for key in ("first", "first_strict"):
            if res[key] is not None:
                a, b, c, d = res[key]
                res[key] = {
                    "zeta_index": int(idx[a]),
                    "m_index": int(b),
                    "t_index": int(c),
                    "z_index": int(d),
                    "theta": float(bs.theta[idx[a]]),
                    "zeta": complex(bs.zeta[idx[a]]),
                    "m": float(m[b]),
                    "t": complex(np.broadcast_to(t, vals.shape)[a, b, c, d]),
                    "z": complex(zs[d]),
                    "psi_value": complex(vals[a, b, c, d]),
                }
        return res

    n_threads = _thread_count(cfg)
    if n_threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(n_threads) as pool:
            results = list(pool.map(run, chunks))
    else:
        results = [run(c) for c in chunks]

    strict = sum(r["strict"] for r in results)
    contacts = sum(r["boundary"] for r in results)
    first = next((r["first"] for r in results if r["first"] is not None), None)
    first_strict = next((r["first_strict"] for r in results if r["first_strict"] is not None), None)
    if first is not None:
        first["kind"] = "inside" if omega.classify(first["psi_value"], cfg.tol_geo) == INSIDE else "boundary"
    margin = min((r["margin"] for r in results), default=np.inf)
    details = {
        "variant": cfg.variant,
        "m_range": [float(m[0]), float(m[-1])],
        "strict_violations": strict,
        "boundary_contacts": contacts,
        "first_strict_violation": first_strict,
        "skipped_zero_s": sum(r["zero_s"] for r in results),
        "flagged_zeta": int(np.count_nonzero(bs.flagged)),
        "excluded_zeta": bs.n_excluded,
        "n_zeta_used": int(usable.size),
        "n_t": int(offsets.size),
        "n_z": int(zs.size),
        "min_signed_distance": margin,
    }
    if ref is not None:
        per_m = np.min([r["per_m_ref"] for r in results], axis=0)
        details["reference_point"] = ref
        details["per_m_min_reference_distance"] = per_m
        details["min_reference_distance"] = float(per_m.min())
    if cfg.record_values and offsets.size == 1 and zs.size == 1:
        details["theta"] = bs.theta[usable]
        details["m_values"] = m
        details["psi_values"] = np.concatenate([r["values"] for r in results], axis=0)
    verdict = VIOLATION if (strict + contacts) else NO_VIOLATION_FOUND
    cfg_echo = asdict(cfg)
    cfg_echo["psi"] = psi.to_dict()
    cfg_echo["omega"] = omega.to_dict() if hasattr(omega, "to_dict") else repr(omega)
    return ScanReport(
        verdict=verdict,
        samples_tested=sum(r["tested"] for r in results),
        margin=margin if verdict == NO_VIOLATION_FOUND else None,
        witness=first,
        config=cfg_echo,
        details=details,
    )


# --- theorem harnesses -------------------------------------------------------------


def psi_of(psi, p):
    """z -> psi(p(z), Dp(z), D2p(z); z)."""

    def composed(z):
        z = np.asarray(z, dtype=complex)
        return psi(p.evaluate(z), p.D_at(z), p.D2_at(z), z)

    return composed


@dataclass
class CandidateResult:
    label: str
    premise: bool
    premise_witness: complex | None
    premise_witness_z: complex | None
    conclusion: str
    contradiction: bool
    premise_equality: bool | None = None
    premise_equality_residual: float | None = None

    def to_dict(self):
        return asdict(self)


@dataclass
class ImplicationReport:
    candidates: list
    contingency: dict
    contradictions: list = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return not self.contradictions

    def to_dict(self):
        return {
            "candidates": [c.to_dict() for c in self.candidates],
            "contingency": self.contingency,
            "contradictions": self.contradictions,
            "consistent": self.consistent,
        }


def _labelled(cands):
    for i, c in enumerate(cands):
        if isinstance(c, tuple):
            yield c
        else:
            yield f"candidate[{i}]", c


def check_implication(
    psi,
    q: BoundaryMapQ,
    omega: DomainSpec,
    p_candidates,
    resolution: Resolution = Resolution(),
    eta=None,
    tol_center: float = 1e-9,
) -> ImplicationReport:
    """Evaluate premise (psi(p, Dp, D2p; z) in omega at every sample) and
    conclusion (p strongly subordinate to q) for each candidate p.

    A candidate with true premise and false conclusion is reported as a
    contradiction of the implication.  If ``eta`` is given, each premise is
    also compared pointwise against eta to detect equality cases.
    """
    probe = univalence_probe(q.q)
    if not probe.ok:
        raise HypothesisViolationError(f"q failed the univalence probe: {probe.status}")
    q_domain = q.image_domain()
    q0 = q.q.center
    results, contradictions = [], []
    table = {"premise_true/conclusion_true": 0, "premise_true/conclusion_false": 0,
             "premise_false/conclusion_true": 0, "premise_false/conclusion_false": 0}
    for label, p in _labelled(p_candidates):
        if abs(p.center - q0) > tol_center:
            raise HypothesisViolationError(f"{label}: p(0) = {p.center} differs from q(0) = {q0}")
        z, w = sample_disk(psi_of(psi, p), resolution)
        cls = omega.classify(w, resolution.tol_geo)
        out = np.flatnonzero(cls == OUTSIDE)
        premise = out.size == 0
        wit = (complex(w[out[0]]), complex(z[out[0]])) if out.size else (None, None)
        verdict = check_subordination(p, q.q, q_domain, resolution, assume_univalent=True)
        concl = verdict.relation == STRONG
        eq = res = None
        if eta is not None:
            res = float(np.max(np.abs(w - eta.evaluate(z))))
            eq = res <= 1e-12
        bad = premise and not concl
        results.append(CandidateResult(label, premise, wit[0], wit[1], verdict.relation, bad, eq, res))
        table[f"premise_{str(premise).lower()}/conclusion_{str(concl).lower()}"] += 1
        if bad:
            contradictions.append(label)
    return ImplicationReport(results, table, contradictions)


@dataclass
class RhoScanReport:
    rho: list
    reports: list
    margins: list
    trend: str
    reference_distances: list | None = None

    @property
    def all_clear(self) -> bool:
        return all(r.verdict == NO_VIOLATION_FOUND for r in self.reports)

    def to_dict(self):
        return {
            "rho": self.rho,
            "verdicts": [r.verdict for r in self.reports],
            "margins": self.margins,
            "reference_distances": self.reference_distances,
            "trend": self.trend,
            "reports": [r.to_dict() for r in self.reports],
        }


def _trend(values):
    d = np.diff(values)
    if d.size == 0:
        return "single"
    if np.all(d > 0):
        return "increasing"
    if np.all(d < 0):
        return "decreasing"
    if np.all(d == 0):
        return "constant"
    return "non-monotone"


def rho_limit_scan(psi, q: BoundaryMapQ, omega: DomainSpec, rho_list, cfg: AdmissibilityScanConfig = AdmissibilityScanConfig()):
    """Scan psi against q_rho(z) = q(rho z) for each rho (E(q_rho) is empty)."""
    rho = [float(r) for r in rho_list]
    if not rho or any(not 0 < r < 1 for r in rho) or any(b <= a for a, b in zip(rho, rho[1:])):
        raise ValueError("rho values must be strictly increasing in (0, 1)")
    reports = [scan_admissibility(psi, q.dilate(r), omega, cfg) for r in rho]
    margins = [r.details["min_signed_distance"] for r in reports]
    refs = None
    if cfg.reference_point is not None:
        refs = [r.details["min_reference_distance"] for r in reports]
    return RhoScanReport(rho, reports, margins, _trend(margins), refs)


@dataclass
class EtaFormReport:
    premise: str
    conclusion: str
    premise_witness: complex | None
    conclusion_witness: complex | None

    @property
    def consistent(self) -> bool:
        return not (self.premise == STRONG and self.conclusion != STRONG)

    def to_dict(self):
        return asdict(self)


def check_eta_form(psi, p, eta: BoundaryMapQ, q: BoundaryMapQ, resolution: Resolution = Resolution(), tol: float = 1e-9):
    """Premise psi(p, Dp, D2p; z) strongly subordinate to eta; conclusion p subordinate to q."""
    at_origin = complex(psi(1.0, 0.0, 0.0, 0.0))
    if abs(at_origin - 1) > tol:
        raise NormalizationError(f"psi(1, 0, 0; 0) = {at_origin} != 1")
    for name, bq in (("eta", eta), ("q", q)):
        probe = univalence_probe(bq.q)
        if not probe.ok:
            raise HypothesisViolationError(f"{name} failed the univalence probe: {probe.status}")
    prem = check_subordination(psi_of(psi, p), eta.q, eta.image_domain(), resolution, assume_univalent=True)
    concl = check_subordination(p, q.q, q.image_domain(), resolution, assume_univalent=True)
    return EtaFormReport(prem.relation, concl.relation, prem.witness, concl.witness)
