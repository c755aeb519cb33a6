"""Finite-difference oracle for D and Dfrak on arbitrary smooth maps.

With ``z = r e^{i theta}`` the operators are plain polar derivatives,
``Df = -i df/dtheta`` and ``Dfrak f = r df/dr``, so central differences in
theta and r approximate them to O(h^2) without touching the coefficient
representation.  That independence is what makes them a useful check on
:mod:`harmsub.series`.

Every function here is vectorized over an array of sample points.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from .errors import NearZeroDenominatorError, SingularEvaluationError
from .report import FAIL, PASS, ScanReport
from .series import EPS_DIV, HarmonicSeries, _PointwiseOps, apply_D, apply_Dfrak

BLOWUP = 1e15


@dataclass(frozen=True)
class FDConfig:
    step_h: float = 1e-5
    scheme: str = "central"
    tol_report: float = 1e-6
    eps_div: float = EPS_DIV

    def __post_init__(self):
        if not 0 < self.step_h < 1e-2:
            raise ValueError(f"step_h must lie in (0, 1e-2), got {self.step_h}")
        if self.scheme != "central":
            raise ValueError(f"unsupported scheme {self.scheme!r}")


@dataclass(frozen=True)
class PointwiseMap:
    """Black-box map C -> C.

    ``D``, ``Dfrak`` and ``D2`` are optional exact right-hand sides; when
    absent, the checks fall back on finite differences.
    """

    eval: Callable
    label: str = "f"
    singularities: tuple = ()
    singular_radius: float = 1e-8
    D: Callable | None = None
    Dfrak: Callable | None = None
    D2: Callable | None = None

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        for s in self.singularities:
            near = np.abs(z - s) < self.singular_radius
            if np.any(near):
                raise SingularEvaluationError(
                    f"{self.label}: evaluation within {self.singular_radius} of singularity {s}",
                    point=complex(np.ravel(z)[np.argmax(np.ravel(near))]),
                )
        with np.errstate(all="ignore"):
            w = np.asarray(self.eval(z), dtype=complex)
        w = np.broadcast_to(w, z.shape)
        bad = ~np.isfinite(w) | (np.abs(w) > BLOWUP)
        if np.any(bad):
            raise SingularEvaluationError(
                f"{self.label}: non-finite value", point=complex(np.ravel(z)[np.argmax(np.ravel(bad))])
            )
        return w


def as_pointwise(f, label: str | None = None) -> PointwiseMap:
    if isinstance(f, PointwiseMap):
        return f
    if isinstance(f, _PointwiseOps):
        return PointwiseMap(
            f.evaluate, label or getattr(f, "label", "series"), D=f.D_at, Dfrak=f.Dfrak_at, D2=f.D2_at
        )
    if callable(f):
        return PointwiseMap(f, label or getattr(f, "__name__", "f"))
    raise TypeError(f"cannot evaluate {f!r} pointwise")


def default_samples(n_r: int = 9, n_theta: int = 64, r_min: float = 0.1, r_max: float = 0.9):
    """Tensor grid of radii x angles.  Angles sit at half steps, off the real axis."""
    r = np.linspace(r_min, r_max, n_r)
    theta = (np.arange(n_theta) + 0.5) * 2 * np.pi / n_theta
    return (r[:, None] * np.exp(1j * theta)[None, :]).ravel()


def _polar(z):
    z = np.asarray(z, dtype=complex)
    return z, np.abs(z), np.angle(z)


def _theta_stencil(f, z, h):
    z, r, t = _polar(z)
    return f(r * np.exp(1j * (t + h))), f(r * np.exp(1j * (t - h)))


def _radial_stencil(f, z, h):
    z, r, t = _polar(z)
    e = np.exp(1j * t)
    return f((r + h) * e), f((r - h) * e)


def fd_D(f, z, cfg: FDConfig = FDConfig()):
    """Df ~ (1/i) d/dtheta f, central difference.  Zero at the origin."""
    f = as_pointwise(f)
    z = np.asarray(z, dtype=complex)
    h = cfg.step_h
    plus, minus = _theta_stencil(f, z, h)
    out = (plus - minus) / (2j * h)
    return np.where(z == 0, 0.0, out)


def fd_Dfrak(f, z, cfg: FDConfig = FDConfig()):
    """Dfrak f ~ r d/dr f, central difference.  Zero at the origin."""
    f = as_pointwise(f)
    z = np.asarray(z, dtype=complex)
    h = cfg.step_h
    plus, minus = _radial_stencil(f, z, h)
    return np.abs(z) * (plus - minus) / (2 * h)


def fd_D_arg(f, z, cfg: FDConfig = FDConfig()):
    """D(arg f), differencing arg through the ratio f(+)/f(-) to dodge branch cuts."""
    f = as_pointwise(f)
    plus, minus = _theta_stencil(f, z, cfg.step_h)
    return np.angle(plus / minus) / (2j * cfg.step_h)


def fd_Dfrak_arg(f, z, cfg: FDConfig = FDConfig()):
    f = as_pointwise(f)
    plus, minus = _radial_stencil(f, z, cfg.step_h)
    return np.abs(np.asarray(z)) * np.angle(plus / minus) / (2 * cfg.step_h)


# --- residual bookkeeping -------------------------------------------------------


def _report(checks: dict, samples, cfg: FDConfig, label: str) -> ScanReport:
    samples = np.asarray(samples, dtype=complex).ravel()
    details = {}
    worst, worst_z = 0.0, None
    for name, residual in checks.items():
        residual = np.broadcast_to(np.abs(residual), samples.shape)
        k = int(np.argmax(residual))
        details[name] = float(residual[k])
        if residual[k] > worst or worst_z is None:
            worst, worst_z = float(residual[k]), complex(samples[k])
    verdict = PASS if worst < cfg.tol_report else FAIL
    return ScanReport(
        verdict=verdict,
        samples_tested=samples.size,
        max_residual=worst,
        witness={"point": worst_z},
        config={"label": label, **asdict(cfg)},
        details=details,
    )


def _require_nonzero(values, samples, eps, what):
    small = np.abs(values) <= eps
    if np.any(small):
        raise NearZeroDenominatorError(f"|{what}| <= {eps}", point=complex(np.ravel(samples)[np.argmax(small)]))


# --- identity checks ------------------------------------------------------------


def verify_product_rule(phi, psi, samples, cfg: FDConfig = FDConfig(), quotient: bool = True) -> ScanReport:
    """Product (and quotient) rules for D and Dfrak, all sides by finite differences."""
    phi, psi = as_pointwise(phi), as_pointwise(psi)
    z = np.asarray(samples, dtype=complex).ravel()
    a, b = phi(z), psi(z)
    prod = PointwiseMap(lambda w: phi(w) * psi(w), f"({phi.label})*({psi.label})")
    Da, Db = fd_D(phi, z, cfg), fd_D(psi, z, cfg)
    Fa, Fb = fd_Dfrak(phi, z, cfg), fd_Dfrak(psi, z, cfg)
    checks = {
        "D(product)": fd_D(prod, z, cfg) - (a * Db + b * Da),
        "Dfrak(product)": fd_Dfrak(prod, z, cfg) - (a * Fb + b * Fa),
    }
    if quotient:
        _check_divisor(psi, z, cfg)
        quo = PointwiseMap(lambda w: phi(w) / psi(w), f"({phi.label})/({psi.label})")
        checks["D(quotient)"] = fd_D(quo, z, cfg) - (b * Da - a * Db) / b**2
        checks["Dfrak(quotient)"] = fd_Dfrak(quo, z, cfg) - (b * Fa - a * Fb) / b**2
    return _report(checks, z, cfg, "product rule")


def _check_divisor(psi, z, cfg):
    h = cfg.step_h
    for pts in (z, *_theta_points(z, h), *_radial_points(z, h)):
        vals = psi(pts)
        small = np.abs(vals) <= cfg.eps_div
        if np.any(small):
            k = int(np.argmax(small))
            raise SingularEvaluationError(f"divisor {psi.label} vanishes near sample", point=complex(z[k]))


def _theta_points(z, h):
    z, r, t = _polar(z)
    return r * np.exp(1j * (t + h)), r * np.exp(1j * (t - h))


def _radial_points(z, h):
    z, r, t = _polar(z)
    e = np.exp(1j * t)
    return (r + h) * e, (r - h) * e


def wirtinger_fd(phi, w, h: float = 1e-6):
    """Cartesian central-difference Wirtinger derivatives (d/dw, d/dwbar)."""
    phi = as_pointwise(phi)
    fx = (phi(w + h) - phi(w - h)) / (2 * h)
    fy = (phi(w + 1j * h) - phi(w - 1j * h)) / (2 * h)
    return (fx - 1j * fy) / 2, (fx + 1j * fy) / 2


def verify_composition_rule(
    phi, psi, samples, cfg: FDConfig = FDConfig(), dphi_dw=None, dphi_dwbar=None
) -> ScanReport:
    """D(phi o psi) = phi_w(psi) D psi + phi_wbar(psi) D conj(psi), and the Dfrak analog."""
    phi, psi = as_pointwise(phi), as_pointwise(psi)
    z = np.asarray(samples, dtype=complex).ravel()
    w = psi(z)
    if dphi_dw is None or dphi_dwbar is None:
        pw, pwb = wirtinger_fd(phi, w)
    else:
        pw, pwb = dphi_dw(w), dphi_dwbar(w)
    comp = PointwiseMap(lambda x: phi(psi(x)), f"{phi.label}o{psi.label}")
    conj_psi = PointwiseMap(lambda x: np.conj(psi(x)), f"conj({psi.label})")
    checks = {
        "D(composition)": fd_D(comp, z, cfg) - (pw * fd_D(psi, z, cfg) + pwb * fd_D(conj_psi, z, cfg)),
        "Dfrak(composition)": fd_Dfrak(comp, z, cfg)
        - (pw * fd_Dfrak(psi, z, cfg) + pwb * fd_Dfrak(conj_psi, z, cfg)),
    }
    return _report(checks, z, cfg, "composition rule")


def verify_polar_identities(f, samples, cfg: FDConfig = FDConfig()) -> ScanReport:
    """Polar-derivative identities of |f| and arg f against Df and Dfrak f.

    Checked (exact operator values where ``f`` provides them)::

        d|f|/dtheta    = -|f| Im(Df/f)
        d|f|/dr        = (|f|/r) Re(Dfrak f/f)
        d arg f/dtheta = Re(Df/f)
        d arg f/dr     = (1/r) Im(Dfrak f/f)

    plus ``df/dtheta = i Df``, ``r df/dr = Dfrak f`` and ``r d(Df)/dr = D2 f``
    whenever exact ``D``, ``Dfrak``, ``D2`` are available.
    """
    f = as_pointwise(f)
    z = np.asarray(samples, dtype=complex).ravel()
    h = cfg.step_h
    r = np.abs(z)
    if np.any(r == 0):
        raise ValueError("polar identities need samples away from the origin")
    fz = f(z)
    _require_nonzero(fz, z, cfg.eps_div, "f")
    Df = f.D(z) if f.D is not None else fd_D(f, z, cfg)
    Ff = f.Dfrak(z) if f.Dfrak is not None else fd_Dfrak(f, z, cfg)
    tp, tm = _theta_stencil(f, z, h)
    rp, rm = _radial_stencil(f, z, h)
    mod = np.abs(fz)
    checks = {
        "dmod_dtheta": (np.abs(tp) - np.abs(tm)) / (2 * h) + mod * np.imag(Df / fz),
        "dmod_dr": (np.abs(rp) - np.abs(rm)) / (2 * h) - mod / r * np.real(Ff / fz),
        "darg_dtheta": np.angle(tp / tm) / (2 * h) - np.real(Df / fz),
        "darg_dr": np.angle(rp / rm) / (2 * h) - np.imag(Ff / fz) / r,
    }
    if f.D is not None:
        checks["df_dtheta"] = (tp - tm) / (2 * h) - 1j * Df
    if f.Dfrak is not None:
        checks["r_df_dr"] = r * (rp - rm) / (2 * h) - Ff
    if f.D is not None and f.D2 is not None:
        # one derivative higher than the rest: fourth-order stencil keeps truncation below tolerance
        Df_map = PointwiseMap(f.D, "Df")
        Dp, Dm = _radial_stencil(Df_map, z, h)
        Dp2, Dm2 = _radial_stencil(Df_map, z, 2 * h)
        checks["r_dDf_dr"] = r * (8 * (Dp - Dm) - (Dp2 - Dm2)) / (12 * h) - f.D2(z)
    return _report(checks, z, cfg, f"polar identities of {f.label}")


def verify_conj_re_im_identities(f: HarmonicSeries, samples, cfg: FDConfig = FDConfig()) -> ScanReport:
    """Conjugation, Re, Im, |f|, arg f and Jacobian identities for D and Dfrak.

    Re f, Im f, |f| and arg f are not harmonic, so their left-hand sides are
    differenced numerically; the right-hand sides use exact Df, Dfrak f.
    ``D arg f`` equals ``-i Re(Df/f)`` (since ``D = -i d/dtheta``).
    """
    z = np.asarray(samples, dtype=complex).ravel()
    fz = f.evaluate(z)
    Df = apply_D(f).evaluate(z)
    Ff = apply_Dfrak(f).evaluate(z)
    fc = f.conj()
    re_f = PointwiseMap(lambda w: np.real(f.evaluate(w)), "Re f")
    im_f = PointwiseMap(lambda w: np.imag(f.evaluate(w)), "Im f")
    checks = {
        "D conj f": apply_D(fc).evaluate(z) + np.conj(Df),
        "Dfrak conj f": apply_Dfrak(fc).evaluate(z) - np.conj(Ff),
        "D Re f": fd_D(re_f, z, cfg) - 1j * np.imag(Df),
        "Dfrak Re f": fd_Dfrak(re_f, z, cfg) - np.real(Ff),
        "D Im f": fd_D(im_f, z, cfg) + 1j * np.real(Df),
        "Dfrak Im f": fd_Dfrak(im_f, z, cfg) - np.imag(Ff),
        "Jacobian": np.real(Df * np.conj(Ff)) - np.abs(z) ** 2 * f.jacobian(z),
    }
    if np.all(np.abs(fz) > cfg.eps_div):
        mod_f = PointwiseMap(lambda w: np.abs(f.evaluate(w)), "|f|")
        checks.update(
            {
                "D |f|": fd_D(mod_f, z, cfg) - 1j * np.abs(fz) * np.imag(Df / fz),
                "Dfrak |f|": fd_Dfrak(mod_f, z, cfg) - np.abs(fz) * np.real(Ff / fz),
                "D arg f": fd_D_arg(f.evaluate, z, cfg) + 1j * np.real(Df / fz),
                "Dfrak arg f": fd_Dfrak_arg(f.evaluate, z, cfg) - np.imag(Ff / fz),
            }
        )
    elif not np.allclose(fz, 0):
        _require_nonzero(fz, z, cfg.eps_div, "f")
    return _report(checks, z, cfg, "conjugation / Re / Im / modulus / argument identities")


def verify_remark_constants(samples, cfg: FDConfig = FDConfig(), G: Callable = np.exp) -> ScanReport:
    """D kills G(|z|^2) and Dfrak kills G(arg z)."""
    z = np.asarray(samples, dtype=complex).ravel()
    of_modulus = PointwiseMap(lambda w: G(np.abs(w) ** 2), "G(|z|^2)")
    of_angle = PointwiseMap(lambda w: G(np.angle(w)), "G(arg z)")
    checks = {"D G(|z|^2)": fd_D(of_modulus, z, cfg), "Dfrak G(arg z)": fd_Dfrak(of_angle, z, cfg)}
    return _report(checks, z, cfg, "operator constants")


def verify_remark_linear(alpha: complex, beta: complex, samples, cfg: FDConfig = FDConfig()) -> ScanReport:
    """Dfrak fixes alpha z + beta conj(z); checked exactly and by differences."""
    z = np.asarray(samples, dtype=complex).ravel()
    f = HarmonicSeries([0, alpha], [0, np.conj(beta)])
    fz = alpha * z + beta * np.conj(z)
    checks = {
        "Dfrak (series)": apply_Dfrak(f).evaluate(z) - fz,
        "Dfrak (differences)": fd_Dfrak(f.evaluate, z, cfg) - fz,
    }
    return _report(checks, z, cfg, "linear maps")


def richardson_ratio(f, samples, step_h: float = 1e-3, operator: str = "D") -> float:
    """max|fd - exact| at step h divided by the same at h/2; about 4 for O(h^2)."""
    f = as_pointwise(f)
    z = np.asarray(samples, dtype=complex).ravel()
    if operator == "D":
        exact, fd = f.D(z), fd_D
    else:
        exact, fd = f.Dfrak(z), fd_Dfrak
    e1 = np.max(np.abs(fd(f, z, FDConfig(step_h=step_h)) - exact))
    e2 = np.max(np.abs(fd(f, z, FDConfig(step_h=step_h / 2)) - exact))
    return float(e1 / e2)
