"""Harmonic functions f = h + conj(g) and the operators D and Dfrak.

Two representations share one pointwise interface:

* :class:`HarmonicSeries` -- truncated coefficient pairs ``(a, b)`` of ``h`` and
  ``g``.  The operators act exactly on coefficients.
* :class:`HarmonicMap` -- closed-form ``h``, ``g`` (and their first two
  derivatives) given as callables.  Used for maps with boundary poles, such
  as the half-plane map, which no finite truncation represents.

Operator conventions (``z = r e^{i theta}``)::

    Df      = z h' - conj(z g')                 = -i d/dtheta f
    Dfrak f = z h' + conj(z g')                 =  r d/dr f
    D2 f    = Df + z^2 h'' - conj(z^2 g'')      =  r d/dr (Df)

``D2`` is the radial derivative of ``Df``; composing ``D`` with itself flips
the sign of the co-analytic part once more and gives ``-d^2/dtheta^2 f``
instead.  Use ``apply_D(apply_D(f))`` for the literal composition.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import NearZeroDenominatorError, SeriesFormatError

EPS_BOUNDARY = 1e-12
EPS_DIV = 1e-12


def _check_eval_point(z):
    z = np.asarray(z, dtype=complex)
    if z.size and np.max(np.abs(z)) > 1.0 + EPS_BOUNDARY:
        raise ValueError(f"evaluation point outside the closed unit disk: max |z| = {np.max(np.abs(z))!r}")
    return z


class _PointwiseOps:
    """Pointwise quantities derived from ``h, h', h'', g, g', g''``."""

    def _parts(self, z, order: int = 2):
        raise NotImplementedError

    def evaluate(self, z):
        h, g = self._parts(z, 0)
        return h + np.conj(g)

    __call__ = evaluate

    def dz(self, z):
        _, dh, _, dg = self._parts(z, 1)
        return dh

    def dzbar(self, z):
        _, dh, _, dg = self._parts(z, 1)
        return np.conj(dg)

    def D_at(self, z):
        z = np.asarray(z, dtype=complex)
        _, dh, _, dg = self._parts(z, 1)
        return z * dh - np.conj(z * dg)

    def Dfrak_at(self, z):
        z = np.asarray(z, dtype=complex)
        _, dh, _, dg = self._parts(z, 1)
        return z * dh + np.conj(z * dg)

    def D2_at(self, z):
        z = np.asarray(z, dtype=complex)
        _, dh, d2h, _, dg, d2g = self._parts(z, 2)
        return z * dh + z * z * d2h - np.conj(z * dg + z * z * d2g)

    def Dfrak2_at(self, z):
        z = np.asarray(z, dtype=complex)
        _, dh, d2h, _, dg, d2g = self._parts(z, 2)
        return z * dh + z * z * d2h + np.conj(z * dg + z * z * d2g)

    def jacobian(self, z):
        _, dh, _, dg = self._parts(z, 1)
        return np.abs(dh) ** 2 - np.abs(dg) ** 2

    def dilatation(self, z, eps_div: float = EPS_DIV):
        _, dh, _, dg = self._parts(z, 1)
        small = np.abs(dh) <= eps_div
        if np.any(small):
            bad = np.asarray(z, dtype=complex)
            bad = bad.ravel()[np.argmax(np.ravel(small))] if bad.ndim else bad
            raise NearZeroDenominatorError(f"|h'(z)| <= {eps_div} in dilatation", point=complex(bad))
        return dg / dh

    @property
    def center(self) -> complex:
        """Value at the origin."""
        return complex(self.evaluate(0.0))


@dataclass(frozen=True, eq=False)
class HarmonicSeries(_PointwiseOps):
    """Truncated ``f = h + conj(g)`` with ``h = sum a_n z^n``, ``g = sum b_n z^n``.

    The shorter coefficient list is zero-padded so both have length
    ``degree + 1``.  ``normalized`` records a required value of ``f(0)``; it
    is checked by :meth:`is_normalized`, never enforced by mutation.
    """

    a: np.ndarray
    b: np.ndarray
    normalized: complex | None = None

    def __post_init__(self):
        a = np.array(self.a, dtype=complex).ravel()
        b = np.array(self.b, dtype=complex).ravel()
        if a.size == 0 and b.size == 0:
            raise ValueError("a harmonic series needs at least one coefficient")
        n = max(a.size, b.size)
        a = np.concatenate([a, np.zeros(n - a.size, dtype=complex)])
        b = np.concatenate([b, np.zeros(n - b.size, dtype=complex)])
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ValueError("coefficients must be finite")
        a.flags.writeable = False
        b.flags.writeable = False
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if self.normalized is not None:
            object.__setattr__(self, "normalized", complex(self.normalized))

    @property
    def degree(self) -> int:
        return self.a.size - 1

    @property
    def is_analytic(self) -> bool:
        return not np.any(self.b)

    def _parts(self, z, order=2):
        z = _check_eval_point(z)
        out = [P.polyval(z, self.a)]
        da = self.a
        for _ in range(order):
            da = P.polyder(da)
            out.append(P.polyval(z, da))
        out.append(P.polyval(z, self.b))
        db = self.b
        for _ in range(order):
            db = P.polyder(db)
            out.append(P.polyval(z, db))
        return tuple(out)

    def is_normalized(self, tol: float = 1e-12) -> bool:
        if self.normalized is None:
            return True
        return abs(self.center - self.normalized) <= tol

    # --- linear structure -------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, HarmonicSeries):
            return NotImplemented
        return np.array_equal(self.a, other.a) and np.array_equal(self.b, other.b)

    __hash__ = None

    def _aligned(self, other):
        n = max(self.a.size, other.a.size)
        pad = lambda c: np.concatenate([c, np.zeros(n - c.size, dtype=complex)])
        return pad(self.a), pad(self.b), pad(other.a), pad(other.b)

    def __add__(self, other):
        if isinstance(other, HarmonicSeries):
            a1, b1, a2, b2 = self._aligned(other)
            return HarmonicSeries(a1 + a2, b1 + b2)
        if np.isscalar(other):
            a = self.a.copy()
            a[0] += other
            return HarmonicSeries(a, self.b)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return HarmonicSeries(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, alpha):
        # alpha * conj(g) = conj(conj(alpha) * g)
        if not np.isscalar(alpha):
            return NotImplemented
        return HarmonicSeries(alpha * self.a, np.conj(alpha) * self.b)

    __rmul__ = __mul__

    def conj(self) -> HarmonicSeries:
        """conj(f) = conj(h) + g: the two parts swap roles."""
        return HarmonicSeries(self.b, self.a)

    def dilate(self, rho: complex) -> HarmonicSeries:
        """Coefficients of z -> f(rho z)."""
        powers = rho ** np.arange(self.a.size)
        return HarmonicSeries(self.a * powers, self.b * powers)

    def __repr__(self):
        return f"HarmonicSeries(a={self.a.tolist()}, b={self.b.tolist()})"


@dataclass(frozen=True, eq=False)
class HarmonicMap(_PointwiseOps):
    """Closed-form ``f = h + conj(g)``; each part is given with two derivatives.

    ``exception_angles`` lists boundary angles where ``f`` blows up; it is a
    declaration carried along for boundary sampling, not something computed.
    """

    h: Callable
    dh: Callable
    d2h: Callable
    g: Callable
    dg: Callable
    d2g: Callable
    label: str = "map"
    exception_angles: tuple = field(default=())

    def _parts(self, z, order=2):
        z = np.asarray(z, dtype=complex)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            if order == 0:
                return self.h(z), self.g(z)
            if order == 1:
                return self.h(z), self.dh(z), self.g(z), self.dg(z)
            return self.h(z), self.dh(z), self.d2h(z), self.g(z), self.dg(z), self.d2g(z)

    def dilate(self, rho: float) -> HarmonicMap:
        """z -> f(rho z).  For 0 < rho < 1 the result has no boundary poles."""
        h, dh, d2h, g, dg, d2g = self.h, self.dh, self.d2h, self.g, self.dg, self.d2g
        return HarmonicMap(
            lambda z: h(rho * z),
            lambda z: rho * dh(rho * z),
            lambda z: rho**2 * d2h(rho * z),
            lambda z: g(rho * z),
            lambda z: rho * dg(rho * z),
            lambda z: rho**2 * d2g(rho * z),
            label=f"{self.label}(rho={rho})",
            exception_angles=(),
        )


# --- builtin maps -------------------------------------------------------------


def ellipse_map(M1: float, M2: float) -> HarmonicSeries:
    """q(z) = 1 + M1 z + M2 conj(z); the image of the disk is an ellipse about 1."""
    return HarmonicSeries([1.0, M1], [0.0, M2], normalized=1.0)


def halfplane_map() -> HarmonicMap:
    """q(z) = (1+z)/(1-z) + conj(z/(1-z)), mapping the disk onto Re w > -1/2."""
    return HarmonicMap(
        h=lambda z: (1 + z) / (1 - z),
        dh=lambda z: 2 / (1 - z) ** 2,
        d2h=lambda z: 4 / (1 - z) ** 3,
        g=lambda z: z / (1 - z),
        dg=lambda z: 1 / (1 - z) ** 2,
        d2g=lambda z: 2 / (1 - z) ** 3,
        label="halfplane",
        exception_angles=(0.0,),
    )


# --- module-level operations ----------------------------------------------------


def evaluate(f, z):
    return f.evaluate(z)


def wirtinger_dz(f, z):
    """df/dz = h'(z)."""
    return f.dz(z)


def wirtinger_dzbar(f, z):
    """df/dzbar = conj(g'(z))."""
    return f.dzbar(z)


def apply_D(f: HarmonicSeries) -> HarmonicSeries:
    n = np.arange(f.a.size)
    return HarmonicSeries(n * f.a, -n * f.b)


def apply_Dfrak(f: HarmonicSeries) -> HarmonicSeries:
    n = np.arange(f.a.size)
    return HarmonicSeries(n * f.a, n * f.b)


def apply_Dn(f: HarmonicSeries, order: int, operator: str = "D") -> HarmonicSeries:
    """Order-``order`` operator via the radial recurrence.

    ``operator="D"`` gives ``Dfrak^(order-1)(D f)``, so ``order=2`` satisfies
    ``D2 f = Df + z^2 h'' - conj(z^2 g'')``; ``operator="Dfrak"`` iterates
    ``Dfrak``.
    """
    if int(order) != order or order < 1:
        raise ValueError(f"order must be an integer >= 1, got {order!r}")
    if operator not in ("D", "Dfrak"):
        raise ValueError(f"operator must be 'D' or 'Dfrak', got {operator!r}")
    n = np.arange(f.a.size, dtype=float) ** int(order)
    sign = -1.0 if operator == "D" else 1.0
    return HarmonicSeries(n * f.a, sign * n * f.b)


def jacobian(f, z):
    return f.jacobian(z)


def dilatation(f, z, eps_div: float = EPS_DIV):
    return f.dilatation(z, eps_div)


def second_order_part(f: HarmonicSeries) -> HarmonicSeries:
    """Series of z^2 h'' - conj(z^2 g'')."""
    n = np.arange(f.a.size)
    k = n * (n - 1)
    return HarmonicSeries(k * f.a, -k * f.b)


# --- series documents -----------------------------------------------------------


def _pairs(c):
    # + 0.0 turns -0.0 into 0.0 so equal series serialize identically
    return [[float(x.real) + 0.0, float(x.imag) + 0.0] for x in c]


def series_to_dict(f: HarmonicSeries) -> dict:
    doc = {"a": _pairs(f.a), "b": _pairs(f.b)}
    if f.normalized is not None:
        doc["normalized"] = [f.normalized.real, f.normalized.imag]
    return doc


def serialize(f: HarmonicSeries) -> str:
    return json.dumps(series_to_dict(f))


def _reject_constant(text):
    def hook(token):
        raise SeriesFormatError(f"non-finite number {token!r} not allowed", position=text.find(token))

    return hook


def _read_coeffs(doc, key):
    if key not in doc:
        raise SeriesFormatError(f"missing field {key!r}")
    raw = doc[key]
    if not isinstance(raw, list):
        raise SeriesFormatError(f"field {key!r} must be a list of [re, im] pairs")
    out = []
    for i, pair in enumerate(raw):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        ):
            raise SeriesFormatError(f"{key}[{i}] is not an [re, im] pair of numbers")
        out.append(complex(pair[0], pair[1]))
    return out


def series_from_dict(doc) -> HarmonicSeries:
    if not isinstance(doc, dict):
        raise SeriesFormatError("series document must be an object")
    a = _read_coeffs(doc, "a")
    b = _read_coeffs(doc, "b")
    if not a or not b:
        raise SeriesFormatError("coefficient arrays must be non-empty")
    if len(a) != len(b):
        raise SeriesFormatError(f"'a' has {len(a)} coefficients but 'b' has {len(b)}")
    norm = doc.get("normalized")
    if norm is not None:
        norm = complex(*norm)
    try:
        return HarmonicSeries(a, b, normalized=norm)
    except ValueError as exc:
        raise SeriesFormatError(str(exc)) from exc


def deserialize(text: str) -> HarmonicSeries:
    try:
        doc = json.loads(text, parse_constant=_reject_constant(text))
    except json.JSONDecodeError as exc:
        raise SeriesFormatError(exc.msg, position=exc.pos) from exc
    return series_from_dict(doc)
