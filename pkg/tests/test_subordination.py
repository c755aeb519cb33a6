import numpy as np
import pytest

from harmsub import (
    BoundaryMapQ,
    FlatModulusError,
    HarmonicSeries,
    HypothesisViolationError,
    NoCrossingError,
    Resolution,
    analytic_jack_probe,
    builtin_boundary_map,
    check_subordination,
    ellipse_domain,
    ellipse_map,
    jack_probe,
    univalence_probe,
)
from harmsub.subordination import COLLISION, JACOBIAN_VIOLATION, LIKELY, NONE, STRONG, WEAK, JackConfig

from conftest import random_series

Q = ellipse_map(0.8, 0.4)
QB = builtin_boundary_map("ellipse:0.8,0.4")
ELL = ellipse_domain(0.8, 0.4)


@pytest.mark.parametrize(
    "f, status",
    [
        (Q, LIKELY),
        (HarmonicSeries([0], [0, 1]), JACOBIAN_VIOLATION),
        (HarmonicSeries([0, 0, 1], [0]), COLLISION),
    ],
)
def test_univalence_probe(f, status):
    assert univalence_probe(f).status == status


def test_halfplane_map_probe():
    assert univalence_probe(builtin_boundary_map("halfplane").q).ok


def test_subordination_examples():
    assert check_subordination(Q.dilate(0.5), Q, ELL).relation == STRONG
    v = check_subordination(HarmonicSeries([1, 2.4], [0]), Q, ELL)
    assert v.relation == NONE
    assert v.witness.real > 2.2
    assert abs(v.witness - 3.4) < 0.01
    assert check_subordination(HarmonicSeries([1], [0]), Q, ELL).relation == STRONG


def test_weak_when_centers_differ():
    v = check_subordination(HarmonicSeries([1.1, 0.1], [0]), Q, ELL)
    assert v.relation == WEAK
    assert v.center_gap == pytest.approx(0.1)


def test_subordination_requires_univalent_F():
    with pytest.raises(HypothesisViolationError):
        check_subordination(HarmonicSeries([0, 0.1], [0]), HarmonicSeries([0, 0, 1], [0]), ELL)


@pytest.mark.parametrize("n_angles", [64, 128, 512])
def test_composition_with_schwarz_map_is_strong(n_angles):
    # p = q o w with w(z) = z (0.3 + 0.4 z) analytic univalent, w(0) = 0, |w| < 1
    w = lambda z: z * (0.3 + 0.4 * z)
    p = lambda z: Q.evaluate(w(np.asarray(z)))
    v = check_subordination(p, Q, ELL, Resolution(n_angles=n_angles), assume_univalent=True)
    assert v.relation == STRONG


def test_never_strong_with_outside_sample():
    # image just larger than the ellipse along the real axis
    v = check_subordination(HarmonicSeries([1, 0.8 * 1.01], [0, 0.4 * 1.01]), Q, ELL)
    assert v.relation == NONE


def test_jack_probe_on_documented_pair():
    # p(D) is the disk of radius 1.6 about 1; it first leaves the ellipse at the
    # top of the minor axis, r0 = 0.4/1.6, z0 = +-0.25i, zeta0 = +-i.  There
    # Dp = 1.6 z0 = +-0.4i and Dq = 0.8 zeta0 - 0.4 conj(zeta0) = +-1.2i.
    w = jack_probe(HarmonicSeries([1, 1.6], [0]), QB)
    assert w.r0 == pytest.approx(0.25, abs=1e-4)
    assert abs(abs(w.zeta0.imag) - 1) < 1e-4
    assert w.m == pytest.approx(1 / 3, abs=1e-4)
    assert abs(w.lhs_ratio.imag) < 1e-3
    # Re(D2p/Dp) = 1 and Re(D2q/Dq) = 1 at zeta0, so the gap is 1 - m
    assert w.curvature_gap == pytest.approx(2 / 3, abs=1e-4)


def test_jack_probe_analytic_pair_satisfies_lemma():
    # both analytic, so q^{-1} o p is a Schwarz-type map and the lemma applies;
    # the first contact is at zeta0 = -1, z0 = -0.3, where Dp/Dq = -0.3/(-0.5 + 0.4) = 3
    q = BoundaryMapQ(HarmonicSeries([1, 0.5, 0.2], [0]))
    w = jack_probe(HarmonicSeries([1, 1.0], [0]), q)
    assert w.r0 == pytest.approx(0.3, abs=1e-6)
    assert w.m == pytest.approx(3, abs=1e-6)
    assert w.satisfies_lemma()


def test_jack_probe_trivial_cases():
    assert jack_probe(Q.dilate(0.5), QB) is None
    same = BoundaryMapQ(HarmonicSeries([1, 1], [0]))
    with pytest.raises(NoCrossingError):
        jack_probe(HarmonicSeries([1, 1], [0]), same)
    with pytest.raises(ValueError):
        jack_probe(HarmonicSeries([1], [0]), QB)
    with pytest.raises(HypothesisViolationError):
        jack_probe(HarmonicSeries([2, 1], [0]), QB)


def test_jack_probe_resolution_refinement_keeps_witness():
    p = HarmonicSeries([1, 1.6], [0])
    a = jack_probe(p, QB, JackConfig(n_angles=512))
    b = jack_probe(p, QB, JackConfig(n_angles=1024))
    assert a.m == pytest.approx(b.m, abs=1e-4)


@pytest.mark.parametrize("n", [1, 2, 5])
@pytest.mark.parametrize("r0", [0.3, 0.9])
def test_analytic_probe_monomials(n, r0):
    res = analytic_jack_probe(HarmonicSeries(np.eye(n + 1)[n], [0]), r0)
    assert res.m == n and res.curvature == pytest.approx(n)


def test_analytic_probe_examples():
    res = analytic_jack_probe(HarmonicSeries([0, 1, 0.5], [0]), 0.9)
    z = 0.9
    assert res.theta0 == pytest.approx(0, abs=1e-8)
    assert res.m == pytest.approx(((z + z * z) / (z + 0.5 * z * z)), abs=1e-8)
    assert res.m == pytest.approx(1.3103448, abs=1e-6)
    assert res.curvature >= res.m
    res = analytic_jack_probe(HarmonicSeries([0, 1, 0, 0, 0.3], [0]), 0.8)
    assert res.m >= 1 and abs(res.im_ratio) < 1e-8


def test_analytic_probe_flat_modulus():
    # |1 + z| is not constant, but |e^{i theta}| is; the non-monomial flat case
    # needs a real-constant ratio, which only monomials give
    with pytest.raises((FlatModulusError, ValueError)):
        analytic_jack_probe(HarmonicSeries([0, 1], [0, 1]), 0.5)


@pytest.mark.parametrize("seed", range(10))
def test_analytic_probe_on_random_series(seed):
    rng = np.random.default_rng(seed)
    f = random_series(rng, analytic=True, a0=0.0)
    res = analytic_jack_probe(f, 0.9)
    assert res.m >= 1 - 1e-6
    assert res.curvature >= res.m - 1e-4
