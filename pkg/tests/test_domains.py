import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harmsub import (
    BoundaryMapQ,
    DegenerateBoundaryError,
    Disk,
    Ellipse,
    HalfPlane,
    HarmonicSeries,
    JordanImage,
    boundary_samples,
    builtin_boundary_map,
    ellipse_domain,
    ellipse_map,
    halfplane_map,
    image_of_disk,
    jordan_domain,
)
from harmsub.domains import INSIDE, OUTSIDE, UNCERTAIN, domain_from_dict, winding_number

Q = ellipse_map(0.8, 0.4)
SQUARE = np.concatenate(
    [np.linspace(0, 1, 5)[:-1], 1 + 1j * np.linspace(0, 1, 5)[:-1], 1j + np.linspace(1, 0, 5)[:-1], 1j * np.linspace(1, 0, 5)[:-1]]
)


def test_contains_examples():
    hp = HalfPlane(-0.5)
    assert hp.contains(0) and not hp.contains(-1)
    el = Ellipse(1, 1.2, 0.4)
    assert el.contains(1) and not el.contains(2.5)
    assert JordanImage(SQUARE).contains(0.5 + 0.5j)


def test_classify_is_three_valued():
    d = Disk(0, 1)
    w = np.array([0.5, 1.0, 1 + 1e-12, 2.0, 1 - 1e-10])
    np.testing.assert_array_equal(d.classify(w), [INSIDE, UNCERTAIN, UNCERTAIN, OUTSIDE, UNCERTAIN])


@pytest.mark.parametrize("bad", [dict(center=0, radius=0), dict(center=0, radius=-1)])
def test_disk_rejects_bad_radius(bad):
    with pytest.raises(ValueError):
        Disk(**bad)


def test_ellipse_rejects_bad_axes():
    with pytest.raises(ValueError):
        Ellipse(0, 1, 2)


def _brute_ellipse_distance(w, c, a, b, n=200001):
    t = np.linspace(0, 2 * np.pi, n)
    pts = c + a * np.cos(t) + 1j * b * np.sin(t)
    return np.min(np.abs(w - pts))


@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(0.2, 2), st.floats(0.05, 1))
@settings(max_examples=40, deadline=None)
def test_ellipse_distance_matches_brute_force(x, y, a, ratio):
    b = a * ratio
    el = Ellipse(0.5, a, b)
    w = x + 1j * y
    d = abs(float(el.signed_distance(w)))
    assert d == pytest.approx(_brute_ellipse_distance(w, 0.5, a, b), abs=1e-6)


@given(st.floats(-3, 3), st.floats(-3, 3))
@settings(max_examples=40, deadline=None)
def test_distance_bounds_bracket_distance(x, y):
    for dom in (Ellipse(1, 1.2, 0.4), Disk(0.3j, 0.7), HalfPlane(-0.5)):
        w = np.array([x + 1j * y])
        lo, hi = dom.distance_bounds(w)
        d = dom.signed_distance(w)
        assert lo[0] - 1e-12 <= d[0] <= hi[0] + 1e-12


def test_jordan_validation():
    with pytest.raises(ValueError):
        JordanImage(SQUARE[:8])
    bowtie = np.concatenate([np.linspace(0, 1 + 1j, 8), 1 + np.linspace(1j, 0, 8)[1:], np.linspace(1, 1j, 8)[1:-1]])
    with pytest.raises(ValueError):
        JordanImage(bowtie)
    with pytest.raises(ValueError):
        JordanImage(np.append(SQUARE, np.nan))


def test_winding_agrees_with_closed_form(rng):
    t = 2 * np.pi * np.arange(512) / 512
    poly = 1 + 1.2 * np.cos(t) + 0.4j * np.sin(t)
    jordan = JordanImage(poly)
    el = Ellipse(1, 1.2, 0.4)
    w = rng.uniform(-0.5, 2.5, 4000) + 1j * rng.uniform(-0.6, 0.6, 4000)
    chord = np.max(np.abs(np.diff(np.append(poly, poly[0]))))
    away = np.abs(el.signed_distance(w)) > 2 * chord
    np.testing.assert_array_equal(jordan.contains(w)[away], el.contains(w)[away])
    assert np.all(np.abs(winding_number(w[away], poly)) <= 1)


def test_domain_dict_round_trip():
    for dom in (HalfPlane(-0.5), Disk(1 + 1j, 2), Ellipse(1, 1.2, 0.4), JordanImage(SQUARE)):
        again = domain_from_dict(dom.to_dict())
        w = np.array([0.5 + 0.5j, 3, -1, 1.1])
        np.testing.assert_array_equal(again.contains(w), dom.contains(w))
    with pytest.raises(ValueError):
        domain_from_dict({"kind": "annulus"})


def test_boundary_samples_ellipse():
    bs = boundary_samples(BoundaryMapQ(Q), 8)
    assert len(bs) == 8 and bs.n_excluded == 0
    np.testing.assert_allclose(bs.Dq, 0.8 * bs.zeta - 0.4 * np.conj(bs.zeta))
    assert np.all(np.abs(bs.Dq) >= 0.4 - 1e-12)
    with pytest.raises(ValueError):
        boundary_samples(BoundaryMapQ(Q), 4)


def test_boundary_samples_halfplane_avoid_exception():
    bq = builtin_boundary_map("halfplane")
    bs = boundary_samples(bq, 512)
    gap = np.abs((bs.theta + np.pi) % (2 * np.pi) - np.pi)
    assert np.min(gap) > bq.exclusion_radius
    assert bs.n_excluded == 1 and np.all(np.isfinite(bs.Dq))
    assert all(bq.check_exception_set().values())


def test_degenerate_boundary():
    # Dq vanishes on the whole circle for a constant map
    with pytest.raises(DegenerateBoundaryError):
        boundary_samples(BoundaryMapQ(HarmonicSeries([1], [0])), 64)
    wide = BoundaryMapQ(halfplane_map(), (0.0,), exclusion_radius=2.0)
    with pytest.raises(DegenerateBoundaryError):
        boundary_samples(wide, 64)


def test_image_of_disk_ellipse_extremes():
    img = image_of_disk(Q, n_boundary=512)
    assert img.boundary.real.max() == pytest.approx(2.2, abs=1e-12)
    assert img.boundary.real.min() == pytest.approx(-0.2, abs=1e-12)
    assert np.abs(img.boundary.imag).max() == pytest.approx(0.4, abs=1e-12)
    el = ellipse_domain(0.8, 0.4)
    assert np.all(el.contains(img.interior))
    implicit = ((img.boundary.real - 1) / 1.2) ** 2 + (img.boundary.imag / 0.4) ** 2 - 1
    assert np.max(np.abs(implicit)) < 1e-9


def test_image_of_identity_is_unit_circle():
    img = image_of_disk(HarmonicSeries([0, 1], [0]), n_boundary=64)
    np.testing.assert_allclose(np.abs(img.boundary), 1)


def test_halfplane_image_and_jordan_domain():
    bq = builtin_boundary_map("halfplane")
    img = image_of_disk(bq, n_boundary=2048)
    np.testing.assert_allclose(img.boundary.real, -0.5, atol=1e-9)
    assert img.interior.real.min() == pytest.approx(-0.5, abs=0.05)
    jd = jordan_domain(bq, 2048, validate=True)
    w = np.array([0, 1 + 50j, 3, -0.4 + 10j, -0.6, -2 + 1j])
    np.testing.assert_array_equal(jd.contains(w), HalfPlane(-0.5).contains(w))


def test_builtin_names():
    assert isinstance(builtin_boundary_map("ellipse:0.8,0.4").domain, Ellipse)
    for bad in ("ellipse:0.4,0.8", "ellipse:1", "disk", "halfplane:2"):
        with pytest.raises(ValueError):
            builtin_boundary_map(bad)


def test_dilate_clears_exception_set():
    bq = builtin_boundary_map("halfplane").dilate(0.9)
    assert bq.exception_angles == ()
    bs = boundary_samples(bq, 64)
    assert bs.n_excluded == 0 and np.all(np.isfinite(bs.q))


def test_sense_preservation_of_ellipse_map(rng):
    z = np.sqrt(rng.uniform(0, 1, 500)) * np.exp(2j * np.pi * rng.uniform(0, 1, 500))
    np.testing.assert_allclose(Q.jacobian(z), 0.8**2 - 0.4**2)


@pytest.mark.parametrize("y", [0.0, 1e-19, 1e-52, 1e-13])
def test_ellipse_distance_near_major_axis(y):
    # interior points close to the major axis have their nearest boundary point off-axis
    el = Ellipse(0.5, 1.0, 0.5)
    w = 0.5 + 0.5 + 1j * y
    assert abs(float(el.signed_distance(w))) == pytest.approx(_brute_ellipse_distance(w, 0.5, 1.0, 0.5), abs=1e-6)


def test_jordan_image_matches_reference_geometry(rng):
    from harmsub.domains import polyline_distance

    t = 2 * np.pi * np.arange(300) / 300
    poly = (1 + 0.3 * np.cos(3 * t)) * np.exp(1j * t)
    jordan = JordanImage(poly)
    w = rng.uniform(-1.5, 1.5, 3000) + 1j * rng.uniform(-1.5, 1.5, 3000)
    np.testing.assert_array_equal(jordan.contains(w), winding_number(w, poly) != 0)
    np.testing.assert_allclose(np.abs(jordan.signed_distance(w)), polyline_distance(w, poly), atol=1e-12)
    lo, hi = jordan.distance_bounds(w)
    d = jordan.signed_distance(w)
    assert np.all(lo <= d + 1e-12) and np.all(d <= hi + 1e-12)
