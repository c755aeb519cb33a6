import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harmsub import (
    HarmonicSeries,
    NearZeroDenominatorError,
    SeriesFormatError,
    apply_D,
    apply_Dfrak,
    apply_Dn,
    deserialize,
    dilatation,
    ellipse_map,
    evaluate,
    halfplane_map,
    jacobian,
    serialize,
    wirtinger_dz,
    wirtinger_dzbar,
)
from harmsub.series import second_order_part

from conftest import disk_points, series_strategy

Q = ellipse_map(0.8, 0.4)


@pytest.mark.parametrize(
    "f, z, expected",
    [
        (HarmonicSeries([0, 1], [0]), 0.5, 0.5),
        (Q, 1.0, 2.2),
        (Q, 1j, 1 + 0.4j),
        (HarmonicSeries([3 + 1j], [0]), 0.7j, 3 + 1j),
    ],
)
def test_evaluate_examples(f, z, expected):
    assert evaluate(f, z) == pytest.approx(expected, abs=1e-15)


def test_evaluate_outside_closed_disk_rejected():
    with pytest.raises(ValueError):
        Q.evaluate(1.5)


def test_evaluate_vectorized_shape():
    z = np.full((3, 4), 0.5j)
    assert Q.evaluate(z).shape == (3, 4)


@pytest.mark.parametrize(
    "f, z, dz, dzbar",
    [
        (HarmonicSeries([0], [0, 1]), 0.3 - 0.2j, 0, 1),
        (HarmonicSeries([0, 0, 1], [0]), 1.0, 2, 0),
        (Q, 0.3, 0.8, 0.4),
    ],
)
def test_wirtinger_examples(f, z, dz, dzbar):
    assert wirtinger_dz(f, z) == pytest.approx(dz)
    assert wirtinger_dzbar(f, z) == pytest.approx(dzbar)


def test_apply_D_ellipse_map():
    Dq = apply_D(Q)
    np.testing.assert_array_equal(Dq.a, [0, 0.8])
    np.testing.assert_array_equal(Dq.b, [0, -0.4])


@pytest.mark.parametrize("n", [1, 2, 5, 9])
def test_monomial_rule(n):
    zn = HarmonicSeries(np.eye(n + 1)[n], [0])
    conj_zn = HarmonicSeries([0], np.eye(n + 1)[n])
    assert apply_D(zn) == n * zn
    assert apply_D(conj_zn) == HarmonicSeries([0], -n * np.eye(n + 1)[n])
    assert apply_Dfrak(conj_zn) == HarmonicSeries([0], n * np.eye(n + 1)[n])


@pytest.mark.parametrize("alpha, beta", [(1, 0), (0.3 - 2j, 1j), (0, -4)])
def test_Dfrak_fixes_linear_maps(alpha, beta):
    f = HarmonicSeries([0, alpha], [0, np.conj(beta)])
    assert apply_Dfrak(f) == f


def test_apply_Dn_examples():
    assert apply_Dn(Q, 2) == apply_D(Q)
    z2 = HarmonicSeries([0, 0, 1], [0])
    assert apply_Dn(z2, 2) == HarmonicSeries([0, 0, 4], [0])
    zbar = HarmonicSeries([0], [0, 1])
    assert apply_Dn(zbar, 3, "Dfrak") == zbar


@pytest.mark.parametrize("order", [0, -1, 1.5])
def test_apply_Dn_rejects_bad_order(order):
    with pytest.raises(ValueError):
        apply_Dn(Q, order)


def test_apply_Dn_rejects_unknown_operator():
    with pytest.raises(ValueError):
        apply_Dn(Q, 1, "E")


def test_jacobian_and_dilatation_examples():
    z = np.array([0, 0.3j, -0.9, 0.5 + 0.5j])
    np.testing.assert_allclose(jacobian(Q, z), 0.48, atol=1e-15)
    np.testing.assert_allclose(dilatation(Q, z), 0.5)
    ident = HarmonicSeries([0, 1], [0])
    assert jacobian(ident, 0.2) == pytest.approx(1)
    assert dilatation(ident, 0.2) == 0
    assert jacobian(HarmonicSeries([0], [0, 1]), 0.2) == pytest.approx(-1)


def test_dilatation_near_zero_denominator():
    f = HarmonicSeries([0, 0, 0.5], [0, 0, 0.1])
    with pytest.raises(NearZeroDenominatorError) as info:
        dilatation(f, np.array([0.5, 0.0]))
    assert info.value.point == 0


def test_second_order_part_is_D2_minus_D():
    f = HarmonicSeries([1, 2, 3, 4j], [0, 1j, -2, 0.5])
    assert second_order_part(f) == apply_Dn(f, 2) - apply_D(f)


def test_linear_structure():
    f = HarmonicSeries([1, 2], [0, 1j])
    g = HarmonicSeries([0, 0, 1], [0, 0, 2])
    z = 0.3 + 0.4j
    assert (f + g).evaluate(z) == pytest.approx(f.evaluate(z) + g.evaluate(z))
    assert (f - g).evaluate(z) == pytest.approx(f.evaluate(z) - g.evaluate(z))
    assert (f * 2j).evaluate(z) == pytest.approx(2j * f.evaluate(z))
    assert (f + 1).center == 2
    assert f.conj().evaluate(z) == pytest.approx(np.conj(f.evaluate(z)))
    assert f.dilate(0.5).evaluate(z) == pytest.approx(f.evaluate(0.5 * z))


def test_series_is_immutable():
    with pytest.raises(ValueError):
        Q.a[0] = 5
    with pytest.raises(AttributeError):
        Q.a = np.zeros(2)


@pytest.mark.parametrize("a, b", [([], []), ([np.nan], [0]), ([1], [np.inf])])
def test_invalid_coefficients_rejected(a, b):
    with pytest.raises(ValueError):
        HarmonicSeries(a, b)


def test_normalization_flag():
    assert Q.is_normalized()
    assert not HarmonicSeries([2, 1], [0, 0], normalized=1).is_normalized()


@given(series_strategy(), disk_points())
@settings(max_examples=60, deadline=None)
def test_pointwise_operators_match_coefficient_operators(f, z):
    assert f.D_at(z) == pytest.approx(apply_D(f).evaluate(z), abs=1e-12)
    assert f.Dfrak_at(z) == pytest.approx(apply_Dfrak(f).evaluate(z), abs=1e-12)
    # the second-order display equals D applied once and then Dfrak
    assert f.D2_at(z) == pytest.approx(apply_Dfrak(apply_D(f)).evaluate(z), abs=1e-11)
    assert f.D2_at(z) == pytest.approx(apply_Dn(f, 2).evaluate(z), abs=1e-11)


@given(series_strategy(), disk_points(), st.complex_numbers(max_magnitude=3, allow_nan=False))
@settings(max_examples=60, deadline=None)
def test_D_commutes_with_scalars(f, z, alpha):
    assert apply_D(f * alpha).evaluate(z) == pytest.approx(alpha * apply_D(f).evaluate(z), abs=1e-10)


@given(series_strategy(), disk_points())
@settings(max_examples=60, deadline=None)
def test_jacobian_identity(f, z):
    lhs = np.real(f.D_at(z) * np.conj(f.Dfrak_at(z)))
    assert lhs == pytest.approx(abs(z) ** 2 * f.jacobian(z), abs=1e-10)


@given(series_strategy())
@settings(max_examples=60, deadline=None)
def test_serialization_round_trip(f):
    assert deserialize(serialize(f)) == f


def test_round_trip_example_and_normalization():
    g = deserialize(serialize(Q))
    assert g == Q and g.normalized == 1


@pytest.mark.parametrize(
    "text",
    [
        '{"a": [], "b": []}',
        '{"a": [[1, 0]], "b": [[0, 0], [1, 0]]}',
        '{"a": [[NaN, 0]], "b": [[0, 0]]}',
        '{"a": [[1, 0]], "b": [[Infinity, 0]]}',
        '{"a": [[1, 0]]}',
        '{"a": [[1]], "b": [[0, 0]]}',
        '[1, 2]',
    ],
)
def test_deserialize_rejects(text):
    with pytest.raises(SeriesFormatError):
        deserialize(text)


def test_parse_error_carries_position():
    text = '{"a": [[1, 0]], "b": [[0, 0]'
    with pytest.raises(SeriesFormatError) as info:
        deserialize(text)
    assert info.value.position == len(text)
    with pytest.raises(SeriesFormatError) as info:
        deserialize('{"a": [[NaN, 0]], "b": [[0, 0]]}')
    assert info.value.position == 8


def test_serialized_document_shape():
    doc = json.loads(serialize(Q))
    assert doc["a"] == [[1.0, 0.0], [0.8, 0.0]]
    assert doc["b"] == [[0.0, 0.0], [0.4, 0.0]]


def test_halfplane_map_values(rng):
    q = halfplane_map()
    assert q.center == 1
    z = np.sqrt(rng.uniform(0, 0.99**2, 2000)) * np.exp(2j * np.pi * rng.uniform(0, 1, 2000))
    assert np.all(q.evaluate(z).real > -0.5)
    # on the circle away from 1 the real part is exactly -1/2
    zeta = np.exp(1j * np.linspace(0.1, 2 * np.pi - 0.1, 50))
    np.testing.assert_allclose(q.evaluate(zeta).real, -0.5, atol=1e-12)
    assert q.exception_angles == (0.0,)
    assert np.all(q.jacobian(z) > 0)
