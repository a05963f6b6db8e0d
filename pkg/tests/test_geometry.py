import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from otlab import forms
from otlab import geometry as geo
from otlab.errors import NoComplexPlace, NotLCKManifold, NotTotallyPositive
from otlab.geometry import PointHC

from conftest import CUBIC_ROOT


def pt(*z, s=1):
    return PointHC(np.array(z, dtype=complex), s)


def test_point_requires_upper_half_plane():
    with pytest.raises(ValueError):
        pt(-1j, 0)


def test_potential_values():
    assert geo.potential(pt(1j, 0)) == 1
    assert geo.potential(pt(2j, 1j, 1, s=2)) == 1.5
    assert geo.potential(pt(2j, 3)) == 9.5


def test_hessian_closed_forms():
    assert np.allclose(geo.kahler_hessian(pt(1j, 0)).matrix, np.diag([0.5, 1]))
    h = geo.kahler_hessian(pt(1j, 1j, 0, s=2)).matrix
    assert np.allclose(h[:2, :2], [[0.5, 0.25], [0.25, 0.5]])
    assert np.allclose(np.linalg.eigvalsh(h[:2, :2]), [0.25, 0.75])


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 2), st.integers(1, 2), st.integers(0, 2**32 - 1))
def test_hessian_matches_finite_differences(s, t, seed):
    p = geo.random_point(np.random.default_rng(seed), s, t, y_range=(0.5, 3.0), x_range=(-2.0, 2.0))
    fd = forms.complex_hessian_fd(lambda z: geo.potential(PointHC(z, s)), p.z, 1e-4)
    closed = geo.kahler_hessian(p).matrix
    assert np.max(np.abs(fd - closed)) <= 1e-6 * max(1.0, np.max(np.abs(closed)))


def test_lck_form_values():
    assert np.allclose(geo.lck_form(pt(1j, 0)).matrix, geo.kahler_hessian(pt(1j, 0)).matrix)
    assert np.allclose(geo.lck_form(pt(2j, 0)).matrix, 2 * geo.kahler_hessian(pt(2j, 0)).matrix)
    with pytest.raises(NotLCKManifold):
        geo.lck_form(pt(1j, 0, 0))


def test_lee_form_components():
    assert np.allclose(geo.lee_form(pt(1j, 1j, 0, s=2)), [0, -1, 0, -1, 0, 0])
    assert geo.lee_form(pt(2j, 0))[1] == -0.5
    assert np.allclose(geo.lee_form_c(pt(2j, 0)), [0.5, 0, 0, 0])


def test_weight_curvature_values():
    assert np.allclose(geo.weight_curvature(pt(1j, 1j, 5, s=2)).matrix, np.diag([1, 1, 0]))
    assert np.allclose(geo.weight_curvature(pt(2j, 0)).matrix, np.diag([0.25, 0]))


def test_classification(cubic, quartic, quintic, sqrt2):
    assert geo.classify(cubic).lck_class == geo.LCK
    assert geo.classify(quartic).lck_class == geo.LCK
    assert geo.classify(quintic).lck_class == geo.NOT_LCK
    with pytest.raises(NoComplexPlace):
        geo.classify(sqrt2)


def test_translation_examples(cubic_ot):
    ot = cubic_ot
    p = pt(1j, 0)
    assert np.array_equal(ot.act_translation(ot.field.zero, p).z, p.z)
    assert np.allclose(ot.act_translation(ot.field.one, p).z, p.z + 1)
    q = ot.act_translation(ot.field.theta, p)
    assert abs(q.z[0] - (CUBIC_ROOT + 1j)) < 1e-15
    assert np.allclose(q.z[1], ot.sigma(ot.field.theta)[1])


def test_dilation_examples(cubic_ot):
    ot = cubic_ot
    p = pt(1j, 1)
    assert np.array_equal(ot.act_dilation(ot.field.one, p).z, p.z)
    q = ot.act_dilation(ot.field.theta, p)
    assert abs(q.z[0] - CUBIC_ROOT * 1j) < 1e-15
    assert abs(q.y[0] - CUBIC_ROOT) < 1e-15


def test_dilation_rejects_non_positive_units(cubic_ot):
    with pytest.raises(NotTotallyPositive):
        cubic_ot.dilation(-cubic_ot.field.theta)
    with pytest.raises(NotTotallyPositive):
        cubic_ot.dilation(cubic_ot.field.scalar(2))


def test_character(cubic_ot):
    ot = cubic_ot
    assert ot.character_chi(ot.field.one) == 1
    assert ot.character_chi(ot.translation(ot.field.theta)) == 1
    assert abs(ot.character_chi(ot.field.theta) - 1 / CUBIC_ROOT) < 1e-15
    assert abs(ot.character_chi(ot.field.theta) - 0.7548776662466927) < 1e-15


def test_identity_pullback_is_exact(cubic_ot):
    ot = cubic_ot
    identity = ot.translation(ot.field.zero)
    res = geo.verify_pullbacks(ot, identity, pt(0.3 + 2j, 1 - 1j))
    assert all(v == 0 for v in res.details.values())


def test_dilation_by_theta_pullbacks(cubic_ot):
    rng = np.random.default_rng(7)
    g = cubic_ot.dilation(cubic_ot.field.theta)
    for _ in range(100):
        res = geo.verify_pullbacks(cubic_ot, g, geo.random_point(rng, 1, 1))
        assert res.passed and res.max_residual < 1e-9


def test_lck_equation_points():
    for p in (pt(1j, 0), pt(10j, 5)):
        res = geo.verify_lck_equation(p, 1e-3)
        assert res.details["d_omega_minus_theta_omega"] < 1e-5
        assert res.details["d_Omega"] < 1e-5


def test_lck_equation_fails_with_opposite_lee_sign():
    # guards the sign choice: theta = -d log phi, not +
    p = pt(1j, 0.5)
    x = forms.to_real(p.z)
    d_omega = forms.d_two_form(geo._real_field(geo.lck_form, 1), x)
    wrong = forms.wedge_1_2(geo.lee_form(p), geo.lck_form(p).to_real())
    assert np.max(np.abs(d_omega - wrong)) > 0.1


def test_weight_identity_constant():
    res = geo.verify_weight_identity(pt(1j, 0))
    assert res.passed
    assert abs(res.details["c0"] - 0.5) < 1e-6
    dtc = forms.real_to_hermitian(forms.d_one_form(lambda x: geo.lee_form_c(PointHC(forms.to_complex(x), 1)),
                                                   forms.to_real(np.array([1j, 0]))))
    assert np.allclose(dtc, np.diag([0.5, 0]), atol=1e-9)


def test_group_element_algebra(cubic_ot):
    ot = cubic_ot
    a, u = ot.field.element([1, -2, 3]), ot.field.theta
    g = ot.translation(a).compose(ot.dilation(u))
    assert g.compose(g.inverse()) == ot.translation(ot.field.zero)
    assert g.inverse().compose(g) == ot.translation(ot.field.zero)
    assert ot.translation(a).is_translation and not g.is_translation
