import numpy as np
import pytest
from hypothesis import given, settings

from sp2curv import (
    E1,
    E2,
    E3,
    SpElement,
    ad_h,
    bi_inner,
    bi_inner_trace_form,
    bracket,
    bracket_oracle,
    norm,
    project_h,
    project_m,
)
from sp2curv.algebra import elements_close, from_matrix, to_matrix

from conftest import coords, element


def test_element_layout_and_views():
    x = element(lam=2.0, u=(1, 2, 3), v=(4, 5, 6), w=(7, 8, 9))
    assert x.lam == 2.0
    np.testing.assert_array_equal(x.u, [1, 2, 3])
    np.testing.assert_array_equal(x.v, [4, 5, 6])
    np.testing.assert_array_equal(x.w, [7, 8, 9])
    with pytest.raises(ValueError):
        x.data[0] = 0.0


def test_membership_predicates():
    assert element(v=E1).in_m()
    assert not element(lam=1.0).in_m()
    assert element(lam=3.0).in_h()
    assert not element(u=E2).in_h()


# ---- frozen structure constants ----


def test_bracket_v_v_lands_in_u():
    out = bracket(element(v=E1), element(v=E2))
    np.testing.assert_allclose(out.data, element(u=E3).data, atol=1e-15)


def test_bracket_v_w_same_direction_spans_h():
    out = bracket(element(v=E1), element(w=E1))
    expected = np.zeros(10)
    expected[0] = 1.0
    np.testing.assert_allclose(out.data, expected, atol=1e-15)


def test_bracket_u_u_is_cross_product():
    out = bracket(element(u=E1), element(u=E2))
    np.testing.assert_allclose(out.data, element(u=E3).data, atol=1e-15)


def test_bracket_h_action_rotates_v_into_w():
    h = element(lam=2.0)
    x = element(u=(1, 1, 0), v=E1, w=E2)
    out = bracket(h, x)
    np.testing.assert_allclose(out.data,
                               element(v=(-2.0) * E2, w=2.0 * E1).data,
                               atol=1e-15)


def test_bracket_mixed_slots():
    # u acts on v and w by cross product from the left.
    out = bracket(element(u=E1), element(v=E2))
    np.testing.assert_allclose(out.data, element(v=E3).data, atol=1e-15)
    out = bracket(element(u=E1), element(w=E3))
    np.testing.assert_allclose(out.data, element(w=-E2).data, atol=1e-15)


# ---- the matrix oracle route ----


def test_matrix_round_trip_exact():
    x = element(lam=0.5, u=(1, -2, 3), v=(0.25, 0, -1), w=(4, 5, -6))
    back = from_matrix(to_matrix(x))
    np.testing.assert_array_equal(back.data, x.data)


def test_oracle_agrees_on_frozen_pair():
    x = element(lam=1.0, u=(1, 0, 2), v=(0, 1, 0), w=(3, 0, 0))
    y = element(lam=-2.0, u=(0, 1, 0), v=(1, 0, 1), w=(0, 0, 2))
    direct = bracket(x, y)
    oracle = bracket_oracle(x, y)
    np.testing.assert_allclose(direct.data, oracle.data, atol=1e-12)


def test_from_matrix_rejects_non_anti_hermitian():
    # With lam != 0 the off-diagonal real parts must be opposite; copying
    # b over c breaks that.
    m = to_matrix(element(lam=2.0, v=E1))
    bad = type(m)(m.a, m.b, m.b, m.d)
    with pytest.raises(ValueError):
        from_matrix(bad)


@settings(max_examples=150, deadline=None)
@given(coords, coords)
def test_oracle_equivalence(xa, ya):
    x, y = SpElement.from_array(xa), SpElement.from_array(ya)
    diff = bracket(x, y).data - bracket_oracle(x, y).data
    assert np.max(np.abs(diff)) <= 1e-12 * max(1.0, norm(x) * norm(y))


# ---- algebraic laws ----


@settings(max_examples=150, deadline=None)
@given(coords, coords)
def test_antisymmetry(xa, ya):
    x, y = SpElement.from_array(xa), SpElement.from_array(ya)
    np.testing.assert_allclose(bracket(x, y).data, -bracket(y, x).data,
                               atol=1e-12)


@settings(max_examples=150, deadline=None)
@given(coords, coords, coords)
def test_jacobi_identity(xa, ya, za):
    x = SpElement.from_array(xa)
    y = SpElement.from_array(ya)
    z = SpElement.from_array(za)
    total = (bracket(x, bracket(y, z)).data
             + bracket(y, bracket(z, x)).data
             + bracket(z, bracket(x, y)).data)
    scale = max(1.0, norm(x) * norm(y) * norm(z))
    assert np.max(np.abs(total)) <= 1e-10 * scale


@settings(max_examples=150, deadline=None)
@given(coords, coords, coords)
def test_inner_product_ad_invariance(xa, ya, za):
    x = SpElement.from_array(xa)
    y = SpElement.from_array(ya)
    z = SpElement.from_array(za)
    lhs = bi_inner(bracket(x, y), z) + bi_inner(y, bracket(x, z))
    scale = max(1.0, norm(x) * norm(y) * norm(z))
    assert abs(lhs) <= 1e-10 * scale


@settings(max_examples=100, deadline=None)
@given(coords)
def test_inner_product_positive_definite(xa):
    x = SpElement.from_array(xa)
    assert bi_inner(x, x) >= 0.0
    assert abs(bi_inner(x, x) - norm(x) ** 2) <= 1e-12 * max(1.0, norm(x) ** 2)


@settings(max_examples=100, deadline=None)
@given(coords, coords)
def test_inner_product_matches_trace_form(xa, ya):
    x, y = SpElement.from_array(xa), SpElement.from_array(ya)
    tr = bi_inner_trace_form(x, y)
    assert abs(bi_inner(x, y) - 2.0 * tr) <= 1e-11 * max(1.0, abs(tr))


def test_inner_product_frozen_value():
    x = element(lam=1.0, u=(1, 2, 0), v=(0, 1, 0), w=(2, 0, 0))
    y = element(lam=3.0, u=(1, 0, 0), v=(0, 2, 0), w=(1, 0, 1))
    assert bi_inner(x, y) == 1.0 * 3.0 + 1.0 + 2.0 + 2.0


# ---- isotropy circle action ----


def test_ad_h_quarter_period_swaps_v_and_w():
    x = element(u=(1, 2, 3), v=E1, w=E2)
    out = ad_h(np.pi / 4.0, x)
    np.testing.assert_allclose(out.data, element(u=(1, 2, 3), v=E2, w=-E1).data,
                               atol=1e-15)


def test_ad_h_rejects_h_component():
    with pytest.raises(ValueError):
        ad_h(0.3, element(lam=1.0, v=E1))


@settings(max_examples=80, deadline=None)
@given(coords, coords)
def test_ad_h_is_bracket_automorphism_on_m(xa, ya):
    s = 0.83
    x = SpElement.from_array(np.concatenate([[0.0], xa[1:]]))
    y = SpElement.from_array(np.concatenate([[0.0], ya[1:]]))
    lhs = bracket(ad_h(s, x), ad_h(s, y))
    # The bracket of two m elements has both m and h parts; the action
    # rotates the m part and fixes h, so transport the full bracket.
    br = bracket(x, y)
    rot = ad_h(s, project_m(br)) + project_h(br)
    scale = max(1.0, norm(x) * norm(y))
    assert np.max(np.abs(lhs.data - rot.data)) <= 1e-12 * scale


def test_ad_h_preserves_inner_product():
    x = element(u=(1, 0, 2), v=(0, 3, 0), w=(1, 1, 1))
    y = element(u=(0, 1, 0), v=(2, 0, 1), w=(0, 2, 0))
    assert abs(bi_inner(ad_h(1.2, x), ad_h(1.2, y)) - bi_inner(x, y)) <= 1e-12


def test_projections_split_identity():
    x = element(lam=2.5, u=(1, 2, 3), v=(4, 5, 6), w=(7, 8, 9))
    np.testing.assert_array_equal((project_m(x) + project_h(x)).data, x.data)
    assert project_m(x).in_m()
    assert project_h(x).in_h()
    assert elements_close(project_m(project_m(x)), project_m(x))
