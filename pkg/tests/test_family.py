from __future__ import annotations

from fractions import Fraction as F

import pytest

from nonfree.family import family_data, family_to_doc, gamma_support, halfspace_check
from nonfree.supports import is_free_support


def test_gamma_3_listing():
    expected = {(1, 3, 1), (1, 3, 2), (1, 2, 3), (2, 2, 1), (2, 2, 2), (2, 1, 3), (3, 1, 1), (3, 1, 2)}
    assert gamma_support(3).triples == expected


def test_gamma_2_is_w_state_support():
    assert gamma_support(2).triples == {(1, 1, 2), (1, 2, 1), (2, 1, 1)}


def test_gamma_size_is_n_squared_minus_one():
    for n in range(2, 11):
        assert len(gamma_support(n)) == n * n - 1


def test_gamma_rejects_small_n():
    with pytest.raises(ValueError):
        gamma_support(1)


def test_family_data_n3_exact_values():
    data = family_data(3)
    assert data.c == F(1, 3)
    assert data.norm_h_sq == F(14, 3)
    q12 = (F(17, 42), F(1, 3), F(11, 42))
    assert data.q == (q12, q12, (F(5, 14), F(5, 14), F(2, 7)))
    assert data.b == (F(1, 7), F(1, 7), F(0))
    assert data.lambda_W == F(5, 14)
    assert data.w_sq == (F(2, 21), F(1, 6), F(2, 21))
    assert data.d == (F(11, 42), F(4, 21), F(11, 42))
    assert data.q_norm_sq == F(43, 42)
    assert data.ness_lambda == F(43, 42)


def test_family_identities_hold_exactly_for_all_desk_sizes():
    # family_data raises FamilyInvariantError if any identity fails.
    for n in range(2, 13):
        data = family_data(n)
        assert data.b[n - 1] == 0
        assert sum(data.b, F(0)) == data.q[2][n - 1]
        assert data.q_norm_sq == F(3, n) + data.c ** 2 / data.norm_h_sq


def test_q_is_orthogonal_projection_onto_halfspace_boundary():
    for n in (2, 3, 5, 8):
        data = family_data(n)
        pairing = sum(
            (hx * qx for hi, qi in zip(data.h, data.q) for hx, qx in zip(hi, qi)), F(0)
        )
        assert pairing == data.c
        # q - (u|u|u) is a scalar multiple of h, exactly.
        scale = data.c / data.norm_h_sq
        for hi, qi in zip(data.h, data.q):
            assert all(qx - F(1, n) == scale * hx for hx, qx in zip(hi, qi))


def test_halfspace_vertex_examples_n3():
    data = family_data(3)
    h1, h2, h3 = data.h
    assert h1[0] + h2[1] + h3[2] == F(1, 3)  # vertex (1,2,3), equality
    assert h1[0] + h2[0] + h3[0] == F(7, 3)  # vertex (1,1,1), strict


def test_halfspace_equality_set_is_gamma():
    for n in range(2, 11):
        report = halfspace_check(n)
        assert report.valid
        assert report.min_value == report.c
        assert report.equals_gamma
        assert report.equality_set.triples == gamma_support(n).triples


def test_gamma_freeness_transition():
    assert is_free_support(gamma_support(2)).verdict
    for n in range(3, 8):
        assert not is_free_support(gamma_support(n)).verdict


def test_family_doc_serializes_rationals_as_strings():
    doc = family_to_doc(family_data(3))
    assert doc["c"] == {"num": "1", "den": "3"}
    assert doc["q"][2][0] == {"num": "5", "den": "14"}
    assert doc["lambda_W"] == {"num": "5", "den": "14"}
