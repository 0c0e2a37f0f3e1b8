from __future__ import annotations

import math

import numpy as np
import pytest

from conftest import (
    random_free_support,
    random_tensor,
    random_unitary_triple,
    rng,
    tensor_on_support,
)
from nonfree.moment import (
    HermTriple,
    WeylPoint,
    diagonal_herm_triple,
    diagonal_part,
    infinitesimal_action,
    moment_map,
    off_diagonal_mass,
    spec_point,
)
from nonfree.named import MU_S2_DIAGONALS, MU_S5_DIAGONALS, ness_form_t2, ness_form_t5
from nonfree.tensor import Tensor3, apply, basis_tensor, from_coefficients, norm, zero_tensor


def assert_diagonals(m: HermTriple, expected, atol=1e-12):
    assert off_diagonal_mass(m) <= atol
    for comp, exp in zip(m.components, expected):
        np.testing.assert_allclose(np.diag(comp).real, exp, atol=atol)


def test_ness_representatives_have_unit_norm():
    # Sums of the stored squared coefficients telescope to one exactly.
    assert norm(ness_form_t2()) == pytest.approx(1.0, abs=1e-15)
    assert norm(ness_form_t5()) == pytest.approx(1.0, abs=1e-15)


def test_moment_map_of_s2_matches_stored_diagonals():
    assert_diagonals(moment_map(ness_form_t2()), MU_S2_DIAGONALS)


def test_moment_map_of_s5_matches_stored_diagonals():
    assert_diagonals(moment_map(ness_form_t5()), MU_S5_DIAGONALS)


def test_moment_map_of_uniform_diagonal_tensor():
    n = 3
    t = from_coefficients((n, n, n), {(i, i, i): 1 / math.sqrt(n) for i in range(1, n + 1)})
    assert_diagonals(moment_map(t), [(1 / n,) * n] * 3)


def test_moment_map_rejects_zero_tensor():
    with pytest.raises(ValueError):
        moment_map(zero_tensor((2, 2, 2)))


def test_moment_map_components_are_psd_trace_one():
    gen = rng(10)
    for _ in range(25):
        t = random_tensor(gen, (3, 4, 2))
        m = moment_map(t)
        for comp in m.components:
            assert abs(np.trace(comp).real - 1.0) <= 1e-12
            assert np.linalg.eigvalsh(comp).min() >= -1e-12


def test_moment_map_scale_invariance():
    gen = rng(11)
    for _ in range(10):
        t = random_tensor(gen, (3, 3, 3))
        z = gen.standard_normal() + 1j * gen.standard_normal()
        m1 = moment_map(t)
        m2 = moment_map(Tensor3(z * t.entries))
        for c1, c2 in zip(m1.components, m2.components):
            np.testing.assert_allclose(c1, c2, atol=1e-12)


def test_moment_map_unitary_equivariance():
    gen = rng(12)
    for _ in range(25):
        t = random_tensor(gen, (3, 2, 4))
        k = random_unitary_triple(gen, t.dims)
        m = moment_map(t)
        mk = moment_map(apply(k, t))
        for u, before, after in zip(k.factors, m.components, mk.components):
            np.testing.assert_allclose(after, u @ before @ u.conj().T, atol=1e-10)


def test_free_support_forces_diagonal_moment_map():
    gen = rng(13)
    for _ in range(25):
        supp = random_free_support(gen, (4, 3, 4))
        if len(supp) == 0:
            continue
        t = tensor_on_support(gen, supp)
        assert off_diagonal_mass(moment_map(t)) <= 1e-12


def test_diagonal_part_zeroes_off_diagonals_only():
    ones = np.ones((2, 2))
    m = HermTriple(ones, np.eye(2), np.diag([2.0, -1.0]))
    d = diagonal_part(m)
    np.testing.assert_array_equal(d.h1, np.eye(2))
    np.testing.assert_array_equal(d.h2, np.eye(2))
    np.testing.assert_array_equal(d.h3, np.diag([2.0, -1.0]))


def test_infinitesimal_action_identity_triples_gives_three_t():
    t = random_tensor(rng(14), (2, 3, 2))
    x = HermTriple(np.eye(2), np.eye(3), np.eye(2))
    out = infinitesimal_action(x, t)
    np.testing.assert_allclose(out.entries, 3.0 * t.entries, atol=1e-14)


def test_infinitesimal_action_rank_one_projector():
    t = basis_tensor((3, 3, 3), 1, 1, 1)
    x = diagonal_herm_triple([1.0, 0.0, 0.0], [0.0] * 3, [0.0] * 3)
    out = infinitesimal_action(x, t)
    np.testing.assert_allclose(out.entries, t.entries, atol=1e-14)


def test_infinitesimal_action_of_mu_fixes_s2():
    s2 = ness_form_t2()
    out = infinitesimal_action(moment_map(s2), s2)
    np.testing.assert_allclose(out.entries, (43 / 42) * s2.entries, atol=1e-10)


def test_infinitesimal_action_is_linear():
    gen = rng(15)
    t = random_tensor(gen, (3, 3, 3))
    a = np.diag(gen.standard_normal(3))
    b = np.diag(gen.standard_normal(3))
    x = HermTriple(a, np.zeros((3, 3)), np.zeros((3, 3)))
    y = HermTriple(b, np.zeros((3, 3)), np.zeros((3, 3)))
    xy = HermTriple(a + b, np.zeros((3, 3)), np.zeros((3, 3)))
    lhs = infinitesimal_action(xy, t).entries
    rhs = infinitesimal_action(x, t).entries + infinitesimal_action(y, t).entries
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


def test_spec_point_of_sorted_diagonal_triple_is_its_diagonal():
    m = diagonal_herm_triple([0.5, 0.3, 0.2], [0.6, 0.4], [1.0])
    p = spec_point(m)
    assert p.p1 == pytest.approx((0.5, 0.3, 0.2))
    assert p.p2 == pytest.approx((0.6, 0.4))
    assert p.p3 == pytest.approx((1.0,))


def test_spec_point_invariant_under_unitary_action():
    gen = rng(16)
    for _ in range(20):
        t = random_tensor(gen, (3, 3, 2))
        k = random_unitary_triple(gen, t.dims)
        p = spec_point(moment_map(t))
        pk = spec_point(moment_map(apply(k, t)))
        np.testing.assert_allclose(p.concatenated(), pk.concatenated(), atol=1e-10)


def test_spec_point_of_mu_s5():
    p = spec_point(moment_map(ness_form_t5()))
    for got, exp in zip(p.components, MU_S5_DIAGONALS):
        np.testing.assert_allclose(got, sorted(exp, reverse=True), atol=1e-12)


def test_herm_triple_rejects_non_hermitian():
    with pytest.raises(ValueError):
        HermTriple(np.array([[0.0, 1.0], [0.0, 0.0]]), np.eye(2), np.eye(2))


def test_weyl_point_validation():
    with pytest.raises(ValueError):
        WeylPoint((0.2, 0.8), (1.0, 0.0), (1.0, 0.0))  # increasing
    with pytest.raises(ValueError):
        WeylPoint((0.9, 0.0), (1.0, 0.0), (1.0, 0.0))  # sum != 1
