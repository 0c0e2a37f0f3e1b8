from __future__ import annotations

import math

import numpy as np
import pytest

from conftest import random_group_triple, random_tensor, random_unitary_triple, rng
from nonfree.tensor import (
    DimensionMismatchError,
    Tensor3,
    TensorFormatError,
    apply,
    basis_tensor,
    compose,
    diagonal_triple,
    flattening,
    flattening_ranks,
    from_coefficients,
    identity_triple,
    inner,
    norm,
    permutation_triple,
    support,
    support_set,
    tensor_from_doc,
    tensor_to_doc,
    zero_tensor,
)


def test_identity_action_is_identity():
    t = random_tensor(rng(0), (3, 4, 2))
    out = apply(identity_triple(t.dims), t)
    np.testing.assert_allclose(out.entries, t.entries, atol=1e-14)


def test_permutation_action_moves_basis_tensor():
    t = basis_tensor((3, 3, 3), 1, 2, 3)
    g = permutation_triple((3, 3, 3), [2, 3, 1], [1, 3, 2], [3, 2, 1])
    out = apply(g, t)
    assert out[2, 3, 1] == pytest.approx(1.0)
    assert norm(out) == pytest.approx(1.0)


def test_group_action_composes():
    gen = rng(1)
    for _ in range(20):
        t = random_tensor(gen, (3, 2, 4))
        g = random_group_triple(gen, t.dims)
        h = random_group_triple(gen, t.dims)
        lhs = apply(g, apply(h, t))
        rhs = apply(compose(g, h), t)
        assert norm(Tensor3(lhs.entries - rhs.entries)) <= 1e-12 * norm(rhs)


def test_unitary_action_preserves_norm():
    gen = rng(2)
    for _ in range(20):
        t = random_tensor(gen, (4, 3, 3))
        k = random_unitary_triple(gen, t.dims)
        assert abs(norm(apply(k, t)) - norm(t)) <= 1e-12 * norm(t)


def test_diagonal_action_preserves_support():
    gen = rng(3)
    for _ in range(20):
        t = random_tensor(gen, (3, 3, 3))
        d = diagonal_triple(
            gen.standard_normal(3) + 2.5, gen.standard_normal(3) + 2.5, gen.standard_normal(3) + 2.5
        )
        assert support(apply(d, t), 0.0).triples == support(t, 0.0).triples


def test_flattening_rank_invariant_under_group_action():
    gen = rng(4)
    for _ in range(10):
        t = random_tensor(gen, (3, 3, 3))
        g = random_group_triple(gen, t.dims)
        assert flattening_ranks(apply(g, t)) == flattening_ranks(t)


def test_flattening_of_basis_tensor():
    t = basis_tensor((2, 2, 2), 1, 1, 1)
    f = flattening(t, 1)
    assert f.shape == (2, 4)
    expected = np.zeros((2, 4))
    expected[0, 0] = 1.0
    np.testing.assert_array_equal(f, expected)


def test_flattening_of_diagonal_tensor_has_orthogonal_rows():
    n = 3
    t = from_coefficients((n, n, n), {(i, i, i): 1 / math.sqrt(n) for i in range(1, n + 1)})
    for factor in (1, 2, 3):
        f = flattening(t, factor)
        gram = f @ f.conj().T
        np.testing.assert_allclose(gram, np.eye(n) / n, atol=1e-14)


def test_support_of_t2_lists_its_six_triples():
    from nonfree.named import tensor_t2

    assert support(tensor_t2(), 0.0).triples == {
        (1, 2, 3), (1, 3, 2), (2, 1, 3), (2, 2, 1), (2, 2, 2), (3, 1, 1),
    }


def test_support_of_zero_tensor_is_empty():
    assert len(support(zero_tensor((2, 3, 2)), 0.0)) == 0


def test_support_relative_tolerance():
    t = from_coefficients((2, 2, 2), {(1, 1, 1): 1.0, (2, 2, 2): 1e-12})
    assert support(t).triples == {(1, 1, 1)}
    assert support(t, 0.0).triples == {(1, 1, 1), (2, 2, 2)}


def test_inner_product_is_sesquilinear_and_matches_norm():
    gen = rng(5)
    s = random_tensor(gen, (2, 3, 2))
    t = random_tensor(gen, (2, 3, 2))
    assert inner(t, t) == pytest.approx(norm(t) ** 2)
    z = 0.7 - 1.3j
    assert inner(Tensor3(z * s.entries), t) == pytest.approx(np.conj(z) * inner(s, t))
    assert inner(s, Tensor3(z * t.entries)) == pytest.approx(z * inner(s, t))


def test_inner_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        inner(zero_tensor((2, 2, 2)), zero_tensor((2, 2, 3)))


def test_apply_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        apply(identity_triple((2, 2, 2)), zero_tensor((3, 3, 3)))


def test_json_roundtrip():
    gen = rng(6)
    t = random_tensor(gen, (2, 3, 4))
    doc = tensor_to_doc(t)
    back = tensor_from_doc(doc)
    np.testing.assert_array_equal(back.entries, t.entries)


def test_json_omitted_entries_are_zero():
    doc = {"dims": [2, 2, 2], "entries": [{"i": 1, "j": 2, "k": 1, "re": 0.5, "im": -1.0}]}
    t = tensor_from_doc(doc)
    assert t[1, 2, 1] == 0.5 - 1.0j
    assert t[1, 1, 1] == 0.0


def test_json_duplicate_entry_rejected():
    doc = {
        "dims": [2, 2, 2],
        "entries": [
            {"i": 1, "j": 1, "k": 1, "re": 1.0, "im": 0.0},
            {"i": 1, "j": 1, "k": 1, "re": 2.0, "im": 0.0},
        ],
    }
    with pytest.raises(TensorFormatError):
        tensor_from_doc(doc)


def test_json_out_of_range_index_rejected():
    doc = {"dims": [2, 2, 2], "entries": [{"i": 3, "j": 1, "k": 1, "re": 1.0, "im": 0.0}]}
    with pytest.raises(TensorFormatError):
        tensor_from_doc(doc)


def test_support_set_range_validation():
    with pytest.raises(ValueError):
        support_set((2, 2, 2), [(3, 1, 1)])


def test_support_rejects_negative_tolerance():
    with pytest.raises(ValueError):
        support(zero_tensor((2, 2, 2)), -1.0)
