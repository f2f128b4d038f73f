"""Determinants, maximal-minor Groebner bases, and kernel vectors of
linear-form matrices."""

import pytest

from bilinear_gb.core_algebra import (
    AlgebraError,
    PrimeField,
    VariableLayout,
)
from bilinear_gb.f5_engine import buchberger, normal_form
from bilinear_gb.minors import (
    PolyMatrix,
    apply_left,
    bareiss_det,
    check_kernel_conjecture,
    det_poly,
    expected_minor_lead_monomials,
    extension_patterns,
    kernel_vector,
    maximal_minors,
    minors_gb,
    predicted_minor_count,
    random_linear_matrix,
    witness_lead_monomials,
    witness_matrix,
)

F = PrimeField()


def test_det_matches_bareiss():
    lay = VariableLayout(3, 2)
    for seed in range(6):
        M = random_linear_matrix(3, 3, lay, seed)
        assert det_poly(M) == bareiss_det(M)


def test_det_alternating():
    lay = VariableLayout(3, 2)
    M = random_linear_matrix(4, 3, lay, 5)
    swapped = M.submatrix([1, 0, 2])
    straight = M.submatrix([0, 1, 2])
    assert det_poly(swapped) == -det_poly(straight)
    doubled = M.submatrix([0, 0, 2])
    assert det_poly(doubled).is_zero()


def test_witness_matrix_is_banded():
    W = witness_matrix(5, 3)
    for i in range(5):
        for j in range(3):
            e = W.entries[i][j]
            if 0 <= i - j <= 2:
                assert not e.is_zero()
                assert e.lm.exps[i - j] == 1
            else:
                assert e.is_zero()


@pytest.mark.parametrize("shape", [(3, 2), (4, 2), (4, 3), (5, 3)])
def test_witness_minors_gb_shape(shape):
    ell, c = shape
    W = witness_matrix(ell, c)
    mg = minors_gb(W)
    assert mg.is_generic
    assert set(mg.lead_monomials) == set(witness_lead_monomials(ell, c, W.layout))
    assert len(mg.lead_monomials) == predicted_minor_count(ell, c)


@pytest.mark.parametrize("shape", [(3, 2), (4, 3)])
def test_random_minors_gb_shape_and_ideal(shape):
    ell, c = shape
    lay = VariableLayout(max(ell - c, 2), 2)
    for seed in range(4):
        M = random_linear_matrix(ell, c, lay, seed)
        mg = minors_gb(M)
        assert mg.is_generic
        assert set(mg.lead_monomials) == set(expected_minor_lead_monomials(M))
        # same ideal as the raw minors, per the Buchberger oracle
        G = buchberger(maximal_minors(M))
        assert set(G.lm_set()) == set(mg.lead_monomials)
        for f in mg.polys:
            assert normal_form(f, G).is_zero()


def test_predicted_minor_count_values():
    # number of degree-(ell-c) monomials in x_0..x_c
    assert predicted_minor_count(3, 2) == 3
    assert predicted_minor_count(4, 2) == 6
    assert predicted_minor_count(4, 3) == 4
    assert predicted_minor_count(5, 3) == 10


def test_extension_patterns_count():
    import math

    for ell, c in [(4, 2), (5, 3), (6, 3)]:
        pats = list(extension_patterns(ell, c))
        assert len(pats) == math.comb(ell, ell - c - 1)
        assert len(set(pats)) == len(pats)


def test_kernel_vector_annihilates():
    lay = VariableLayout(3, 3)
    for seed in (1, 2):
        M = random_linear_matrix(4, 2, lay, seed)
        for pat in extension_patterns(4, 2):
            v = kernel_vector(M, pat)
            assert any(not e.is_zero() for e in v)
            assert all(f.is_zero() for f in apply_left(v, M))


@pytest.mark.parametrize("shape", [(3, 2, 2), (4, 3, 3)])
def test_kernel_conjecture_small(shape):
    ell, c, n_x = shape
    lay = VariableLayout(n_x, 2)
    for seed in (1, 2, 3):
        M = random_linear_matrix(ell, c, lay, seed)
        kc = check_kernel_conjecture(M)
        assert kc.holds, kc.note


def test_poly_matrix_validation():
    lay = VariableLayout(2, 2)
    M = random_linear_matrix(3, 2, lay, 0)
    assert M.is_linear()
    with pytest.raises(AlgebraError):
        PolyMatrix([[M.entries[0][0]], [M.entries[1][0], M.entries[1][1]]], lay, F)
