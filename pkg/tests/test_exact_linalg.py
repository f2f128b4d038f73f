"""Dense GF(p) elimination kernels and signed Macaulay matrices."""

import numpy as np
import pytest

from bilinear_gb.core_algebra import (
    AlgebraError,
    PrimeField,
    VariableLayout,
    random_system,
)
from bilinear_gb.exact_linalg import (
    OpCounter,
    Signature,
    macaulay_matrix,
    nullspace,
    rank_dense,
    reduced_row_echelon,
    row_echelon,
    rows_to_polynomials,
)
from bilinear_gb.hilbert_series import hs_closed_form, univariate_hs

F = PrimeField()
P = F.p


def random_rows(nrows, ncols, seed, p=P):
    rng = np.random.Generator(np.random.PCG64(seed))
    return rng.integers(0, p, size=(nrows, ncols), dtype=np.int64)


def np_rank_oracle(A, p):
    """Row reduction with full pivoting freedom, the textbook way."""
    A = A.copy() % p
    r = 0
    for c in range(A.shape[1]):
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        A[[r, r + nz[0]]] = A[[r + nz[0], r]]
        A[r] = A[r] * pow(int(A[r, c]), p - 2, p) % p
        others = np.nonzero(A[r + 1 :, c])[0]
        A[r + 1 + others] = (A[r + 1 + others] - A[r + 1 + others, c][:, None] * A[r]) % p
        r += 1
        if r == A.shape[0]:
            break
    return r


def test_rank_dense_matches_oracle():
    for seed in range(8):
        A = random_rows(12, 9, seed)
        assert rank_dense(A, P) == np_rank_oracle(A, P)
    # rank-deficient: duplicate and scaled rows
    A = random_rows(5, 8, 99)
    B = np.vstack([A, (3 * A[2]) % P, A[0]])
    assert rank_dense(B, P) == np_rank_oracle(B, P)


def fake_matrix(A, degree=1):
    """Wrap a plain integer matrix as a signed Macaulay matrix."""
    from bilinear_gb.exact_linalg import SignedMacaulayMatrix

    lay = VariableLayout(A.shape[1] - 1, 1)
    cols = [m for m in _degree_one(lay, A.shape[1])]
    sigs = [Signature(1, cols[i % len(cols)]) for i in range(A.shape[0])]
    return SignedMacaulayMatrix(cols, A.copy(), sigs, F, degree=degree)


def _degree_one(lay, n):
    from bilinear_gb.core_algebra import enumerate_monomials

    monos = enumerate_monomials(lay, "all", None, 1)
    return monos[:n]


def test_row_echelon_rank_and_row_space():
    for seed in (0, 1, 2):
        A = random_rows(10, 7, seed)
        M = fake_matrix(A)
        res = row_echelon(M)
        assert res.rank == np_rank_oracle(A, P)
        # row space preserved: stacking echelon rows onto A adds no rank
        stacked = np.vstack([A, res.matrix.rows]) % P
        assert np_rank_oracle(stacked, P) == res.rank


def test_row_echelon_no_permutation_semantics():
    # a row equal to an earlier one reduces to zero *in place* and its
    # signature is reported; it never swaps upward
    A = random_rows(4, 6, 5)
    B = np.vstack([A, A[1]])
    M = fake_matrix(B)
    res = row_echelon(M)
    assert len(res.zero_rows) == 1
    idx, sig = res.zero_rows[0]
    assert idx == 4
    assert sig is M.signatures[4]
    assert not res.matrix.rows[4].any()


def test_row_echelon_counts_ops():
    A = random_rows(6, 6, 7)
    c = OpCounter()
    row_echelon(fake_matrix(A), counter=c)
    assert c.ops > 0


def test_reduced_row_echelon_unit_pivot_columns():
    A = random_rows(7, 9, 3)
    res = reduced_row_echelon(fake_matrix(A))
    for col, row in res.pivot_of_col.items():
        colvec = res.matrix.rows[:, col] % P
        assert colvec[row] == 1
        assert np.count_nonzero(colvec) == 1


def test_nullspace_annihilates():
    A = random_rows(5, 9, 13)
    basis = nullspace(A, P)
    assert len(basis) == 9 - np_rank_oracle(A, P)
    for v in basis:
        assert not ((A @ v) % P).any()


def test_macaulay_rank_matches_hilbert_series():
    # rank of the degree-d Macaulay matrix = dim R_d - HF(d)
    lay = VariableLayout(2, 2)
    Fs = random_system(lay, 4, seed=17)
    hs = hs_closed_form(2, 2, 4, (4, 4))
    uni = univariate_hs(hs)
    from bilinear_gb.core_algebra import count_monomials, enumerate_monomials

    for d in (2, 3, 4):
        products = [
            f.mul_term(t)
            for f in Fs.polys
            for t in enumerate_monomials(lay, "all", None, d - 2)
        ]
        M = macaulay_matrix(products, d, lay, F)
        res = row_echelon(M)
        assert res.rank == count_monomials(lay.nvars - 1, d) - uni[d]


def test_macaulay_rejects_wrong_degree():
    lay = VariableLayout(1, 1)
    Fs = random_system(lay, 2, seed=1)
    with pytest.raises(AlgebraError):
        macaulay_matrix(list(Fs.polys), 1, lay, F)


def test_rows_to_polynomials_roundtrip():
    lay = VariableLayout(1, 1)
    Fs = random_system(lay, 2, seed=2)
    M = macaulay_matrix(list(Fs.polys), 2, lay, F)
    polys = rows_to_polynomials(M)
    assert polys[0] == Fs.polys[0]
