"""Dense exact linear algebra over GF(p) for Macaulay-style matrices.

Two elimination routines live here on purpose: `row_echelon` never permutes
rows (row k may only be reduced by rows above it, which is what gives zero
rows their meaning), while `rank_dense` is a fast partial-pivoting
elimination used as an independent cross-check and for bulk rank queries.
"""

import numpy as np

from .core_algebra import (
    AlgebraError,
    Monomial,
    Polynomial,
    enumerate_monomials,
)


class OpCounter:
    """Counts field multiply-accumulate operations in the dense row model."""

    def __init__(self):
        self.ops = 0

    def add(self, n):
        self.ops += n


class Signature:
    """Module signature (monomial, generator index); generator index dominates."""

    __slots__ = ("index", "monomial")

    def __init__(self, index, monomial):
        self.index = index
        self.monomial = monomial

    @property
    def key(self):
        return (self.index, self.monomial.key)

    def __eq__(self, other):
        return (
            isinstance(other, Signature)
            and other.index == self.index
            and other.monomial == self.monomial
        )

    def __hash__(self):
        return hash((self.index, self.monomial))

    def __lt__(self, other):
        return self.key < other.key

    def __repr__(self):
        return "Signature(i=%d, %r)" % (self.index, self.monomial.exps)


class SignedMacaulayMatrix:
    """Rows = coefficient vectors tagged with signatures; columns = monomials."""

    def __init__(self, columns, rows, signatures, field, degree=None):
        self.columns = list(columns)
        self.col_index = {m: j for j, m in enumerate(self.columns)}
        self.rows = np.asarray(rows, dtype=np.int64).reshape(
            len(signatures), len(self.columns)
        )
        self.signatures = list(signatures)
        self.field = field
        self.degree = degree

    @property
    def shape(self):
        return self.rows.shape

    def row_poly(self, i):
        r = self.rows[i]
        nz = np.nonzero(r)[0]
        return Polynomial(
            [(self.columns[j], int(r[j])) for j in nz], self.field
        )


def poly_to_row(f, col_index, ncols):
    row = np.zeros(ncols, dtype=np.int64)
    for m, c in f.terms:
        try:
            row[col_index[m]] = c
        except KeyError:
            raise AlgebraError("monomial outside the column span") from None
    return row


def macaulay_matrix(polys, degree, layout, field):
    """One row per polynomial, signature (1, position); columns are all
    degree-`degree` monomials over the layout, descending grevlex."""
    columns = enumerate_monomials(layout, "all", None, degree)
    col_index = {m: j for j, m in enumerate(columns)}
    one = Monomial.one(layout.nvars)
    rows = np.zeros((len(polys), len(columns)), dtype=np.int64)
    sigs = []
    for k, f in enumerate(polys):
        if not f.is_homogeneous(degree):
            raise AlgebraError("row %d is not homogeneous of degree %d" % (k, degree))
        rows[k] = poly_to_row(f, col_index, len(columns))
        sigs.append(Signature(k + 1, one))
    return SignedMacaulayMatrix(columns, rows, sigs, field, degree)


class EchelonResult:
    """Echelonized matrix plus which input rows vanished."""

    def __init__(self, matrix, zero_rows, pivot_of_col, lead_col_of_row):
        self.matrix = matrix
        self.zero_rows = zero_rows  # list of (row_index, Signature)
        self.pivot_of_col = pivot_of_col  # col -> row index
        self.lead_col_of_row = lead_col_of_row  # row -> col or -1

    @property
    def rank(self):
        return len(self.pivot_of_col)

    def lead_monomials(self):
        cols = self.matrix.columns
        return [
            cols[c] for c in self.lead_col_of_row if c >= 0
        ]


def _lead(row, start=0):
    nz = np.nonzero(row[start:])[0]
    return int(nz[0]) + start if nz.size else -1


def row_echelon(M, counter=None):
    """Echelonize without permuting rows: row k is reduced only by the
    pivot rows found among rows 0..k-1, then made monic."""
    field = M.field
    p = field.p
    A = M.rows % p
    ncols = A.shape[1]
    pivot_of_col = {}
    lead_col_of_row = []
    zero_rows = []
    for k in range(A.shape[0]):
        row = A[k]
        lead = _lead(row)
        while lead >= 0 and lead in pivot_of_col:
            c = row[lead]
            row -= c * A[pivot_of_col[lead]]
            row %= p
            if counter is not None:
                counter.add(ncols - lead)
            lead = _lead(row, lead)
        if lead < 0:
            zero_rows.append((k, M.signatures[k]))
            lead_col_of_row.append(-1)
            continue
        inv = field.inv(int(row[lead]))
        row *= inv
        row %= p
        if counter is not None:
            counter.add(ncols - lead)
        pivot_of_col[lead] = k
        lead_col_of_row.append(lead)
    out = SignedMacaulayMatrix(M.columns, A, M.signatures, field, M.degree)
    return EchelonResult(out, zero_rows, pivot_of_col, lead_col_of_row)


def reduced_row_echelon(M, counter=None):
    """Full reduction: after the forward pass, clear entries above pivots."""
    res = row_echelon(M, counter)
    A = res.matrix.rows
    p = M.field.p
    for col, r in sorted(res.pivot_of_col.items()):
        mask = A[:, col].copy()
        mask[r] = 0
        nz = np.nonzero(mask)[0]
        for i in nz:
            A[i] -= A[i, col] * A[r]
            A[i] %= p
            if counter is not None:
                counter.add(A.shape[1] - col)
    return res


def rank_dense(rows, p):
    """Rank over GF(p) by partial-pivoting elimination (rows may permute).

    Entries are kept unreduced between pivot steps; magnitudes stay below
    k * p^2 after k steps, far inside int64 for any desk-size matrix.
    """
    A = np.array(rows, dtype=np.int64) % p
    nrows, ncols = A.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        colvals = A[rank:, col] % p
        nz = np.nonzero(colvals)[0]
        if nz.size == 0:
            A[rank:, col] = 0
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            A[[rank, piv]] = A[[piv, rank]]
        A[rank] %= p
        inv = pow(int(A[rank, col]), p - 2, p)
        A[rank] = A[rank] * inv % p
        f = A[rank + 1 :, col] % p
        live = np.nonzero(f)[0]
        if live.size:
            A[rank + 1 + live, col:] -= f[live, None] * A[rank, col:][None, :]
        rank += 1
    return rank


def nullspace(rows, p):
    """Basis of the right nullspace over GF(p), as a list of int64 vectors."""
    A = np.array(rows, dtype=np.int64).copy() % p
    nrows, ncols = A.shape
    pivots = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, col]), p - 2, p)
        A[r] = A[r] * inv % p
        other = np.nonzero(A[:, col])[0]
        for i in other:
            if i != r:
                A[i] = (A[i] - A[i, col] * A[r]) % p
        pivots.append(col)
        r += 1
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = np.zeros(ncols, dtype=np.int64)
        v[fc] = 1
        for ri, pc in enumerate(pivots):
            v[pc] = (-A[ri, fc]) % p
        basis.append(v)
    return basis


def rows_to_polynomials(M, skip_zero=True):
    polys = []
    for i in range(M.shape[0]):
        f = M.row_poly(i)
        if skip_zero and f.is_zero():
            continue
        polys.append(f)
    return polys


def dump_matrix(M):
    """Plain-text dump: header, column monomials, then sparse (i, j, v) triples."""
    lines = ["%s %d %d" % (M.degree, M.shape[0], M.shape[1])]
    lines.append(" ".join(",".join(map(str, m.exps)) for m in M.columns))
    for i, sig in enumerate(M.signatures):
        lines.append(
            "sig %d %s" % (sig.index, ",".join(map(str, sig.monomial.exps)))
        )
    ii, jj = np.nonzero(M.rows)
    for i, j in zip(ii, jj):
        lines.append("%d %d %d" % (i, j, M.rows[i, j]))
    return "\n".join(lines) + "\n"
