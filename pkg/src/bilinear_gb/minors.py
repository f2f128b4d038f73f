"""Matrices of linear forms: determinants, maximal minors, and the
structure of the Groebner basis / syzygies they generate.

For a generic l x c matrix of linear forms (l >= c) in x_0..x_{n} with
n >= l - c, the reduced degree-c span of the maximal minors has leading
monomials exactly the degree-c monomials in x_0..x_{l-c}.
"""

from itertools import combinations

import numpy as np

from .core_algebra import (
    AlgebraError,
    Monomial,
    Polynomial,
    PrimeField,
    VariableLayout,
    count_monomials,
    enumerate_monomials,
)
from .exact_linalg import macaulay_matrix, nullspace, row_echelon


class PolyMatrix:
    """Rectangular matrix of polynomials over a shared layout and field."""

    def __init__(self, entries, layout, field):
        self.entries = [list(r) for r in entries]
        self.nrows = len(self.entries)
        self.ncols = len(self.entries[0]) if self.nrows else 0
        for r in self.entries:
            if len(r) != self.ncols:
                raise AlgebraError("ragged matrix")
        self.layout = layout
        self.field = field

    def is_linear(self):
        return all(
            e.is_zero() or e.is_homogeneous(1)
            for row in self.entries
            for e in row
        )

    def submatrix(self, rows, cols=None):
        cols = range(self.ncols) if cols is None else cols
        return PolyMatrix(
            [[self.entries[i][j] for j in cols] for i in rows],
            self.layout,
            self.field,
        )

    def transpose(self):
        return PolyMatrix(
            [[self.entries[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.layout,
            self.field,
        )


def random_linear_matrix(nrows, ncols, layout, seed, field=None, block="x"):
    """Matrix of uniformly random linear forms in one variable block."""
    field = field or PrimeField()
    rng = np.random.Generator(np.random.PCG64(seed))
    lo, hi = layout.block_range(block)
    monos = [Monomial.var(i, layout.nvars) for i in range(lo, hi)]
    entries = []
    for _ in range(nrows):
        row = []
        for _ in range(ncols):
            cs = rng.integers(0, field.p, size=len(monos))
            row.append(
                Polynomial([(m, int(c)) for m, c in zip(monos, cs) if c], field)
            )
        entries.append(row)
    return PolyMatrix(entries, layout, field)


def witness_matrix(nrows, ncols, field=None):
    """The banded rank-drop witness: entry (i, j) is x_{i-j} when
    0 <= i-j <= nrows-ncols, else 0 (1-based rows and columns)."""
    field = field or PrimeField()
    layout = VariableLayout(max(nrows - ncols, 1), 1)
    zero = Polynomial.zero(field)
    entries = []
    for i in range(1, nrows + 1):
        row = []
        for j in range(1, ncols + 1):
            k = i - j
            if 0 <= k <= nrows - ncols:
                row.append(
                    Polynomial([(Monomial.var(k, layout.nvars), 1)], field)
                )
            else:
                row.append(zero)
        entries.append(row)
    return PolyMatrix(entries, layout, field)


def det_poly(M, rows=None, _memo=None, counter=None):
    """Determinant by first-column cofactor expansion, memoized on the
    remaining (row subset, column offset) so maximal minors share work."""
    rows = tuple(range(M.nrows)) if rows is None else tuple(rows)
    if len(rows) != M.ncols:
        raise AlgebraError("determinant of a non-square selection")
    memo = {} if _memo is None else _memo
    zero = Polynomial.zero(M.field)
    one = Polynomial.constant(1, M.layout.nvars, M.field)
    pm1 = M.field.p - 1

    def rec(sub, col):
        if not sub:
            return one
        key = (sub, col)
        got = memo.get(key)
        if got is not None:
            return got
        acc = zero
        for k, ri in enumerate(sub):
            e = M.entries[ri][col]
            if e.is_zero():
                continue
            d = rec(sub[:k] + sub[k + 1 :], col + 1)
            if d.is_zero():
                continue
            if counter is not None:
                counter.add(len(e.terms) * len(d.terms))
            term = e * d
            acc = acc + (term if k % 2 == 0 else term.scale(pm1))
        memo[key] = acc
        return acc

    return rec(rows, 0)


def _divexact(f, g):
    """Exact polynomial division f / g; raises if g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    q = {}
    field = f.field
    rem = f
    ginv = field.inv(g.lc)
    while not rem.is_zero():
        m = rem.lm / g.lm  # raises AlgebraError if not divisible
        c = rem.lc * ginv % field.p
        q[m] = c
        rem = rem - g.mul_term(m, c)
    return Polynomial(q.items(), field)


def bareiss_det(M, rows=None):
    """Fraction-free determinant (independent of det_poly) via the
    two-step Bareiss recurrence with exact polynomial division."""
    rows = list(range(M.nrows)) if rows is None else list(rows)
    n = len(rows)
    if n != M.ncols:
        raise AlgebraError("determinant of a non-square selection")
    A = [[M.entries[i][j] for j in range(M.ncols)] for i in rows]
    field = M.field
    one = Polynomial.constant(1, M.layout.nvars, field)
    prev = one
    sign = 1
    for k in range(n - 1):
        if A[k][k].is_zero():
            for r in range(k + 1, n):
                if not A[r][k].is_zero():
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return Polynomial.zero(field)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[k][k] * A[i][j] - A[i][k] * A[k][j]
                A[i][j] = _divexact(num, prev) if not num.is_zero() else num
        prev = A[k][k]
    det = A[n - 1][n - 1]
    return det if sign == 1 else -det


def maximal_minors(M, counter=None):
    """All ncols x ncols minors, in lexicographic row-subset order."""
    if M.nrows < M.ncols:
        raise AlgebraError("matrix has fewer rows than columns")
    memo = {}
    return [
        det_poly(M, rows=sub, _memo=memo, counter=counter)
        for sub in combinations(range(M.nrows), M.ncols)
    ]


def reduce_set(polys, degree, layout, field, counter=None):
    """Monic echelon span of homogeneous degree-d polynomials (zero rows dropped)."""
    polys = [f for f in polys if not f.is_zero()]
    if not polys:
        return []
    M = macaulay_matrix(polys, degree, layout, field)
    res = row_echelon(M, counter)
    return [
        res.matrix.row_poly(i)
        for i, c in enumerate(res.lead_col_of_row)
        if c >= 0
    ]


class MinorsBasis:
    """Echelonized maximal-minor span with the generic-shape verdict."""

    def __init__(self, polys, lead_monomials, expected, is_generic):
        self.polys = polys
        self.lead_monomials = lead_monomials
        self.expected_lead_monomials = expected
        self.is_generic = is_generic


def expected_minor_lead_monomials(M):
    """Degree-c monomials in the first l-c+1 variables of the matrix's block."""
    ell, c = M.nrows, M.ncols
    support = sorted(
        {
            i
            for row in M.entries
            for e in row
            for m, _ in e.terms
            for i, ex in enumerate(m.exps)
            if ex
        }
    )
    lo = support[0] if support else 0
    block = M.layout.block_of(lo)
    blo, _ = M.layout.block_range(block)
    return set(
        enumerate_monomials(M.layout, block, lo - blo + (ell - c), c)
    )


def minors_gb(M, counter=None):
    """Groebner basis of the ideal of maximal minors of a matrix of linear
    forms, obtained by a single echelon pass over the minors (degree c)."""
    if not M.is_linear():
        raise AlgebraError("minors_gb expects a matrix of linear forms")
    minors = maximal_minors(M, counter=counter)
    basis = reduce_set(minors, M.ncols, M.layout, M.field, counter=counter)
    lms = [f.lm for f in basis]
    expected = expected_minor_lead_monomials(M)
    return MinorsBasis(basis, lms, expected, set(lms) == expected)


def extension_patterns(ell, c):
    """Row-index patterns for extending an l x c matrix to l x (l-1) by
    unit columns: all increasing (l-c-1)-subsets of rows."""
    return list(combinations(range(ell), ell - c - 1))


def kernel_vector(M, pattern, counter=None):
    """Left kernel vector of M from one unit-column extension.

    The extension appends, for each row index in `pattern`, a column whose
    only nonzero entry is 1 in that row; entry k of the result is
    (-1)^(k+1) times the maximal minor omitting row k.
    """
    ell, c = M.nrows, M.ncols
    if len(pattern) != ell - c - 1:
        raise AlgebraError("pattern must select l-c-1 rows")
    if sorted(set(pattern)) != list(pattern):
        raise AlgebraError("pattern rows must be strictly increasing")
    field = M.field
    one = Polynomial.constant(1, M.layout.nvars, field)
    zero = Polynomial.zero(field)
    ext = [
        M.entries[i] + [one if i == r else zero for r in pattern]
        for i in range(ell)
    ]
    ext = PolyMatrix(ext, M.layout, field)
    memo = {}
    v = []
    for k in range(ell):
        rows = tuple(i for i in range(ell) if i != k)
        mk = det_poly(ext, rows=rows, _memo=memo, counter=counter)
        v.append(mk if k % 2 == 0 else -mk)
    return v


def apply_left(v, M):
    """Row vector times matrix: list of ncols polynomials."""
    out = []
    for j in range(M.ncols):
        acc = Polynomial.zero(M.field)
        for i in range(M.nrows):
            acc = acc + v[i] * M.entries[i][j]
        out.append(acc)
    return out


class KernelCheck:
    """Per-degree comparison of the true left kernel against minor vectors."""

    def __init__(self, per_degree, holds, note=""):
        self.per_degree = per_degree  # degree -> dict of dims
        self.holds = holds
        self.note = note


def _vector_coords(vec, monos_idx, p):
    """Flatten a polynomial vector into GF(p) coordinates (entry-major)."""
    width = len(monos_idx)
    out = np.zeros(len(vec) * width, dtype=np.int64)
    for i, f in enumerate(vec):
        for m, c in f.terms:
            out[i * width + monos_idx[m]] = c
    return out % p


def check_kernel_conjecture(M, degree_bound=None):
    """Compare, degree by degree, the left kernel of M with the span of
    the unit-extension minor vectors (times monomial multipliers).

    Kernel entries of degree e are solved exactly as a linear system on
    coefficient vectors; the minor vectors have entries of degree c, so
    for e < c the kernel must vanish and for e >= c it must be contained
    in the minor-vector span.
    """
    ell, c = M.nrows, M.ncols
    if ell <= c:
        raise AlgebraError("kernel check expects more rows than columns")
    bound = c + 2 if degree_bound is None else degree_bound
    field = M.field
    p = field.p
    layout = M.layout
    support = sorted(
        {
            i
            for row in M.entries
            for e in row
            for m, _ in e.terms
            for i, ex in enumerate(m.exps)
            if ex
        }
    )
    block = layout.block_of(support[0]) if support else "x"
    blo, bhi = layout.block_range(block)
    max_var = bhi - blo - 1

    minor_vecs = [kernel_vector(M, pat) for pat in extension_patterns(ell, c)]
    per_degree = {}
    holds = True
    note = "" if bound >= c else "degree bound below entry degree c"
    if bound < c:
        holds = False
    for e in range(bound + 1):
        monos_e = enumerate_monomials(layout, block, max_var, e)
        monos_e1 = enumerate_monomials(layout, block, max_var, e + 1)
        idx_e = {m: j for j, m in enumerate(monos_e)}
        idx_e1 = {m: j for j, m in enumerate(monos_e1)}
        nunk = ell * len(monos_e)
        # constraint matrix: rows = coefficients of sum_i v_i * M[i][j]
        A = np.zeros((M.ncols * len(monos_e1), nunk), dtype=np.int64)
        for i in range(ell):
            for j in range(M.ncols):
                entry = M.entries[i][j]
                for m, cf in entry.terms:
                    for k, u in enumerate(monos_e):
                        A[j * len(monos_e1) + idx_e1[u * m], i * len(monos_e) + k] = cf
        kern = nullspace(A, p)
        kdim = len(kern)
        span_rows = []
        for v in minor_vecs:
            for u in enumerate_monomials(layout, block, max_var, e - c):
                shifted = [f.mul_term(u) for f in v]
                span_rows.append(_vector_coords(shifted, idx_e, p))
        from .exact_linalg import rank_dense

        if span_rows:
            sdim = rank_dense(np.array(span_rows), p)
            if kern:
                both = rank_dense(np.array(span_rows + list(kern)), p)
            else:
                both = sdim
        else:
            sdim = 0
            both = kdim
        contained = both == sdim
        per_degree[e] = {
            "kernel_dim": kdim,
            "minor_span_dim": sdim,
            "contained": contained,
        }
        if not contained:
            holds = False
    return KernelCheck(per_degree, holds, note)


def witness_lead_monomials(nrows, ncols, layout):
    """Leading minors of the banded witness, in closed form.

    The minor on kept rows k_1 < ... < k_c (1-based) leads with the
    diagonal product x_{k_1-1} * x_{k_2-2} * ... * x_{k_c-c}; over all
    row subsets this sweeps out Monomials_{l-c}(c) exactly.
    """
    ell, c = nrows, ncols
    lms = set()
    for kept in combinations(range(1, ell + 1), c):
        exps = [0] * layout.nvars
        for t, k in enumerate(kept, start=1):
            exps[k - t] += 1
        lms.add(Monomial(exps))
    return lms


def predicted_minor_count(ell, c):
    """Size of the generic minors staircase: |Monomials_{l-c}(c)|."""
    return count_monomials(ell - c, c)
