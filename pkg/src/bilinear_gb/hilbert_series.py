"""Hilbert bi-series of bilinear ideals, three independent ways, plus the
predicted block-elimination speed-up factor F and the degree-D cost model.

All series are truncated integer coefficient arrays; no rational-function
normalization is ever performed.
"""

import math
from fractions import Fraction

import numpy as np

from .core_algebra import (
    FlavorError,
    count_monomials,
    enumerate_bidegree,
)
from .exact_linalg import rank_dense


def binom0(n, k):
    """Binomial with out-of-range arguments evaluating to 0, except that
    choosing 0 items is always 1 (the empty product), even from a
    negative-size set.  The k = 0 convention is what makes the printed
    g-series boundary collapse correctly at i = n_y + 1."""
    if k == 0:
        return 1
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


class BiSeries:
    """Truncated bivariate series: coeffs[a][b] is the t1^a t2^b coefficient."""

    def __init__(self, coeffs, skipped=None):
        self.coeffs = np.asarray(coeffs, dtype=np.int64)
        self.d1 = self.coeffs.shape[0] - 1
        self.d2 = self.coeffs.shape[1] - 1
        self.skipped = list(skipped or [])

    @classmethod
    def zeros(cls, d1, d2):
        return cls(np.zeros((d1 + 1, d2 + 1), dtype=np.int64))

    def __getitem__(self, ab):
        a, b = ab
        return int(self.coeffs[a, b])

    def __eq__(self, other):
        return (
            isinstance(other, BiSeries)
            and other.coeffs.shape == self.coeffs.shape
            and bool(np.all(other.coeffs == self.coeffs))
        )

    def __add__(self, other):
        return BiSeries(self.coeffs + other.coeffs)

    def __sub__(self, other):
        return BiSeries(self.coeffs - other.coeffs)

    def shift(self, a, b):
        """Multiply by t1^a t2^b, truncating."""
        out = np.zeros_like(self.coeffs)
        out[a:, b:] = self.coeffs[: self.d1 + 1 - a, : self.d2 + 1 - b]
        return BiSeries(out)

    def mul_one_minus_t1t2(self):
        out = self.coeffs.copy()
        out[1:, 1:] -= self.coeffs[:-1, :-1]
        return BiSeries(out)

    def to_lists(self):
        return self.coeffs.tolist()

    def table(self):
        """Aligned human-readable coefficient table."""
        width = max(len(str(int(v))) for v in self.coeffs.flat) + 1
        lines = []
        header = " " * 6 + "".join(
            ("t2^%d" % b).rjust(width) for b in range(self.d2 + 1)
        )
        lines.append(header)
        for a in range(self.d1 + 1):
            lines.append(
                ("t1^%d " % a).ljust(6)
                + "".join(str(int(v)).rjust(width) for v in self.coeffs[a])
            )
        return "\n".join(lines)


def _mul_truncated(A, B):
    """Product of two coefficient arrays, truncated to A's shape."""
    d1, d2 = A.shape[0] - 1, A.shape[1] - 1
    out = np.zeros_like(A)
    for a in range(min(B.shape[0], d1 + 1)):
        for b in range(min(B.shape[1], d2 + 1)):
            v = B[a, b]
            if v:
                out[a:, b:] += v * A[: d1 + 1 - a, : d2 + 1 - b]
    return out


def _one_minus_t1t2_pow(k, d1, d2):
    """(1 - t1 t2)^k as a coefficient array."""
    out = np.zeros((d1 + 1, d2 + 1), dtype=np.int64)
    for j in range(min(k, d1, d2) + 1):
        out[j, j] = (-1) ** j * math.comb(k, j)
    return out


def hs_zero_ideal(n_x, n_y, D1, D2):
    """Series of the zero ideal: 1/((1-t1)^{n_x+1} (1-t2)^{n_y+1})."""
    coeffs = np.zeros((D1 + 1, D2 + 1), dtype=np.int64)
    for a in range(D1 + 1):
        for b in range(D2 + 1):
            coeffs[a, b] = math.comb(a + n_x, a) * math.comb(b + n_y, b)
    return BiSeries(coeffs)


def g_series(n_x, n_y, i, trunc, check=True):
    """Univariate series (gx, gy) counting, per degree, the x-monomials
    divisible by a degree-(n_y+1) monomial in x_0..x_{i-n_y-2} and the
    symmetric y-count.  Computed combinatorially (authoritative) and,
    when `check`, compared against the binomial closed form; a mismatch
    raises instead of being patched over."""
    gx = _g_block(n_x, n_y, i, trunc)
    gy = _g_block(n_y, n_x, i, trunc)
    if check:
        cx = _g_block_closed(n_x, n_y, i, trunc)
        cy = _g_block_closed(n_y, n_x, i, trunc)
        if cx != gx or cy != gy:
            raise ArithmeticError(
                "g-series closed form disagrees with direct count at i=%d" % i
            )
    return gx, gy


def _g_block(n_own, n_other, i, trunc):
    """Degree-d counts of monomials in n_own+1 variables divisible by some
    degree-(n_other+1) monomial in the first i-n_other-1 variables.

    A monomial avoids all of them iff its degree in those first variables
    is at most n_other, which gives the complementary count directly.
    """
    s = i - n_other - 2  # largest usable variable index
    out = [0] * (trunc + 1)
    if s < 0:
        return out
    for d in range(trunc + 1):
        total = count_monomials(n_own, d)
        free = 0
        for j in range(min(d, n_other) + 1):
            free += count_monomials(s, j) * count_monomials(n_own - s - 1, d - j)
        out[d] = total - free
    return out


def _g_block_closed(n_own, n_other, i, trunc):
    """The printed closed form: 1/(1-t)^{n_own+1} minus a sum of shifted
    1/(1-t)^{n_own+n_other-i+2} terms; 0 for i <= n_other (and the j-sum
    degenerates to the same full series at i = n_other+1 under binom0)."""
    if i <= n_other:
        return [0] * (trunc + 1)
    out = [count_monomials(n_own, d) for d in range(trunc + 1)]
    denom_pow = n_own + n_other - i + 2  # 1/(1-t)^denom_pow
    for j in range(1, n_other + 2):
        coef = binom0(i - 1 - j, n_other + 1 - j)
        if not coef:
            continue
        shift = n_other + 1 - j
        for d in range(shift, trunc + 1):
            out[d] -= coef * count_monomials(denom_pow - 1, d - shift)
    return out


def hs_recurrence(n_x, n_y, m, trunc):
    """Hilbert bi-series by the colon-ideal recurrence
    HS_i = (1 - t1 t2) HS_{i-1} + t1 t2 (gx^{(i-1)}(t1) + gy^{(i-1)}(t2))."""
    D1, D2 = trunc
    if m > n_x + n_y:
        raise FlavorError("recurrence requires m <= n_x + n_y")
    hs = hs_zero_ideal(n_x, n_y, D1, D2)
    for i in range(1, m + 1):
        gx, gy = g_series(n_x, n_y, i, max(D1, D2))
        corr = np.zeros((D1 + 1, D2 + 1), dtype=np.int64)
        for a in range(1, D1 + 1):
            corr[a, 1] += gx[a - 1]
        for b in range(1, D2 + 1):
            corr[1, b] += gy[b - 1]
        hs = BiSeries(hs.mul_one_minus_t1t2().coeffs + corr)
    return hs


def numerator_polynomial(n_x, n_y, m, D1, D2):
    """N_m(t1, t2) of the closed form, as a truncated coefficient array."""
    N = _one_minus_t1t2_pow(m, D1, D2)

    def correction(n_b, swap):
        # sum over ell for the block whose ``own'' variable is t1 (swap=False)
        out = np.zeros((D1 + 1, D2 + 1), dtype=np.int64)
        for ell in range(1, m - (n_b + 1) + 1):
            term = _one_minus_t1t2_pow(m - (n_b + 1) - ell, D1, D2)
            # (1 - t_other)^{n_b+1}
            other = np.zeros((D1 + 1, D2 + 1), dtype=np.int64)
            for j in range(min(n_b + 1, D2 if not swap else D1) + 1):
                c = (-1) ** j * math.comb(n_b + 1, j)
                if swap:
                    other[j, 0] = c
                else:
                    other[0, j] = c
            term = _mul_truncated(term, other)
            # bracket: 1 - (1 - t_own)^ell * sum_k t_own^{n_b+1-k} C(ell+n_b-k, n_b+1-k)
            bracket = np.zeros((D1 + 1, D2 + 1), dtype=np.int64)
            bracket[0, 0] = 1
            inner = np.zeros((D1 + 1, D2 + 1), dtype=np.int64)
            own_max = D1 if not swap else D2
            for k in range(1, n_b + 2):
                c = binom0(ell + n_b - k, n_b + 1 - k)
                shift = n_b + 1 - k
                if c and shift <= own_max:
                    if swap:
                        inner[0, shift] += c
                    else:
                        inner[shift, 0] += c
            pw = np.zeros((D1 + 1, D2 + 1), dtype=np.int64)
            for j in range(min(ell, own_max) + 1):
                c = (-1) ** j * math.comb(ell, j)
                if swap:
                    pw[0, j] = c
                else:
                    pw[j, 0] = c
            bracket -= _mul_truncated(inner, pw)
            term = _mul_truncated(term, bracket)
            # times t1 t2
            shifted = np.zeros_like(term)
            shifted[1:, 1:] = term[:-1, :-1]
            out += shifted
        return out

    N = N + correction(n_y, swap=False) + correction(n_x, swap=True)
    return N


def hs_closed_form(n_x, n_y, m, trunc):
    """Hilbert bi-series from the closed-form numerator N_m divided by
    (1-t1)^{n_x+1} (1-t2)^{n_y+1} (multiplication by the zero-ideal series)."""
    D1, D2 = trunc
    if m > n_x + n_y:
        raise FlavorError("closed form requires m <= n_x + n_y")
    N = numerator_polynomial(n_x, n_y, m, D1, D2)
    zero = hs_zero_ideal(n_x, n_y, D1, D2)
    return BiSeries(_mul_truncated(zero.coeffs, N))


def hs_direct(F, trunc, max_block_cols=None):
    """Hilbert bi-series by exact rank per bidegree block.

    coeff[a][b] = dim R_{a,b} - rank of the rows u*f_i with u of bidegree
    (a-1, b-1).  Blocks wider than `max_block_cols` are skipped (recorded
    in the result's `skipped` list) with the zero-ideal value left in
    place; by default nothing is skipped.
    """
    if F.flavor != "homogeneous-bilinear":
        raise FlavorError("hs_direct expects a homogeneous bilinear system")
    D1, D2 = trunc
    lay = F.layout
    p = F.field.p
    out = hs_zero_ideal(lay.n_x, lay.n_y, D1, D2)
    coeffs = out.coeffs.copy()
    skipped = []
    for a in range(1, D1 + 1):
        for b in range(1, D2 + 1):
            cols = enumerate_bidegree(lay, a, b)
            if max_block_cols is not None and len(cols) > max_block_cols:
                skipped.append((a, b))
                continue
            col_index = {m: j for j, m in enumerate(cols)}
            umonos = enumerate_bidegree(lay, a - 1, b - 1)
            rows = np.zeros((len(umonos) * len(F.polys), len(cols)), dtype=np.int64)
            r = 0
            for u in umonos:
                for f in F.polys:
                    for mm, c in f.terms:
                        rows[r, col_index[u * mm]] = c
                    r += 1
            coeffs[a, b] = len(cols) - rank_dense(rows, p)
    return BiSeries(coeffs, skipped=skipped)


def univariate_hs(b):
    """Diagonal collapse t1 = t2 = t, valid through degree min(D1, D2)."""
    top = min(b.d1, b.d2)
    return [
        int(sum(b.coeffs[a, d - a] for a in range(max(0, d - b.d2), min(d, b.d1) + 1)))
        for d in range(top + 1)
    ]


def dim_block(n_x, n_y, d1, d2):
    return math.comb(d1 + n_x, d1) * math.comb(d2 + n_y, d2)


def _degree_cost_terms(n_x, n_y, m, D):
    """Gauss-elimination cost units (r^2 * c per matrix) for the degree-D
    step: the single homogeneous matrix versus the bidegree blocks.

    The homogeneous row count discounts the part of the degree-D staircase
    that is carried over unchanged from degree D-1, i.e. the quotient
    coefficient used is the first difference HF(D) - HF(D-1) of the diagonal
    Hilbert function.  Each block is costed at its own full rank
    dim(R_{d1,d2}) - HS[d1,d2]."""
    hs = hs_closed_form(n_x, n_y, m, (D, D))
    uni = univariate_hs(hs)
    n1 = n_x + n_y + 1
    full = math.comb(D + n1, D)
    new_quotient = uni[D] - uni[D - 1]
    t_hom = (full - new_quotient) ** 2 * full
    t_multi = 0
    for d1 in range(1, D):
        d2 = D - d1
        dim = dim_block(n_x, n_y, d1, d2)
        t_multi += (dim - hs[d1, d2]) ** 2 * dim
    return t_hom, t_multi


def speedup_factor(n_x, n_y, m, D):
    """Predicted hom/multihom cost ratio F(n_x, n_y, m, D), rounded up to
    the integer figure the ratio guarantees at least."""
    t_hom, t_multi = _degree_cost_terms(n_x, n_y, m, D)
    return -(-t_hom // t_multi)


def cost_model(n_x, n_y, m, D, seed=None, threads=1):
    """The two degree-D reduction cost expressions (constants reported
    as 1) and, when a seed is given, the measured field_ops of both
    engines on that random instance for comparison."""
    t_hom, t_multi = _degree_cost_terms(n_x, n_y, m, D)
    report = {
        "T_hom_units": t_hom,
        "T_multihom_units": t_multi,
        "ratio": Fraction(t_hom, t_multi),
        "F": speedup_factor(n_x, n_y, m, D),
    }
    if seed is not None:
        from .core_algebra import VariableLayout, random_system
        from .f5_engine import matrix_f5, multihomogeneous_matrix_f5

        F = random_system(VariableLayout(n_x, n_y), m, seed)
        _, s_hom = matrix_f5(F, D, mode="extended")
        _, s_multi = multihomogeneous_matrix_f5(F, D, mode="extended", threads=threads)
        report["measured_hom_ops"] = s_hom.field_ops
        report["measured_multihom_ops"] = s_multi.field_ops
        report["measured_ratio"] = (
            Fraction(s_hom.field_ops, s_multi.field_ops)
            if s_multi.field_ops
            else None
        )
    return report
