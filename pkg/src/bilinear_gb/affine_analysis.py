"""Structure checks for affine bilinear systems: degree of regularity,
quotient dimension / Bezout count, elimination ideals via Jacobian minors,
shape-lemma form, and the block-elimination complexity report.

"Generic" throughout means random over GF(p) with a reported seed; every
genericity-dependent claim is a sampled check that records failing seeds.
"""

import math

import numpy as np

from .core_algebra import (
    AlgebraError,
    FlavorError,
    Monomial,
    Polynomial,
    bihomogenize,
    jacobian_x,
    jacobian_y,
    random_affine_system,
)
from .f5_engine import (
    BlockOrder,
    GroebnerBasis,
    affine_rtz,
    buchberger,
    normal_form,
    order_lm,
)
from .minors import PolyMatrix, maximal_minors


def _staircase_by_degree(lms, layout):
    """Yield per-degree lists of standard monomials (not divisible by any
    leading monomial), stopping after the first empty degree."""
    cur = [Monomial.one(layout.nvars)]
    if any(lm.deg == 0 for lm in lms):
        cur = []
    d = 0
    while cur:
        yield d, cur
        nxt = set()
        for s in cur:
            for v in range(layout.nvars):
                t = s.mul_var(v)
                if not any(lm.divides(t) for lm in lms):
                    nxt.add(t)
        cur = sorted(nxt, key=lambda m: m.key)
        d += 1


def _require_zero_dimensional(lms, layout):
    for v in range(layout.nvars):
        if not any(
            lm.exps[v] and lm.deg == lm.exps[v] for lm in lms
        ):
            raise AlgebraError(
                "ideal is not zero-dimensional: no pure power of %s in LM(I)"
                % layout.names[v]
            )


def degree_of_regularity(G, layout):
    """Smallest d such that every degree-d monomial lies in LM(I)."""
    lms = G.lead_monomials
    _require_zero_dimensional(lms, layout)
    last = -1
    for d, _ in _staircase_by_degree(lms, layout):
        last = d
    return last + 1


def quotient_dimension(G, layout):
    """Number of standard monomials of the (0-dimensional) ideal."""
    lms = G.lead_monomials
    _require_zero_dimensional(lms, layout)
    return sum(len(mon) for _, mon in _staircase_by_degree(lms, layout))


def bezout_number(n_x, n_y):
    """Multihomogeneous Bezout count of a square affine bilinear system."""
    return math.comb(n_x + n_y, n_x)


def _subring_polys(polys, layout, block):
    lo, hi = layout.block_range(block)
    keep = []
    for f in polys:
        if all(
            all(e == 0 for k, e in enumerate(m.exps) if not lo <= k < hi)
            for m, _ in f.terms
        ):
            keep.append(f)
    return keep


def linear_elimination(F, block, max_degree):
    """Degree-bounded elimination by linear algebra: a basis of
    span{u*f_i : deg <= max_degree} written over columns ordered with
    mixed monomials first; rows supported purely on `block` monomials
    form the elimination ideal slice up to max_degree."""
    lay = F.layout
    field = F.field
    lo, hi = lay.block_range(block)

    def pure(m):
        return all(e == 0 for k, e in enumerate(m.exps) if not lo <= k < hi)

    from .core_algebra import enumerate_monomials

    columns = []
    for d in range(max_degree + 1):
        columns.extend(enumerate_monomials(lay, "all", None, d))
    columns.sort(key=lambda m: (pure(m), tuple(-v for v in m.key)))
    col_index = {m: j for j, m in enumerate(columns)}
    first_pure = next(
        (j for j, m in enumerate(columns) if pure(m)), len(columns)
    )
    rows = []
    for f in F.polys:
        df = f.degree()
        for d in range(max_degree - df + 1):
            for u in enumerate_monomials(lay, "all", None, d):
                g = f.mul_term(u)
                row = np.zeros(len(columns), dtype=np.int64)
                for m, c in g.terms:
                    row[col_index[m]] = c
                rows.append(row)
    if not rows:
        return []
    A = np.array(rows, dtype=np.int64)
    # permutation-allowed elimination, keeping reduced rows
    p = field.p
    nrows, ncols = A.shape
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, col] % p)[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] % p
        A[r] = A[r] * pow(int(A[r, col]), p - 2, p) % p
        f_ = A[r + 1 :, col] % p
        live = np.nonzero(f_)[0]
        if live.size:
            A[r + 1 + live] = (A[r + 1 + live] - f_[live, None] * A[r][None, :]) % p
        r += 1
    out = []
    for k in range(r):
        lead = int(np.nonzero(A[k])[0][0])
        if lead >= first_pure:
            out.append(
                Polynomial(
                    [(columns[j], int(A[k, j])) for j in np.nonzero(A[k])[0]],
                    field,
                )
            )
    return out


def elimination_ideal_basis(F, block):
    """Groebner basis of <F> intersected with the `block` subring, via a
    block elimination order (the other block's variables dominate)."""
    other = "y" if block == "x" else "x"
    G = buchberger(F, order=BlockOrder(F.layout, eliminate=other))
    sub = _subring_polys(G.polys, F.layout, block)
    return GroebnerBasis(sub, F.field, reduced=True)


def theta_jacobian(F_affine, which):
    """Dehomogenized Jacobian of the bihomogenized system: entries of
    jac_x/jac_y of F^h with the last variable of each block set to 1."""
    Fh = bihomogenize(F_affine)
    jac = jacobian_x(Fh) if which == "x" else jacobian_y(Fh)
    lay = Fh.layout
    last_y = lay.nvars - 1
    last_x = lay.x_count - 1
    entries = [
        [e.substitute_one(last_y).substitute_one(last_x) for e in row]
        for row in jac
    ]
    return PolyMatrix(entries, F_affine.layout, F_affine.field)


def elimination_by_minors_check(F, which_block="x"):
    """Elimination identity on an affine bilinear square system: the ideal
    of maximal minors of the dehomogenized opposite-block Jacobian equals
    the elimination ideal of <F> in the chosen block's subring."""
    lay = F.layout
    if F.flavor != "affine-bilinear":
        raise FlavorError("expects an affine bilinear system")
    if len(F.polys) != lay.n_x + lay.n_y:
        raise AlgebraError("elimination check needs a square system")
    opposite = "y" if which_block == "x" else "x"
    mat = theta_jacobian(F, opposite)
    minors = [f for f in maximal_minors(mat) if not f.is_zero()]
    G1 = buchberger(minors) if minors else GroebnerBasis([], F.field, reduced=True)
    G2 = elimination_ideal_basis(F, which_block)
    minors_in_elim = all(normal_form(f, G2).is_zero() for f in minors)
    elim_in_minors = all(normal_form(g, G1).is_zero() for g in G2.polys)
    # cross-check the block-order elimination against linear algebra; the
    # Macaulay construction needs one degree of headroom to surface the
    # pure rows, and an empty slice would make the check vacuous
    deg_cap = max((g.degree() for g in G2.polys), default=1) + 1
    lin = linear_elimination(F, which_block, deg_cap)
    lin_consistent = bool(lin) and all(
        normal_form(g, G2).is_zero() for g in lin
    )
    return {
        "equal": minors_in_elim and elim_in_minors,
        "minors_in_elimination": minors_in_elim,
        "elimination_in_minors": elim_in_minors,
        "linear_elimination_consistent": lin_consistent,
        "minors_gb_lms": [order_lm(g, G1.order) for g in G1.polys],
        "elimination_gb_lms": [order_lm(g, G2.order) for g in G2.polys],
    }


def shape_lemma_check(F):
    """Look for x_j - g_j(y) in the affine ideal via an order eliminating
    the x block; reports the g_j found and verifies membership."""
    lay = F.layout
    if len(F.polys) != lay.n_x + lay.n_y:
        raise AlgebraError("shape lemma check needs a square system")
    order = BlockOrder(lay, eliminate="x")
    G = buchberger(F, order=order)
    lo, hi = lay.block_range("x")
    found = {}
    ok = True
    for j in range(lo, hi):
        xj = Polynomial([(Monomial.var(j, lay.nvars), 1)], F.field)
        g = normal_form(xj, G, order=order)
        in_y = all(
            all(e == 0 for k, e in enumerate(m.exps) if k < lay.x_count)
            for m, _ in g.terms
        )
        member = normal_form(xj - g, G, order=order).is_zero()
        found[lay.names[j]] = {
            "g_degree": g.degree(),
            "in_y_block": in_y,
            "membership": member,
        }
        if not (in_y and member):
            ok = False
    return {"holds": ok, "per_variable": found}


def complexity_report(n_x, n_y, omega):
    """Operation-count bound for the square affine case, next to the
    unstructured Macaulay-bound figure for contrast."""
    if not 2 <= omega <= 3:
        raise AlgebraError("omega must lie in [2, 3]")
    dmin = min(n_x + 1, n_y + 1)
    base = math.comb(n_x + n_y + dmin, dmin)
    m = n_x + n_y
    macaulay_base = math.comb(n_x + n_y + m + 1, m + 1)
    def power(b):
        v = b ** omega if isinstance(omega, int) else float(b) ** omega
        return v
    return {
        "base": base,
        "bound": power(base),
        "macaulay_base": macaulay_base,
        "macaulay_bound": power(macaulay_base),
        "omega": omega,
    }


class AffineReport:
    def __init__(self, seed, d_reg_observed, d_reg_bound, quotient_dim, bezout,
                 regular_sequence_observed):
        self.seed = seed
        self.d_reg_observed = d_reg_observed
        self.d_reg_bound = d_reg_bound
        self.quotient_dim = quotient_dim
        self.bezout = bezout
        self.regular_sequence_observed = regular_sequence_observed

    def passes(self):
        return (
            self.d_reg_observed <= self.d_reg_bound
            and self.quotient_dim == self.bezout
            and self.regular_sequence_observed
        )

    def to_dict(self):
        return {
            "seed": self.seed,
            "d_reg_observed": self.d_reg_observed,
            "d_reg_bound": self.d_reg_bound,
            "quotient_dim": self.quotient_dim,
            "bezout": self.bezout,
            "regular_sequence_observed": self.regular_sequence_observed,
            "pass": self.passes(),
        }


def analyze_affine_system(F, seed=None, rtz_degree=None):
    """Full report on one square affine bilinear system."""
    lay = F.layout
    G = buchberger(F)
    d_reg = degree_of_regularity(G, lay)
    qdim = quotient_dimension(G, lay)
    D = rtz_degree or (min(lay.n_x, lay.n_y) + 3)
    rtz = affine_rtz(F, D)
    return AffineReport(
        seed,
        d_reg,
        min(lay.n_x + 1, lay.n_y + 1),
        qdim,
        bezout_number(lay.n_x, lay.n_y),
        len(rtz) == 0,
    )


def run_affine_experiment(n_x, n_y, seeds, field=None):
    """Sampled genericity experiment over square systems; returns a
    manifest with per-seed verdicts and any counterexample seeds."""
    reports = []
    for seed in seeds:
        F = random_affine_system(n_x, n_y, n_x + n_y, seed, field)
        reports.append(analyze_affine_system(F, seed=seed))
    failures = [r.seed for r in reports if not r.passes()]
    return {
        "n_x": n_x,
        "n_y": n_y,
        "m": n_x + n_y,
        "tolerance": "exact",
        "seeds": list(seeds),
        "reports": [r.to_dict() for r in reports],
        "failing_seeds": failures,
        "all_pass": not failures,
    }
