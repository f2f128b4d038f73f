"""Signature-based Groebner basis engines over GF(p).

`matrix_f5` runs degree-by-degree signed Macaulay elimination with the
classical signature criterion or the extended bilinear criterion built
from Jacobian minors.  `multihomogeneous_matrix_f5` is the same engine
with each degree split into independent bidegree blocks.  `buchberger`
is the order-pluggable oracle, also used for affine inputs.
"""

import heapq
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations

import numpy as np

from .core_algebra import (
    AlgebraError,
    FlavorError,
    Monomial,
    Polynomial,
    PolySystem,
    VariableLayout,
    count_monomials,
    enumerate_bidegree,
    enumerate_monomials,
    jacobian_x,
    jacobian_y,
)
from .exact_linalg import OpCounter, Signature
from .minors import PolyMatrix, maximal_minors, reduce_set


# --- monomial orders ---------------------------------------------------------

class GrevlexOrder:
    """Default order; larger key tuple = larger monomial."""

    name = "grevlex"

    def key(self, m):
        return m.key


class BlockOrder:
    """Elimination order: the `eliminate` block dominates, grevlex within
    each block.  The GB of an ideal under this order intersected with the
    other block's ring is the elimination ideal."""

    def __init__(self, layout, eliminate="x"):
        self.layout = layout
        self.eliminate = eliminate
        self.name = "eliminate-%s" % eliminate
        self._lo, self._hi = layout.block_range(eliminate)

    def key(self, m):
        lo, hi = self._lo, self._hi
        elim = m.exps[lo:hi]
        rest = m.exps[:lo] + m.exps[hi:]
        return (
            (sum(elim),)
            + tuple(-e for e in reversed(elim))
            + (sum(rest),)
            + tuple(-e for e in reversed(rest))
        )


GREVLEX = GrevlexOrder()


def order_lm(f, order):
    if f.is_zero():
        return None
    if order is GREVLEX:
        return f.terms[0][0]
    return max((m for m, _ in f.terms), key=order.key)


def _heap_entry(m, order):
    return (tuple(-v for v in order.key(m)), m)


def reduce_full(f, basis, order=GREVLEX):
    """Fully reduce f modulo a list of polynomials: no monomial of the
    result is divisible by any basis leading monomial."""
    if f.is_zero() or not basis:
        return f
    field = f.field
    p = field.p
    prepared = []
    for g in basis:
        lm = order_lm(g, order)
        tail = [(m, c) for m, c in g.terms if m != lm]
        prepared.append((lm, field.inv(dict(g.terms)[lm]), tail))
    work = dict(f.terms)
    heap = [_heap_entry(m, order) for m in work]
    heapq.heapify(heap)
    out = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = work.pop(m, 0)
        if not c:
            continue
        hit = None
        for lm, lcinv, tail in prepared:
            if lm.divides(m):
                hit = (lm, lcinv, tail)
                break
        if hit is None:
            out[m] = c
            continue
        lm, lcinv, tail = hit
        q = m / lm
        factor = c * lcinv % p
        for mg, cg in tail:
            mm = mg * q
            old = work.get(mm, 0)
            new = (old - factor * cg) % p
            if new:
                if not old:
                    heapq.heappush(heap, _heap_entry(mm, order))
                work[mm] = new
            else:
                work.pop(mm, None)
    return Polynomial(out.items(), field)


class GroebnerBasis:
    """A (D-)Groebner basis; `reduced` means minimal with reduced tails."""

    def __init__(self, polys, field, degree_bound=None, reduced=False, order=GREVLEX):
        self.polys = [f for f in polys if not f.is_zero()]
        self.field = field
        self.degree_bound = degree_bound
        self.reduced = reduced
        self.order = order

    @property
    def lead_monomials(self):
        return [order_lm(f, self.order) for f in self.polys]

    def lm_set(self):
        return set(self.lead_monomials)

    def max_degree(self):
        return max((f.degree() for f in self.polys), default=0)

    def reduce(self):
        """Interreduce: drop redundant generators, reduce tails, make monic."""
        polys = sorted(self.polys, key=lambda f: self.order.key(order_lm(f, self.order)))
        minimal = []
        for f in polys:
            lm = order_lm(f, self.order)
            if any(order_lm(g, self.order).divides(lm) for g in minimal):
                continue
            minimal.append(f)
        out = []
        for i, f in enumerate(minimal):
            rest = minimal[:i] + minimal[i + 1 :]
            r = reduce_full(f, rest, self.order)
            if not r.is_zero():
                lm = order_lm(r, self.order)
                r = r.scale(self.field.inv(dict(r.terms)[lm]))
                out.append(r)
        out.sort(key=lambda f: self.order.key(order_lm(f, self.order)))
        return GroebnerBasis(
            out, self.field, self.degree_bound, reduced=True, order=self.order
        )


def normal_form(f, G, order=None):
    """Remainder of f modulo the basis; zero iff f is in the ideal."""
    order = order or getattr(G, "order", GREVLEX)
    basis = G.polys if isinstance(G, GroebnerBasis) else list(G)
    return reduce_full(f, basis, order)


# --- extended criterion table ------------------------------------------------

class CriterionTable:
    """Per-generator monomials t with t*f_i known to reduce to zero.

    x-side entries come from maximal minors of the y-Jacobian of the first
    i-1 generators (degree n_y+1 monomials in the x block); y-side entries
    are symmetric.
    """

    def __init__(self, entries_x, entries_y, field_ops=0, generic_per_index=None):
        self.entries_x = entries_x
        self.entries_y = entries_y
        self.field_ops = field_ops
        self.generic_per_index = generic_per_index or {}

    def entries(self, i):
        return self.entries_x.get(i, set()) | self.entries_y.get(i, set())

    def total_count(self):
        return sum(len(s) for s in self.entries_x.values()) + sum(
            len(s) for s in self.entries_y.values()
        )

    def is_generic(self):
        return all(self.generic_per_index.values())


def bl_criterion_table(F):
    """Build the extended-criterion table for a bilinear system.

    For each i > n_y+1 the colon ideal I_{i-1} : f_i picks up the maximal
    minors of jac_y(F_{i-1}), which are degree-(n_y+1) forms in the x
    variables; their echelonized leading monomials go on the x side (and
    symmetrically for jac_x on the y side).  For generic systems the x
    side of entry i is exactly Monomials^x_{i-n_y-2}(n_y+1).
    """
    if F.flavor != "homogeneous-bilinear":
        raise FlavorError("criterion table needs a homogeneous bilinear system")
    lay = F.layout
    n_x, n_y = lay.n_x, lay.n_y
    counter = OpCounter()
    entries_x, entries_y, generic = {}, {}, {}
    for i in range(2, len(F.polys) + 1):
        sub = PolySystem(F.polys[: i - 1], lay, F.field, F.flavor)
        if i > n_y + 1:
            mat = PolyMatrix(jacobian_y(sub), lay, F.field)
            minors = maximal_minors(mat, counter=counter)
            basis = reduce_set(minors, n_y + 1, lay, F.field, counter=counter)
            lms = {f.lm for f in basis}
            entries_x[i] = lms
            expect = count_monomials(i - n_y - 2, n_y + 1)
            generic[(i, "x")] = len(lms) == expect
        if i > n_x + 1:
            mat = PolyMatrix(jacobian_x(sub), lay, F.field)
            minors = maximal_minors(mat, counter=counter)
            basis = reduce_set(minors, n_x + 1, lay, F.field, counter=counter)
            lms = {f.lm for f in basis}
            entries_y[i] = lms
            expect = count_monomials(i - n_x - 2, n_x + 1)
            generic[(i, "y")] = len(lms) == expect
    return CriterionTable(entries_x, entries_y, counter.ops, generic)


def predicted_rtz_count(n_x, n_y, m):
    """Reductions to zero the classical criterion misses on a generic
    bilinear system: sizes of the prescribed signature monomial sets."""
    total = 0
    for i in range(n_y + 2, m + 1):
        total += count_monomials(i - n_y - 2, n_y + 1)
    for i in range(n_x + 2, m + 1):
        total += count_monomials(i - n_x - 2, n_x + 1)
    return total


# --- matrix F5 ---------------------------------------------------------------

class F5Stats:
    def __init__(self):
        self.reductions_to_zero = []  # (Signature, degree)
        self.rows_skipped_classical = 0
        self.rows_skipped_extended = 0
        self.field_ops = 0
        self.table_field_ops = 0
        self.matrix_shapes = []  # dicts per (d, i) or (d, block)

    def rtz_by_index(self):
        out = {}
        for sig, d in self.reductions_to_zero:
            out.setdefault(sig.index, set()).add(sig.monomial)
        return out

    def to_report(self):
        return {
            "reductions_to_zero": [
                {
                    "index": sig.index,
                    "monomial": list(sig.monomial.exps),
                    "degree": d,
                }
                for sig, d in self.reductions_to_zero
            ],
            "rtz_count": len(self.reductions_to_zero),
            "rows_skipped_classical": self.rows_skipped_classical,
            "rows_skipped_extended": self.rows_skipped_extended,
            "field_ops": self.field_ops,
            "table_field_ops": self.table_field_ops,
            "matrix_shapes": self.matrix_shapes,
        }


def classical_criterion(monomial, index, lm_stage):
    """True iff `monomial` is the lead of a row of the echelonized matrix
    of the first index-1 generators in its degree.  `lm_stage` maps lead
    monomial -> generator stage at which it appeared."""
    stage = lm_stage.get(monomial)
    return stage is not None and stage <= index - 1


class _Block:
    """One elimination block: a column set with its pivot rows."""

    def __init__(self, columns):
        self.columns = columns
        self.col_index = {m: j for j, m in enumerate(columns)}
        self.rows = []  # np arrays, reduced, monic, in insertion order
        self.pivots = {}  # lead col -> row position in self.rows

    def width(self):
        return len(self.columns)


def _reduce_row(block, row, p, counter):
    """No-permutation reduction of one new row against block pivots."""
    ncols = len(row)
    nz = np.nonzero(row)[0]
    lead = int(nz[0]) if nz.size else -1
    while lead >= 0 and lead in block.pivots:
        row = (row - row[lead] * block.rows[block.pivots[lead]]) % p
        counter.add(ncols - lead)
        nz = np.nonzero(row[lead:])[0]
        lead = int(nz[0]) + lead if nz.size else -1
    return row, lead


def _row_of(t, f, block, p):
    row = np.zeros(block.width(), dtype=np.int64)
    idx = block.col_index
    for m, c in f.terms:
        row[idx[t * m]] = c
    return row


def _engine(F, D, mode, blocks_for_degree, block_of_sig, threads=1):
    """Shared degree-by-degree driver for both homogeneous engines.

    `blocks_for_degree(d)` returns {block_key: _Block}; `block_of_sig(t, i)`
    routes a row to its block.  Blocks never interact, so the block split
    changes operation counts but not the computed basis.
    """
    field = F.field
    p = field.p
    m = len(F.polys)
    degrees = [f.degree() for f in F.polys]
    if any(f.is_zero() for f in F.polys):
        raise AlgebraError("zero generator")
    if degrees != sorted(degrees):
        raise AlgebraError("generator degrees must be nondecreasing")
    if D < degrees[0]:
        raise AlgebraError("degree bound below the smallest generator degree")
    table = None
    stats = F5Stats()
    if mode == "extended":
        table = bl_criterion_table(F)
        stats.table_field_ops = table.field_ops
    elif mode != "classical":
        raise AlgebraError("unknown mode %r" % mode)
    counter = OpCounter()
    G = []
    lm_history = {}  # degree -> {lead monomial: stage index}
    survivors = {}  # i -> list of signature monomials alive at previous degree
    for d in range(degrees[0], D + 1):
        blocks = blocks_for_degree(d)
        lm_stage = {}
        new_survivors = {i: [] for i in range(1, m + 1)}
        for i in range(1, m + 1):
            f = F.polys[i - 1]
            di = degrees[i - 1]
            cands = []
            if di == d:
                cands.append(Monomial.one(F.layout.nvars))
            elif di < d:
                seen = set()
                for e in survivors.get(i, ()):
                    lam = e.largest_var()
                    for k in range(max(lam, 0), F.layout.nvars):
                        t = e.mul_var(k)
                        if t not in seen:
                            seen.add(t)
                            cands.append(t)
            cands.sort(key=lambda t: t.key)
            prev_lms = lm_history.get(d - di, {})
            table_i = table.entries(i) if table is not None else ()
            accepted = []
            for t in cands:
                if t.deg > 0 and classical_criterion(t, i, prev_lms):
                    stats.rows_skipped_classical += 1
                    continue
                if table is not None and t in table_i:
                    stats.rows_skipped_extended += 1
                    continue
                accepted.append(t)

            def work(items, block):
                local = OpCounter()
                for t in items:
                    row = _row_of(t, f, block, p)
                    row, lead = _reduce_row(block, row, p, local)
                    sig = Signature(i, t)
                    if lead < 0:
                        stats.reductions_to_zero.append((sig, d))
                        continue
                    inv = field.inv(int(row[lead]))
                    row = row * inv % p
                    local.add(len(row) - lead)
                    block.pivots[lead] = len(block.rows)
                    block.rows.append(row)
                    new_survivors[i].append(t)
                    lm = block.columns[lead]
                    if lm not in lm_stage:
                        lm_stage[lm] = i
                    if t.deg == 0 or lm != t * f.lm:
                        G.append((sig, _block_row_poly(block, row, field)))
                return local.ops

            by_block = {}
            for t in accepted:
                by_block.setdefault(block_of_sig(t, i), []).append(t)
            if threads > 1 and len(by_block) > 1:
                with ThreadPoolExecutor(max_workers=threads) as ex:
                    futs = [
                        ex.submit(work, items, blocks[key])
                        for key, items in by_block.items()
                    ]
                    counter.add(sum(fu.result() for fu in futs))
            else:
                for key, items in by_block.items():
                    counter.add(work(items, blocks[key]))
            for key, blk in blocks.items():
                if blk.rows:
                    stats.matrix_shapes.append(
                        {
                            "degree": d,
                            "index": i,
                            "block": key if key != "all" else None,
                            "rows": len(blk.rows),
                            "cols": blk.width(),
                        }
                    )
        lm_history[d] = lm_stage
        survivors = new_survivors
    stats.field_ops = counter.ops
    stats.reductions_to_zero.sort(key=lambda sd: (sd[1], sd[0].key))
    G.sort(key=lambda sg: (sg[1].degree(), sg[0].key))
    basis = GroebnerBasis([g for _, g in G], field, degree_bound=D)
    return basis, stats


def _block_row_poly(block, row, field):
    nz = np.nonzero(row)[0]
    return Polynomial([(block.columns[j], int(row[j])) for j in nz], field)


def matrix_f5(F, D, mode="classical"):
    """Matrix F5 on a homogeneous system, one Macaulay matrix per degree."""
    if F.layout.affine:
        raise FlavorError("matrix_f5 expects a homogeneous system")
    for f in F.polys:
        if not f.is_homogeneous():
            raise AlgebraError("matrix_f5 expects homogeneous generators")
    if mode == "extended" and F.flavor != "homogeneous-bilinear":
        raise FlavorError("extended mode requires a bilinear system")
    lay = F.layout

    def blocks_for_degree(d):
        return {"all": _Block(enumerate_monomials(lay, "all", None, d))}

    return _engine(F, D, mode, blocks_for_degree, lambda t, i: "all")


def multihomogeneous_matrix_f5(F, D, mode="classical", threads=1):
    """Matrix F5 with each degree-d matrix split into bidegree blocks
    (d1, d2), d1+d2 = d.  Bihomogeneous rows never mix bidegrees, so the
    eliminations — and the resulting basis — are identical to matrix_f5;
    only the dense row width (and with it field_ops) changes."""
    if F.flavor not in ("homogeneous-bilinear", "bihomogeneous"):
        raise FlavorError("multihomogeneous engine needs a bihomogeneous system")
    lay = F.layout
    bidegs = []
    for f in F.polys:
        bd = f.bidegrees(lay)
        if len(bd) != 1:
            raise FlavorError("generator is not bihomogeneous")
        bidegs.append(next(iter(bd)))

    def blocks_for_degree(d):
        return {
            (d1, d - d1): _Block(enumerate_bidegree(lay, d1, d - d1))
            for d1 in range(d + 1)
        }

    def block_of_sig(t, i):
        a, b = lay.bidegree(t.exps)
        da, db = bidegs[i - 1]
        return (a + da, b + db)

    return _engine(F, D, mode, blocks_for_degree, block_of_sig, threads=threads)


def extended_criterion(monomial, index, lm_stage, table):
    return classical_criterion(monomial, index, lm_stage) or (
        monomial in table.entries(index)
    )


# --- biregularity ------------------------------------------------------------

def prescribed_rtz_monomials(n_x, n_y, layout, i):
    """Signature monomials Def-4.1 prescribes to reduce to zero for f_i."""
    out = set()
    if i >= n_y + 2:
        out |= set(enumerate_monomials(layout, "x", i - n_y - 2, n_y + 1))
    if i >= n_x + 2:
        out |= set(enumerate_monomials(layout, "y", i - n_x - 2, n_x + 1))
    return out


def check_biregularity(F, D):
    """Run classical matrix F5 and compare, per generator, the observed
    zero-row signature monomials with the prescribed generic sets.

    Leading monomials of a bilinear ideal always mix both blocks, so the
    classical criterion can never prune the prescribed pure-block
    signatures; for a bi-regular system the two sets agree exactly
    (provided D reaches degree max(n_x, n_y) + 3, where the last
    prescribed signatures live).
    """
    lay = F.layout
    _, stats = matrix_f5(F, D, mode="classical")
    observed = stats.rtz_by_index()
    per_index = {}
    ok = True
    for i in range(1, len(F.polys) + 1):
        pres = {
            t
            for t in prescribed_rtz_monomials(lay.n_x, lay.n_y, lay, i)
            if t.deg + 2 <= D
        }
        obs = observed.get(i, set())
        if obs == pres:
            verdict = "equal"
        elif obs < pres:
            verdict = "subset"
        elif obs > pres:
            verdict = "superset"
        else:
            verdict = "differs"
        if verdict != "equal":
            ok = False
        per_index[i] = verdict
    return {"bi_regular": ok, "per_index": per_index, "stats": stats}


# --- Buchberger --------------------------------------------------------------

def _spoly(f, g, order, field):
    lmf, lmg = order_lm(f, order), order_lm(g, order)
    lcm = lmf.lcm(lmg)
    cf = dict(f.terms)[lmf]
    cg = dict(g.terms)[lmg]
    a = f.mul_term(lcm / lmf, field.inv(cf))
    b = g.mul_term(lcm / lmg, field.inv(cg))
    return a - b


def buchberger(F, order=None):
    """Reduced Groebner basis by Buchberger's algorithm with the normal
    selection strategy and the product/chain criteria."""
    order = order or GREVLEX
    polys = list(F.polys) if hasattr(F, "polys") else list(F)
    field = polys[0].field if polys else None
    G = []
    for f in polys:
        if not f.is_zero():
            G.append(f)
    if not G:
        return GroebnerBasis([], field, reduced=True, order=order)
    lms = [order_lm(g, order) for g in G]
    pairs = []
    pending = set()

    def push(i, j):
        lcm = lms[i].lcm(lms[j])
        heapq.heappush(pairs, (lcm.deg, order.key(lcm), i, j))
        pending.add((i, j))

    for i, j in combinations(range(len(G)), 2):
        push(i, j)
    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        pending.discard((i, j))
        lcm = lms[i].lcm(lms[j])
        if lms[i].gcd(lms[j]).deg == 0:
            continue  # product criterion
        skip = False
        for k in range(len(G)):
            if k in (i, j) or not lms[k].divides(lcm):
                continue
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a not in pending and b not in pending:
                skip = True  # chain criterion
                break
        if skip:
            continue
        r = reduce_full(_spoly(G[i], G[j], order, field), G, order)
        if r.is_zero():
            continue
        G.append(r)
        lms.append(order_lm(r, order))
        for k in range(len(G) - 1):
            push(k, len(G) - 1)
    return GroebnerBasis(G, field, reduced=False, order=order).reduce()


# --- degree suggestion -------------------------------------------------------

def suggest_degree(n_x, n_y, m, max_degree=30):
    """Heuristic D for matrix_f5 from the Hilbert bi-series: grow a greedy
    generic staircase degree by degree and stop once a degree introduces
    no new leading monomials."""
    from .hilbert_series import hs_closed_form, univariate_hs

    trunc = (max_degree, max_degree)
    hs = hs_closed_form(n_x, n_y, m, trunc)
    uni = univariate_hs(hs)
    lay = VariableLayout(n_x, n_y)
    chosen = []
    for d in range(2, max_degree + 1):
        monos = enumerate_monomials(lay, "all", None, d)
        dim_id = len(monos) - uni[d]
        covered = sum(1 for mm in monos if any(c.divides(mm) for c in chosen))
        need = dim_id - covered
        if need <= 0:
            return d
        take = [mm for mm in monos if not any(c.divides(mm) for c in chosen)]
        chosen.extend(take[:need])
    return max_degree


# --- affine instrumentation ---------------------------------------------------

def affine_rtz(F, D):
    """Count signature reductions to zero for an affine system by
    cumulative degree-truncated Macaulay elimination with the classical
    criterion.  A regular affine sequence yields zero."""
    if not F.layout.affine:
        raise FlavorError("affine_rtz expects an affine system")
    field = F.field
    p = field.p
    lay = F.layout
    m = len(F.polys)
    kept = {i: [] for i in range(1, m + 1)}  # alive signature monomials
    zero_sigs = set()
    rtz = []
    # lead monomials of the row space seen in any earlier step, with the
    # first generator stage producing them; affine reductions fall in
    # degree, so the criterion must accumulate across steps and test
    # divisibility rather than per-degree membership
    acc_lms = {}
    survivors_prev = {i: [] for i in range(1, m + 1)}

    def known_lead(t, i):
        return any(
            stage <= i - 1 and lm.divides(t) for lm, stage in acc_lms.items()
        )

    for d in range(2, D + 1):
        for i in range(1, m + 1):
            if d == 2:
                kept[i] = [Monomial.one(lay.nvars)]
                continue
            seen = set(kept[i])
            for e in survivors_prev.get(i, ()):
                lam = e.largest_var()
                for k in range(max(lam, 0), lay.nvars):
                    t = e.mul_var(k)
                    if t in seen:
                        continue
                    seen.add(t)
                    if known_lead(t, i):
                        continue
                    kept[i].append(t)
        # full rebuild: all alive rows in signature order, columns deg <= d
        columns = []
        for e in range(d + 1):
            columns.extend(enumerate_monomials(lay, "all", None, e))
        columns.sort(key=lambda mm: mm.key, reverse=True)
        col_index = {mm: j for j, mm in enumerate(columns)}
        pivots = {}
        rows = []
        lm_stage = {}
        survivors = {i: [] for i in range(1, m + 1)}
        for i in range(1, m + 1):
            f = F.polys[i - 1]
            for t in sorted(kept[i], key=lambda mm: mm.key):
                if (i, t) in zero_sigs:
                    continue
                row = np.zeros(len(columns), dtype=np.int64)
                for mm, c in f.terms:
                    row[col_index[t * mm]] = c
                nz = np.nonzero(row)[0]
                lead = int(nz[0]) if nz.size else -1
                while lead >= 0 and lead in pivots:
                    row = (row - row[lead] * rows[pivots[lead]]) % p
                    nz = np.nonzero(row[lead:])[0]
                    lead = int(nz[0]) + lead if nz.size else -1
                if lead < 0:
                    zero_sigs.add((i, t))
                    rtz.append((Signature(i, t), d))
                    continue
                row = row * field.inv(int(row[lead])) % p
                pivots[lead] = len(rows)
                rows.append(row)
                lm = columns[lead]
                if lm not in lm_stage:
                    lm_stage[lm] = i
                if t.deg == d - 2:
                    survivors[i].append(t)
        for lm, stage in lm_stage.items():
            if lm not in acc_lms or stage < acc_lms[lm]:
                acc_lms[lm] = stage
        survivors_prev = survivors
    return rtz
