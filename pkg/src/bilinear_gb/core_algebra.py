"""Exact arithmetic over GF(p) and sparse multivariate polynomials.

Variables come in two blocks, x then y, with x_0 the largest variable.
The monomial order everywhere is graded reverse lexicographic: compare
total degree first, then the rightmost differing exponent, where a
*larger* exponent there makes the monomial *smaller*.
"""

import math
import re

import numpy as np

DEFAULT_PRIME = 65521


class AlgebraError(Exception):
    """Base for structural errors raised by this package."""


class LayoutMismatch(AlgebraError):
    pass


class FlavorError(AlgebraError):
    pass


class ParseError(AlgebraError):
    pass


def _is_prime(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin, valid for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        v = pow(a, d, n)
        if v in (1, n - 1):
            continue
        for _ in range(s - 1):
            v = v * v % n
            if v == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """Arithmetic helpers modulo a prime p; elements are ints in [0, p)."""

    def __init__(self, p=DEFAULT_PRIME):
        if not _is_prime(p):
            raise AlgebraError("modulus %d is not prime" % p)
        self.p = p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.p)
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return "PrimeField(%d)" % self.p


class VariableLayout:
    """Two blocks of variables, x before y.

    Homogeneous flavors use x_0..x_{n_x} and y_0..y_{n_y}; affine flavors
    drop the last variable of each block (x_0..x_{n_x-1}, y_0..y_{n_y-1}).
    """

    def __init__(self, n_x, n_y, affine=False):
        if n_x < 1 or n_y < 1:
            raise LayoutMismatch("need at least one variable per block")
        self.n_x = n_x
        self.n_y = n_y
        self.affine = affine
        self.x_count = n_x if affine else n_x + 1
        self.y_count = n_y if affine else n_y + 1
        self.nvars = self.x_count + self.y_count
        self.names = tuple(
            ["x%d" % i for i in range(self.x_count)]
            + ["y%d" % i for i in range(self.y_count)]
        )
        self._index = {nm: i for i, nm in enumerate(self.names)}

    def index_of(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise LayoutMismatch("unknown variable %r" % name) from None

    def block_of(self, i):
        return "x" if i < self.x_count else "y"

    def block_range(self, block):
        """Half-open index range of a block ('x', 'y', or 'all')."""
        if block == "x":
            return 0, self.x_count
        if block == "y":
            return self.x_count, self.nvars
        if block == "all":
            return 0, self.nvars
        raise LayoutMismatch("unknown block %r" % block)

    def bidegree(self, exps):
        return sum(exps[: self.x_count]), sum(exps[self.x_count :])

    def __eq__(self, other):
        return (
            isinstance(other, VariableLayout)
            and (self.n_x, self.n_y, self.affine)
            == (other.n_x, other.n_y, other.affine)
        )

    def __hash__(self):
        return hash((self.n_x, self.n_y, self.affine))

    def __repr__(self):
        return "VariableLayout(n_x=%d, n_y=%d, affine=%r)" % (
            self.n_x,
            self.n_y,
            self.affine,
        )


class Monomial:
    """Immutable exponent vector with a cached grevlex sort key."""

    __slots__ = ("exps", "deg", "_key", "_hash")

    def __init__(self, exps):
        self.exps = tuple(exps)
        self.deg = sum(self.exps)
        # larger key == larger monomial under grevlex (flat tuple of ints)
        self._key = (self.deg,) + tuple(-e for e in reversed(self.exps))
        self._hash = hash(self.exps)

    @classmethod
    def one(cls, nvars):
        return cls((0,) * nvars)

    @classmethod
    def var(cls, i, nvars):
        e = [0] * nvars
        e[i] = 1
        return cls(e)

    @property
    def key(self):
        return self._key

    def __mul__(self, other):
        return Monomial(tuple(a + b for a, b in zip(self.exps, other.exps)))

    def mul_var(self, i):
        e = list(self.exps)
        e[i] += 1
        return Monomial(e)

    def divides(self, other):
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def __truediv__(self, other):
        q = tuple(a - b for a, b in zip(self.exps, other.exps))
        if any(e < 0 for e in q):
            raise AlgebraError("monomial quotient is not polynomial")
        return Monomial(q)

    def lcm(self, other):
        return Monomial(tuple(max(a, b) for a, b in zip(self.exps, other.exps)))

    def gcd(self, other):
        return Monomial(tuple(min(a, b) for a, b in zip(self.exps, other.exps)))

    def largest_var(self):
        """Largest variable index with positive exponent, or -1 for 1."""
        for i in range(len(self.exps) - 1, -1, -1):
            if self.exps[i]:
                return i
        return -1

    def __eq__(self, other):
        return isinstance(other, Monomial) and other.exps == self.exps

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self._cmp_key(other) < other._key

    def __le__(self, other):
        return self._cmp_key(other) <= other._key

    def __gt__(self, other):
        return self._cmp_key(other) > other._key

    def __ge__(self, other):
        return self._cmp_key(other) >= other._key

    def _cmp_key(self, other):
        if len(other.exps) != len(self.exps):
            raise LayoutMismatch("comparing monomials over different layouts")
        return self._key

    def __repr__(self):
        return "Monomial(%r)" % (self.exps,)


def grevlex_cmp(a, b):
    """Three-way grevlex comparison of two monomials (-1, 0, or 1)."""
    ka, kb = a._cmp_key(b), b.key
    return (ka > kb) - (ka < kb)


class Polynomial:
    """Sparse polynomial over GF(p); terms stored descending in grevlex."""

    __slots__ = ("terms", "field")

    def __init__(self, terms, field):
        # terms: iterable of (Monomial, coeff) with distinct monomials
        self.terms = tuple(sorted(terms, key=lambda t: t[0].key, reverse=True))
        self.field = field

    @classmethod
    def zero(cls, field):
        return cls((), field)

    @classmethod
    def from_dict(cls, d, field):
        p = field.p
        return cls([(m, c % p) for m, c in d.items() if c % p], field)

    @classmethod
    def constant(cls, c, nvars, field):
        return cls.from_dict({Monomial.one(nvars): c}, field)

    def is_zero(self):
        return not self.terms

    @property
    def lm(self):
        return self.terms[0][0]

    @property
    def lc(self):
        return self.terms[0][1]

    def degree(self):
        return max((m.deg for m, _ in self.terms), default=-1)

    def as_dict(self):
        return dict(self.terms)

    def __add__(self, other):
        d = dict(self.terms)
        p = self.field.p
        for m, c in other.terms:
            v = (d.get(m, 0) + c) % p
            if v:
                d[m] = v
            else:
                d.pop(m, None)
        return Polynomial(d.items(), self.field)

    def __sub__(self, other):
        return self + other.scale(self.field.p - 1)

    def __neg__(self):
        return self.scale(self.field.p - 1)

    def scale(self, c):
        p = self.field.p
        c %= p
        if c == 0:
            return Polynomial.zero(self.field)
        return Polynomial([(m, co * c % p) for m, co in self.terms], self.field)

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lc))

    def mul_term(self, mono, coeff=1):
        p = self.field.p
        coeff %= p
        if coeff == 0:
            return Polynomial.zero(self.field)
        return Polynomial(
            [(m * mono, c * coeff % p) for m, c in self.terms], self.field
        )

    def __mul__(self, other):
        d = {}
        p = self.field.p
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = m1 * m2
                d[m] = (d.get(m, 0) + c1 * c2) % p
        return Polynomial([(m, c) for m, c in d.items() if c], self.field)

    def derivative(self, var):
        d = {}
        p = self.field.p
        for m, c in self.terms:
            e = m.exps[var]
            if e:
                ex = list(m.exps)
                ex[var] -= 1
                d[Monomial(ex)] = e * c % p
        return Polynomial([(m, c) for m, c in d.items() if c], self.field)

    def substitute_one(self, var):
        """Set variable `var` to 1 and drop it from the exponent vectors."""
        d = {}
        p = self.field.p
        for m, c in self.terms:
            ex = m.exps[:var] + m.exps[var + 1 :]
            mm = Monomial(ex)
            v = (d.get(mm, 0) + c) % p
            if v:
                d[mm] = v
            else:
                d.pop(mm, None)
        return Polynomial(d.items(), self.field)

    def is_homogeneous(self, degree=None):
        if self.is_zero():
            return True
        degs = {m.deg for m, _ in self.terms}
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    def bidegrees(self, layout):
        return {layout.bidegree(m.exps) for m, _ in self.terms}

    def is_bihomogeneous(self, layout, bidegree=None):
        if self.is_zero():
            return True
        bids = self.bidegrees(layout)
        if len(bids) != 1:
            return False
        return bidegree is None or bids == {tuple(bidegree)}

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and other.field == self.field
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        return "Polynomial(%r)" % (self.terms,)


FLAVORS = ("homogeneous-bilinear", "bihomogeneous", "affine-bilinear", "affine")


class PolySystem:
    """A list of polynomials sharing a layout, a field, and a flavor."""

    def __init__(self, polys, layout, field, flavor):
        if flavor not in FLAVORS:
            raise FlavorError("unknown flavor %r" % flavor)
        polys = tuple(polys)
        for f in polys:
            if f.terms and len(f.terms[0][0].exps) != layout.nvars:
                raise LayoutMismatch("polynomial does not match layout")
        if flavor in ("homogeneous-bilinear", "bihomogeneous"):
            if layout.affine:
                raise FlavorError("homogeneous flavor on affine layout")
            for f in polys:
                if not f.is_bihomogeneous(layout):
                    raise FlavorError("generator is not bihomogeneous")
            if flavor == "homogeneous-bilinear":
                for f in polys:
                    if not f.is_zero() and not f.is_bihomogeneous(layout, (1, 1)):
                        raise FlavorError("generator is not bilinear")
        else:
            if not layout.affine:
                raise FlavorError("affine flavor on homogeneous layout")
            if flavor == "affine-bilinear":
                for f in polys:
                    for m, _ in f.terms:
                        dx, dy = layout.bidegree(m.exps)
                        if dx > 1 or dy > 1:
                            raise FlavorError("term exceeds bidegree (1,1)")
        self.polys = polys
        self.layout = layout
        self.field = field
        self.flavor = flavor

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, i):
        return self.polys[i]

    def __iter__(self):
        return iter(self.polys)

    def prefix(self, m):
        return PolySystem(self.polys[:m], self.layout, self.field, self.flavor)


def enumerate_monomials(layout, block, max_var, degree):
    """All degree-`degree` monomials in the first variables of a block.

    `block` is 'x', 'y', or 'all'; `max_var` is the largest in-block
    variable index allowed (ignored for 'all').  Returned in descending
    grevlex order.  A negative degree yields the empty list.
    """
    if degree < 0:
        return []
    lo, hi = layout.block_range(block)
    if block == "all":
        width = hi - lo
    else:
        if max_var < 0:
            return [] if degree > 0 else [Monomial.one(layout.nvars)]
        width = min(max_var + 1, hi - lo)
    out = []

    def rec(pos, rem, acc):
        if pos == width - 1:
            out.append(acc + [rem])
            return
        for e in range(rem + 1):
            rec(pos + 1, rem - e, acc + [e])

    if width == 0:
        return [] if degree > 0 else [Monomial.one(layout.nvars)]
    rec(0, degree, [])
    monos = []
    for e in out:
        full = [0] * layout.nvars
        full[lo : lo + width] = e
        monos.append(Monomial(full))
    monos.sort(key=lambda m: m.key, reverse=True)
    return monos


def enumerate_bidegree(layout, d1, d2):
    """All monomials of bidegree (d1, d2), descending grevlex."""
    xs = enumerate_monomials(layout, "x", layout.x_count - 1, d1)
    ys = enumerate_monomials(layout, "y", layout.y_count - 1, d2)
    monos = [a * b for a in xs for b in ys]
    monos.sort(key=lambda m: m.key, reverse=True)
    return monos


def count_monomials(nvars_minus_one, degree):
    """Number of degree-d monomials in variables z_0..z_n (n+1 of them)."""
    if degree < 0 or nvars_minus_one < 0:
        return 0
    return math.comb(nvars_minus_one + degree, degree)


def jacobian_block(system, block):
    """Partial-derivative matrix of the system w.r.t. one variable block.

    Rows follow the generators, columns the block variables.
    """
    lo, hi = system.layout.block_range(block)
    return [[f.derivative(v) for v in range(lo, hi)] for f in system.polys]


def jacobian_x(system):
    return jacobian_block(system, "x")


def jacobian_y(system):
    return jacobian_block(system, "y")


def dehomogenize(system):
    """Set x_{n_x} = y_{n_y} = 1 and drop those variables."""
    lay = system.layout
    if lay.affine:
        raise FlavorError("system is already affine")
    new_lay = VariableLayout(lay.n_x, lay.n_y, affine=True)
    last_y = lay.nvars - 1
    last_x = lay.x_count - 1
    polys = [f.substitute_one(last_y).substitute_one(last_x) for f in system.polys]
    flavor = (
        "affine-bilinear" if system.flavor == "homogeneous-bilinear" else "affine"
    )
    return PolySystem(polys, new_lay, system.field, flavor)


def bihomogenize(system):
    """Right inverse of dehomogenize for affine bilinear systems."""
    lay = system.layout
    if system.flavor != "affine-bilinear":
        raise FlavorError("bihomogenize expects an affine bilinear system")
    new_lay = VariableLayout(lay.n_x, lay.n_y, affine=False)
    xc = lay.x_count
    polys = []
    for f in system.polys:
        d = {}
        for m, c in f.terms:
            dx, dy = lay.bidegree(m.exps)
            ex = list(m.exps[:xc]) + [1 - dx] + list(m.exps[xc:]) + [1 - dy]
            d[Monomial(ex)] = c
        polys.append(Polynomial(d.items(), system.field))
    return PolySystem(polys, new_lay, system.field, "homogeneous-bilinear")


def random_system(layout, m, seed, field=None, bidegree=(1, 1)):
    """m random bihomogeneous polynomials with uniform coefficients.

    Coefficients are drawn independently and uniformly from [0, p) with
    numpy's PCG64 generator keyed by `seed`, one draw per monomial of the
    requested bidegree, in descending grevlex order.
    """
    if layout.affine:
        raise FlavorError("random_system draws homogeneous systems")
    field = field or PrimeField()
    rng = np.random.Generator(np.random.PCG64(seed))
    monos = enumerate_bidegree(layout, *bidegree)
    polys = []
    for _ in range(m):
        coeffs = rng.integers(0, field.p, size=len(monos))
        polys.append(
            Polynomial([(mo, int(c)) for mo, c in zip(monos, coeffs) if c], field)
        )
    flavor = "homogeneous-bilinear" if tuple(bidegree) == (1, 1) else "bihomogeneous"
    return PolySystem(polys, layout, field, flavor)


def random_affine_system(n_x, n_y, m, seed, field=None):
    """Random affine bilinear system: a random bilinear system, dehomogenized."""
    return dehomogenize(random_system(VariableLayout(n_x, n_y), m, seed, field))


# --- text format -----------------------------------------------------------
# term: [coeff][*]x0^2*y1 ; terms joined by " + ", printed in stored order.

def format_monomial(mono, layout):
    parts = [
        "%s^%d" % (layout.names[i], e) if e > 1 else layout.names[i]
        for i, e in enumerate(mono.exps)
        if e
    ]
    return "*".join(parts)


def format_poly(f, layout):
    if f.is_zero():
        return "0"
    parts = []
    for m, c in f.terms:
        ms = format_monomial(m, layout)
        if not ms:
            parts.append(str(c))
        elif c == 1:
            parts.append(ms)
        else:
            parts.append("%d*%s" % (c, ms))
    return " + ".join(parts)


_TERM_RE = re.compile(r"^(\d+)?((?:\*?[xy]\d+(?:\^\d+)?)*)$")


def parse_poly(text, layout, field):
    """Parse the format emitted by format_poly; also accepts '-' joins."""
    text = text.strip()
    if not text:
        raise ParseError("empty polynomial string")
    text = text.replace("-", "+-").replace(" ", "")
    d = {}
    p = field.p
    for raw in text.split("+"):
        if not raw:
            continue
        sign = 1
        if raw.startswith("-"):
            sign, raw = -1, raw[1:]
        mt = _TERM_RE.match(raw)
        if not mt or (not mt.group(1) and not mt.group(2)):
            raise ParseError("bad term %r" % raw)
        coeff = int(mt.group(1)) if mt.group(1) else 1
        exps = [0] * layout.nvars
        for var in re.findall(r"[xy]\d+(?:\^\d+)?", mt.group(2) or ""):
            if "^" in var:
                name, e = var.split("^")
                e = int(e)
            else:
                name, e = var, 1
            exps[layout.index_of(name)] += e
        m = Monomial(exps)
        d[m] = (d.get(m, 0) + sign * coeff) % p
    return Polynomial([(m, c) for m, c in d.items() if c], field)


def format_system(system):
    return "\n".join(format_poly(f, system.layout) for f in system.polys)


def parse_system(text, layout, field, flavor):
    polys = [
        parse_poly(line, layout, field)
        for line in text.strip().splitlines()
        if line.strip()
    ]
    return PolySystem(polys, layout, field, flavor)
