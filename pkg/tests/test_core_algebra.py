"""Monomial order, polynomial arithmetic, layouts, parsing, and generators."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bilinear_gb.core_algebra import (
    AlgebraError,
    FlavorError,
    LayoutMismatch,
    Monomial,
    ParseError,
    Polynomial,
    PolySystem,
    PrimeField,
    VariableLayout,
    bihomogenize,
    count_monomials,
    dehomogenize,
    enumerate_bidegree,
    enumerate_monomials,
    format_poly,
    format_system,
    jacobian_x,
    jacobian_y,
    parse_poly,
    parse_system,
    random_affine_system,
    random_system,
)

F = PrimeField()


def test_default_prime_is_prime():
    p = F.p
    assert p == 65521
    assert all(p % q for q in range(2, 300))


def test_prime_field_rejects_composites():
    with pytest.raises(AlgebraError):
        PrimeField(65520)


def test_field_inverse():
    for a in (1, 2, 17, 65520):
        assert F.mul(a, F.inv(a)) == 1
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


exps3 = st.tuples(*([st.integers(0, 4)] * 3))


@given(exps3, exps3)
def test_grevlex_degree_first(a, b):
    ma, mb = Monomial(a), Monomial(b)
    if ma.deg > mb.deg:
        assert ma > mb


@given(exps3, exps3, exps3)
def test_grevlex_multiplicative(a, b, c):
    ma, mb, mc = Monomial(a), Monomial(b), Monomial(c)
    if ma < mb:
        assert ma * mc < mb * mc


@given(exps3, exps3)
def test_divisibility_and_quotient(a, b):
    ma, mb = Monomial(a), Monomial(b)
    prod = ma * mb
    assert ma.divides(prod)
    assert prod / ma == mb
    g = ma.gcd(mb)
    l = ma.lcm(mb)
    assert g * l == ma * mb


def test_grevlex_frozen_degree2_order():
    # grevlex on k[x0,x1,x2], degree 2, largest first: ties broken by the
    # rightmost differing exponent, larger exponent there losing
    lay = VariableLayout(2, 1)  # x block has x0,x1,x2; enumerate it alone
    monos = enumerate_monomials(lay, "x", 2, 2)
    names = []
    for m in monos:
        names.append(
            "*".join(
                "%s%s" % (lay.names[i], "^%d" % e if e > 1 else "")
                for i, e in enumerate(m.exps)
                if e
            )
        )
    assert names == ["x0^2", "x0*x1", "x1^2", "x0*x2", "x1*x2", "x2^2"]


def test_order_rejects_layout_mismatch():
    with pytest.raises(LayoutMismatch):
        Monomial((1, 0)) < Monomial((1, 0, 0))


def test_enumerate_counts():
    lay = VariableLayout(3, 2)
    for d in range(5):
        monos = enumerate_monomials(lay, "all", None, d)
        assert len(monos) == count_monomials(lay.nvars - 1, d)
        assert monos == sorted(monos, reverse=True)
        assert len(set(monos)) == len(monos)


def test_enumerate_bidegree_counts():
    lay = VariableLayout(2, 3)
    for d1 in range(4):
        for d2 in range(4):
            got = enumerate_bidegree(lay, d1, d2)
            assert len(got) == count_monomials(2, d1) * count_monomials(3, d2)
            for m in got:
                assert lay.bidegree(m.exps) == (d1, d2)


coeffs = st.lists(
    st.tuples(exps3, st.integers(1, 65520)), min_size=0, max_size=6
)


def poly_of(pairs):
    d = {}
    for e, c in pairs:
        d[Monomial(e)] = (d.get(Monomial(e), 0) + c) % F.p
    return Polynomial.from_dict(d, F)


@given(coeffs, coeffs)
def test_add_sub_roundtrip(pa, pb):
    f, g = poly_of(pa), poly_of(pb)
    assert (f + g) - g == f


@given(coeffs, coeffs)
def test_mul_commutes(pa, pb):
    f, g = poly_of(pa), poly_of(pb)
    assert f * g == g * f


@given(coeffs)
@settings(max_examples=40)
def test_derivative_product_rule(pa):
    f = poly_of(pa)
    g = poly_of([((1, 1, 0), 3), ((0, 0, 2), 5)])
    lhs = (f * g).derivative(0)
    rhs = f.derivative(0) * g + f * g.derivative(0)
    assert lhs == rhs


def test_euler_identity_bilinear():
    # for f of bidegree (1,1): sum_i x_i df/dx_i = f and likewise in y
    lay = VariableLayout(3, 2)
    Fs = random_system(lay, 4, seed=11)
    jx, jy = jacobian_x(Fs), jacobian_y(Fs)
    for r, f in enumerate(Fs.polys):
        sx = Polynomial.zero(F)
        for i in range(lay.x_count):
            sx += jx[r][i].mul_term(Monomial.var(i, lay.nvars))
        sy = Polynomial.zero(F)
        for j in range(lay.y_count):
            sy += jy[r][j].mul_term(Monomial.var(lay.x_count + j, lay.nvars))
        assert sx == f
        assert sy == f


def test_random_system_deterministic_and_bilinear():
    lay = VariableLayout(2, 3)
    A = random_system(lay, 5, seed=3)
    B = random_system(lay, 5, seed=3)
    C = random_system(lay, 5, seed=4)
    assert all(a == b for a, b in zip(A.polys, B.polys))
    assert any(a != c for a, c in zip(A.polys, C.polys))
    for f in A.polys:
        assert f.is_bihomogeneous(lay, (1, 1))


def test_dehomogenize_bihomogenize_roundtrip():
    lay = VariableLayout(2, 2)
    Fs = random_system(lay, 4, seed=9)
    back = bihomogenize(dehomogenize(Fs))
    assert back.layout == lay
    assert all(a == b for a, b in zip(back.polys, Fs.polys))


def test_flavor_validation():
    lay = VariableLayout(2, 2)
    affine = random_affine_system(2, 2, 4, seed=1)
    with pytest.raises(FlavorError):
        PolySystem(affine.polys, affine.layout, F, "homogeneous-bilinear")
    assert affine.flavor == "affine-bilinear"
    assert affine.layout.nvars == lay.nvars - 2


def test_parse_format_roundtrip():
    lay = VariableLayout(3, 2)
    Fs = random_system(lay, 4, seed=21)
    text = format_system(Fs)
    back = parse_system(text, lay, F, "homogeneous-bilinear")
    assert all(a == b for a, b in zip(back.polys, Fs.polys))


def test_parse_rejects_garbage():
    lay = VariableLayout(1, 1)
    with pytest.raises(ParseError):
        parse_poly("x0 + $", lay, F)
    with pytest.raises(ParseError):
        parse_poly("z9", lay, F)


def test_parse_accepts_minus_and_powers():
    lay = VariableLayout(1, 1)
    f = parse_poly("x0^2*y1 - 3*x1", lay, F)
    assert format_poly(f, lay) == "x0^2*y1 + %d*x1" % (F.p - 3)
