"""Exact arithmetic: ring axioms, tropical evaluation, exact division."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gencluster.exact import (
    InexactDivision,
    LaurentPoly,
    PolyContext,
    SFExpr,
    SubtractionFreeValue,
    TropicalValue,
    laurent_divexact,
    sf_eval,
    trop_add,
)

CTX = PolyContext(("x", "y", "z"))


def var(name, power=1):
    return LaurentPoly.var(CTX, name, power)


def const(v):
    return LaurentPoly.const(CTX, v)


@st.composite
def polys(draw):
    n_terms = draw(st.integers(0, 4))
    terms = {}
    for _ in range(n_terms):
        exp = tuple(draw(st.integers(-2, 2)) for _ in range(3))
        terms[exp] = Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 3)))
    return LaurentPoly(CTX, terms)


@given(polys(), polys(), polys())
@settings(max_examples=150, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * const(1) == a
    assert a + LaurentPoly.zero(CTX) == a


@given(polys(), polys())
@settings(max_examples=150, deadline=None)
def test_divexact_inverts_multiplication(a, b):
    if b.is_zero():
        return
    assert laurent_divexact(a * b, b) == a


def test_divexact_examples():
    # factorization
    assert laurent_divexact(var("x") * var("x") - const(1), var("x") - const(1)) == var(
        "x"
    ) + const(1)
    # identity
    p = var("x") + const(2) * var("y", -1)
    assert laurent_divexact(p, const(1)) == p
    # monomial cancellation
    num = (var("y") * var("y") + var("z") * var("y") + const(1)) * var("x", -1)
    assert laurent_divexact(num, var("x", -1)) == var("y") * var("y") + var("z") * var(
        "y"
    ) + const(1)


def test_divexact_failure_carries_witness():
    with pytest.raises(InexactDivision) as err:
        laurent_divexact(var("x") + const(1), var("y") + const(1))
    assert not err.value.remainder.is_zero()


def test_trop_add_examples():
    ctx = PolyContext(("y1", "y2"))
    a = TropicalValue(ctx, (1, 0))      # y1
    b = TropicalValue(ctx, (1, -1))     # y1 y2^-1
    assert trop_add(a, b).exponents == (1, -1)
    zctx = PolyContext(("z",))
    one = TropicalValue.one(zctx)
    z = TropicalValue.generator(zctx, "z")
    assert (one + z + one).exponents == (0,)
    m = TropicalValue(ctx, (2, -3))
    assert trop_add(m, m) == m


def test_sf_eval_examples():
    ctx = PolyContext(("y1",))
    expr = (SFExpr.const(1) + SFExpr.var("y")) / SFExpr.var("y")
    out = sf_eval(expr, {"y": TropicalValue.generator(ctx, "y1")})
    assert out.exponents == (-1,)
    assert sf_eval(SFExpr.const(1) + SFExpr.var("y") * SFExpr.var("y"), {"y": Fraction(2)}) == 5
    # sum of z_s y^s with y = 1, d = 2, z_1 = 3
    y = SFExpr.var("y")
    expr2 = SFExpr.const(1) + SFExpr.const(3) * y + y ** 2
    assert sf_eval(expr2, {"y": Fraction(1)}) == 5


def test_sf_expr_rejects_subtraction():
    with pytest.raises(TypeError):
        SFExpr.var("y") - SFExpr.const(1)


@st.composite
def sf_exprs(draw, depth=0):
    if depth > 2 or draw(st.booleans()):
        if draw(st.booleans()):
            return SFExpr.var(draw(st.sampled_from(["u", "v"])))
        return SFExpr.const(draw(st.integers(1, 4)))
    op = draw(st.sampled_from(["add", "mul", "div"]))
    left = draw(sf_exprs(depth=depth + 1))
    right = draw(sf_exprs(depth=depth + 1))
    if op == "add":
        return left + right
    if op == "mul":
        return left * right
    return left / right


def _expand_sf(expr, ctx):
    """Expression -> subtraction-free numerator/denominator pair."""
    env = {
        "u": SubtractionFreeValue.generator(ctx, "u"),
        "v": SubtractionFreeValue.generator(ctx, "v"),
    }
    return sf_eval(expr, env)


@given(sf_exprs())
@settings(max_examples=120, deadline=None)
def test_tropical_matches_minplus_expansion(expr):
    ctx = PolyContext(("u", "v"))
    value = _expand_sf(expr, ctx)
    if len(value.num.terms) + len(value.den.terms) > 7:
        return
    trop = sf_eval(
        expr,
        {
            "u": TropicalValue.generator(ctx, "u"),
            "v": TropicalValue.generator(ctx, "v"),
        },
    )
    num_min = tuple(
        min(e[i] for e in value.num.terms) for i in range(2)
    )
    den_min = tuple(
        min(e[i] for e in value.den.terms) for i in range(2)
    )
    assert trop.exponents == tuple(a - b for a, b in zip(num_min, den_min))


def test_subtraction_free_canonical_content():
    ctx = PolyContext(("u",))
    u = LaurentPoly.var(ctx, "u")
    value = SubtractionFreeValue(const_ctx(ctx, 6) + 6 * u, const_ctx(ctx, 3))
    content_num = [c for c in value.num.terms.values()]
    content_den = [c for c in value.den.terms.values()]
    from math import gcd

    nums = [Fraction(c).numerator for c in content_num + content_den]
    dens = [Fraction(c).denominator for c in content_num + content_den]
    g = 0
    for nn in nums:
        g = gcd(g, abs(nn))
    assert g == 1 and all(dd == 1 for dd in dens)


def const_ctx(ctx, v):
    return LaurentPoly.const(ctx, v)


def test_subtraction_free_equality_cross_multiplied():
    ctx = PolyContext(("u",))
    u = LaurentPoly.var(ctx, "u")
    one = LaurentPoly.const(ctx, 1)
    a = SubtractionFreeValue(u * u - one * (-1) + u * 0, one)  # u^2 + 1
    b = SubtractionFreeValue((u * u + one) * (u + one), u + one)
    assert a == b


def test_canonical_string_sorted_lexicographically():
    p = var("y") + const(3) * var("x") + LaurentPoly.monomial(CTX, (1, 1, 0), Fraction(1, 2))
    # exponent vectors sort lexicographically: (0,1,0) < (1,0,0) < (1,1,0)
    assert p.canonical() == "1*y + 3*x + 1/2*x*y"
