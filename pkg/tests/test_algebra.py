import random
from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gwnull.algebra import (
    GF,
    PARAMETER,
    QQ,
    BudgetExceeded,
    Field,
    FieldMismatch,
    PolySystem,
    Polynomial,
    Registry,
    buchberger,
    format_poly,
    format_system,
    ideal_contains_one,
    is_groebner,
    is_prime,
    monomial_cmp,
    normal_form,
    parse_poly,
    parse_system,
    random_prime,
    specialize,
)


def ring(names, f=QQ):
    reg = Registry.from_names(names)
    return reg, [reg.var(nm, f) for nm in names]


# ------------------------------------------------------------------ fields


def test_is_prime_small_and_large():
    small = [p for p in range(200) if is_prime(p)]
    assert small == [p for p in range(200) if p > 1 and all(p % q for q in range(2, p))]
    assert is_prime(2**61 - 1)
    assert not is_prime((2**31 - 1) * (2**31 + 11))
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


def test_random_prime_range():
    rng = random.Random(3)
    for _ in range(5):
        p = random_prime(rng)
        assert 2**60 <= p < 2**61 and is_prime(p)


def test_field_parse_and_inverse():
    assert Field.parse("QQ") == QQ
    F = Field.parse("GF(7)")
    assert F == GF(7)
    assert F(3) * F.inv(F(3)) % 7 == 1
    with pytest.raises(ValueError):
        GF(8)


# -------------------------------------------------------------- arithmetic


def test_arithmetic_examples():
    reg, (x, y) = ring(["x", "y"])
    zero = Polynomial.zero(reg)
    assert x + zero == x
    assert (x + y) * (x - y) == x**2 - y**2
    F5 = GF(5)
    x5 = reg.var("x", F5)
    assert (2 * x5) * (3 * x5) == x5**2


def test_field_mismatch():
    reg, (x,) = ring(["x"])
    with pytest.raises(FieldMismatch):
        x + reg.var("x", GF(5))


def test_rational_coefficients_in_lowest_terms():
    reg, (x,) = ring(["x"])
    p = x * Fraction(2, 4)
    assert p.leading_term()[1] == Fraction(1, 2)


@st.composite
def polys(draw, reg, f):
    nterms = draw(st.integers(0, 4))
    d = {}
    for _ in range(nterms):
        expo = draw(st.lists(st.integers(0, 2), min_size=len(reg), max_size=len(reg)))
        mono = tuple((v, e) for v, e in enumerate(expo) if e)
        d[mono] = draw(st.integers(-5, 5))
    return Polynomial(reg, f, d)


REG3 = Registry.from_names(["x", "y", "z"])


@pytest.mark.parametrize("f", [QQ, GF(7)], ids=["QQ", "GF7"])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_ring_axioms(f, data):
    p, q, r = (data.draw(polys(REG3, f)) for _ in range(3))
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == Polynomial.zero(REG3, f)


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_terms_strictly_decreasing(data):
    p = data.draw(polys(REG3, QQ))
    ms = [m for m, _ in p.terms]
    order = REG3.order
    assert all(order.cmp(a, b) > 0 for a, b in zip(ms, ms[1:]))
    assert all(c != 0 for _, c in p.terms)


def test_monomial_cmp_examples():
    reg = Registry.from_names(["x", "y"])
    order = reg.order
    x2, xy, x, y2 = ((0, 2),), ((0, 1), (1, 1)), ((0, 1),), ((1, 2),)
    assert monomial_cmp(xy, xy, order) == 0
    assert monomial_cmp(x2, xy, order) > 0
    assert monomial_cmp(x, y2, order) < 0


def test_grevlex_tie_break():
    # same degree, grevlex: x*z < y^2 when x > y > z
    reg = Registry.from_names(["x", "y", "z"])
    assert monomial_cmp(((0, 1), (2, 1)), ((1, 2),), reg.order) < 0


# --------------------------------------------------------------- groebner


def test_normal_form_examples():
    reg, (x, y) = ring(["x", "y"])
    p = x**2 * y + 3 * y
    assert normal_form(p, [p]).is_zero()
    assert normal_form(x**2, [x]).is_zero()
    assert normal_form(x + y, [x - y]) == 2 * y


def test_buchberger_examples():
    reg, (x, y) = ring(["x", "y"], GF(101))
    one = Polynomial.constant(reg, 1, GF(101))
    assert buchberger([one]) == [one]
    gb = buchberger([x - 1, x])
    assert gb == [one]
    gb = buchberger([x**2 - y, y**2 - x])
    assert is_groebner(gb)


def test_ideal_contains_one_examples():
    reg, (x, y) = ring(["x", "y"], GF(101))
    one = Polynomial.constant(reg, 1, GF(101))
    assert ideal_contains_one(PolySystem(reg, [one]))
    assert not ideal_contains_one(PolySystem(reg, [x]))
    assert ideal_contains_one(PolySystem(reg, [x * y - 1, x]))


def test_ideal_contains_one_rejects_parameters():
    reg = Registry()
    a = reg.add("alpha", kind=PARAMETER)
    x = reg.add("x")
    p = Polynomial.variable(reg, a) * Polynomial.variable(reg, x) - 1
    with pytest.raises(ValueError):
        ideal_contains_one(PolySystem(reg, [p], [a]))


def test_budget_exceeded():
    reg, xs = ring([f"x{i}" for i in range(6)], GF(32003))
    gens = [xs[i] ** 2 * xs[(i + 1) % 6] - xs[(i + 2) % 6] ** 3 + 1 for i in range(6)]
    with pytest.raises(BudgetExceeded):
        buchberger(gens, budget=3)


def _monic_set(exprs, syms):
    out = set()
    for e in exprs:
        poly = sympy.Poly(e, *syms)
        out.add(sympy.Poly(poly.as_expr() / poly.LC(order="grevlex"), *syms))
    return out


def test_reduced_basis_matches_sympy_over_qq():
    reg, (x, y, z) = ring(["x", "y", "z"])
    gens = [x**2 + y * z - 2, x * y - z + 1, y**2 - 3 * x * z]
    syms = sympy.symbols("x y z")
    ours = buchberger(gens)
    assert is_groebner(ours)
    ours_e = [sympy.sympify(format_poly(g).replace("^", "**")) for g in ours]
    theirs = sympy.groebner([sympy.sympify(format_poly(g).replace("^", "**")) for g in gens], *syms, order="grevlex")
    assert _monic_set(ours_e, syms) == _monic_set(theirs.exprs, syms)


def test_membership_of_combinations():
    rng = random.Random(11)
    F = GF(10007)
    reg, (x, y, z) = ring(["x", "y", "z"], F)
    gens = [x * y - z, y**2 - x + 1, z**2 * x - y]
    gb = buchberger(gens)
    assert is_groebner(gb)
    mons = [Polynomial.constant(reg, 1, F), x, y, z, x * y, z**2]
    for _ in range(10):
        member = Polynomial.zero(reg, F)
        for g in gens:
            member = member + g * sum((m * rng.randrange(1, 50) for m in rng.sample(mons, 2)), Polynomial.zero(reg, F))
        assert normal_form(member, gb).is_zero()
    assert not normal_form(x + 2, gb).is_zero()


def _roots_exist(polys, k, p):
    for pt in product(range(p), repeat=k):
        if all(q.evaluate(dict(enumerate(pt))) % p == 0 for q in polys):
            return True
    return False


def test_root_found_implies_not_unit():
    rng = random.Random(5)
    checked = 0
    for trial in range(60):
        p = rng.choice([2, 3, 5, 7])
        k = rng.randint(1, 3)
        F = GF(p)
        reg, xs = ring([f"v{i}" for i in range(k)], F)
        polys_ = []
        for _ in range(rng.randint(1, 3)):
            d = {}
            for _ in range(rng.randint(1, 3)):
                mono = tuple((v, e) for v in range(k) if (e := rng.randint(0, 2)))
                d[mono] = rng.randrange(p)
            polys_.append(Polynomial(reg, F, d))
        contains = ideal_contains_one(PolySystem(reg, polys_))
        if _roots_exist(polys_, k, p):
            checked += 1
            assert not contains
    assert checked > 10


# --------------------------------------------------------------- specialize


def test_specialize_examples():
    reg = Registry()
    a = reg.add("alpha", kind=PARAMETER)
    x = reg.add("x")
    X = Polynomial.variable(reg, x)
    A = Polynomial.variable(reg, a)
    sys = PolySystem(reg, [X * X - 1], [])
    assert specialize(sys, {}).polys == sys.polys
    sys = PolySystem(reg, [A * X - 1], [a])
    out = specialize(sys, {a: 0})
    assert out.polys == [Polynomial.constant(reg, -1)]
    assert ideal_contains_one(out)
    out = specialize(sys, {a: 2}, GF(7))
    assert out.polys == [2 * Polynomial.variable(reg, x, GF(7)) - 1]
    with pytest.raises(ValueError):
        specialize(sys, {})


# ---------------------------------------------------------------------- io


def test_format_and_parse_round_trip():
    reg, (x, y) = ring(["x", "y"])
    p = 3 * x**2 * y - y + Fraction(1, 2)
    text = format_poly(p)
    assert parse_poly(text, reg, QQ) == p
    sys_text = format_system([p, x - 1], reg, QQ)
    back = parse_system(sys_text)
    assert [format_poly(q) for q in back.polys] == [format_poly(p), format_poly(x - 1)]
    assert format_poly(Polynomial.zero(reg)) == "0"


def test_parse_rejects_unknown_variable():
    reg, _ = ring(["x"])
    with pytest.raises(ValueError):
        parse_poly("2*zz", reg, QQ)


def test_parse_system_needs_header():
    with pytest.raises(ValueError):
        parse_system("x + 1\n")
