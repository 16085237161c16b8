import random

import pytest
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from hilbert10.diophantine import Polynomial, parse_polynomial
from hilbert10.errors import (ArityMismatch, BudgetExhausted, IllFormedExpr, ParseError,
                              UnsupportedCoefficient)
from hilbert10.primrec import (ADD, MUL, Comp, Const, Proj, Rec, Succ, arity, evaluate,
                               parse_expr, polynomial_to_primrec)

from oracles import naive_poly_eval


class TestArity:
    def test_basic(self):
        assert arity(Succ()) == 1
        assert arity(Proj(3, 2)) == 3
        assert arity(Const(2, 7)) == 2
        assert arity(ADD) == 2 and arity(MUL) == 2

    @pytest.mark.parametrize("expr", [
        Comp(ADD, [Proj(2, 1), Proj(3, 1)]),    # inner arities differ
        Comp(ADD, [Proj(2, 1)]),                # outer wants two inners
        Proj(2, 3),
        Proj(2, 0),
        Rec(Proj(1, 1), Proj(2, 1)),            # step must have arity 3
    ])
    def test_ill_formed(self, expr):
        with pytest.raises(IllFormedExpr):
            arity(expr)


class TestEvaluate:
    def test_add(self):
        assert evaluate(ADD, [2, 3]) == 5

    def test_mul(self):
        assert evaluate(MUL, [4, 6]) == 24

    def test_const(self):
        assert evaluate(Const(2, 7), [100, 200]) == 7

    def test_nullary(self):
        assert evaluate(Const(0, 4), []) == 4

    def test_arity_mismatch(self):
        with pytest.raises(ArityMismatch):
            evaluate(ADD, [1])

    def test_budget(self):
        assert evaluate(ADD, [10, 0], budget=10) == 10
        with pytest.raises(BudgetExhausted):
            evaluate(ADD, [11, 0], budget=10)
        # mul(n, y) spends n + n*y unfoldings
        assert evaluate(MUL, [3, 4], budget=15) == 12
        with pytest.raises(BudgetExhausted):
            evaluate(MUL, [3, 4], budget=14)

    def test_exponentiation_exhausts_budget(self):
        power = Rec(Const(1, 1), Comp(MUL, [Proj(3, 3), Proj(3, 2)]))   # power(n, b) = b**n
        assert evaluate(power, [5, 3]) == 243
        with pytest.raises(BudgetExhausted):
            evaluate(power, [40, 3], budget=10**5)

    def test_big_values(self):
        assert evaluate(Comp(Succ(), [Const(1, 10**40)]), [0]) == 10**40 + 1

    def test_pure(self):
        assert evaluate(MUL, [7, 8]) == evaluate(MUL, [7, 8]) == 56


class TestParse:
    def test_add(self):
        assert parse_expr("rec(P[1,1]; comp(S; P[3,2]))") == ADD

    def test_roundtrip(self):
        assert parse_expr(str(MUL)) == MUL

    def test_whitespace(self):
        assert parse_expr("  comp( S ;C[ 2 , 4 ] )") == Comp(Succ(), [Const(2, 4)])

    @pytest.mark.parametrize("text", [
        "", "S S", "comp(S, P[1,1])", "rec(P[1,1])", "rec(C[0,1]; P[2,1], P[2,2])",
        "Q[1,1]", "comp(S; P[1,1]",
    ])
    def test_syntax_errors(self, text):
        with pytest.raises(ParseError):
            parse_expr(text)

    def test_ill_formed_reported(self):
        with pytest.raises(IllFormedExpr):
            parse_expr("comp(S; P[1,1], P[1,1])")


class TestPolynomial:
    def test_square_plus_one(self):
        e = polynomial_to_primrec(parse_polynomial("x^2 + 1"))
        assert evaluate(e, [3]) == 10

    def test_zero(self):
        p = Polynomial(("x", "y"), {})
        assert evaluate(polynomial_to_primrec(p), [5, 9]) == 0

    def test_two_xy(self):
        e = polynomial_to_primrec(parse_polynomial("2*x*y"))
        assert evaluate(e, [3, 4]) == 24

    def test_negative_coefficient(self):
        with pytest.raises(UnsupportedCoefficient):
            polynomial_to_primrec(parse_polynomial("x - 1"))

    def test_small_grid(self):
        p = parse_polynomial("3*x^2 + x*y + 2*y + 5")
        e = polynomial_to_primrec(p)
        for x in range(8):
            for y in range(8):
                assert evaluate(e, [x, y]) == naive_poly_eval(p.terms, (x, y))


# -- totality ---------------------------------------------------------------------

def cost_bound(e, m):
    """(value bound, unfolding bound) over all arguments <= m, by structural recursion."""
    if isinstance(e, Const):
        return e.value, 0
    if isinstance(e, Succ):
        return m + 1, 0
    if isinstance(e, Proj):
        return m, 0
    if isinstance(e, Comp):
        inner = [cost_bound(i, m) for i in e.inners]
        v, u = cost_bound(e.outer, max(v for v, _ in inner))
        return v, u + sum(u for _, u in inner)
    # Iterates need not grow with n, so carry the running maximum.
    v, u = cost_bound(e.base, m)
    for _ in range(m):
        v2, u2 = cost_bound(e.step, max(m, v))
        v, u = max(v, v2), u + 1 + u2
    return v, u


def exprs(arity_, size):
    """Strategy for well-formed terms of the given arity and at most ``size`` nodes."""
    leaves = [st.builds(Const, st.just(arity_), st.integers(0, 3)),
              st.builds(Proj, st.just(arity_), st.integers(1, arity_) if arity_ else st.nothing())]
    if arity_ == 1:
        leaves.append(st.just(Succ()))
    options = [st.one_of(*leaves)] if arity_ else [st.builds(Const, st.just(0), st.integers(0, 3))]
    if size >= 3:
        @st.composite
        def comp(draw):
            n_inner = draw(st.integers(1, min(2, size - 2)))
            budget = size - 1
            outer = draw(exprs(n_inner, max(1, budget // (n_inner + 1))))
            inners = [draw(exprs(arity_, max(1, budget // (n_inner + 1)))) for _ in range(n_inner)]
            return Comp(outer, inners)
        options.append(comp())
    if size >= 3 and arity_ >= 1:
        @st.composite
        def rec(draw):
            half = (size - 1) // 2
            return Rec(draw(exprs(arity_ - 1, max(1, half))), draw(exprs(arity_ + 1, max(1, size - 1 - half))))
        options.append(rec())
    return st.one_of(*options)


def node_count(e):
    if isinstance(e, Comp):
        return 1 + node_count(e.outer) + sum(node_count(i) for i in e.inners)
    if isinstance(e, Rec):
        return 1 + node_count(e.base) + node_count(e.step)
    return 1


@settings(max_examples=300, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(1, 3).flatmap(lambda k: st.tuples(
    exprs(k, 8), st.lists(st.integers(0, 20), min_size=k, max_size=k))))
def test_total_within_computed_budget(case):
    e, args = case
    assert node_count(e) <= 8
    value_bound, unfold_bound = cost_bound(e, 20)
    assume(unfold_bound <= 10**6)
    value = evaluate(e, args, budget=unfold_bound)
    assert 0 <= value <= value_bound
    assert evaluate(e, args, budget=unfold_bound) == value


def test_add_mul_small_exhaustive():
    for a in range(21):
        for b in range(21):
            assert evaluate(ADD, [a, b]) == a + b
            assert evaluate(MUL, [a, b]) == a * b


def test_random_polynomials_agree():
    rng = random.Random(7)
    for _ in range(5):
        terms = {(rng.randint(0, 2), rng.randint(0, 1)): rng.randint(1, 3) for _ in range(3)}
        p = Polynomial(("x", "y"), terms)
        e = polynomial_to_primrec(p)
        for x in range(0, 12, 3):
            for y in range(0, 12, 4):
                assert evaluate(e, [x, y]) == naive_poly_eval(p.terms, (x, y))
