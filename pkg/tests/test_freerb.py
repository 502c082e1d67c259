"""Tensor carrier: interleaving product, prepend operator, induced maps."""

import random
from fractions import Fraction
from math import comb

import pytest

from rbshuffle.algebra import (Hom, HandleMismatchError, Poly, SampleBudget,
                               ShaHandle, alg_eq, integration_on, poly_handle,
                               random_element, scaled_identity_on, subst_hom)
from rbshuffle.coeffs import RATIONALS
from rbshuffle.freerb import (Tensor, counit_eval, eta, eta_hom,
                              free_derivation, free_rb_operator,
                              induced_rb_hom, interleavings, mu, rb_prepend,
                              sha_hom, sha_map, structure_hom)
from rbshuffle import algebra

Q = RATIONALS
HALF = Q.from_fraction(Fraction(1, 2))
LAMBDAS = (Q.zero(), Q.one(), HALF)


def sha_x(lam=None, variables=("x",)):
    return ShaHandle(poly_handle(variables, Q, lam))


def test_base_cases_merge_heads():
    s = sha_x(variables=("a0", "b0", "b1"))
    h = s.inner
    a0, b0, b1 = (Poly.variable(h, v) for v in h.variables)
    # one short operand: heads multiply, the longer tail is kept
    assert (Tensor.from_factors(s, (a0,)) * Tensor.from_factors(s, (b0, b1))
            == Tensor.from_factors(s, (a0 * b0, b1)))
    assert (Tensor.from_factors(s, (b0, b1)) * Tensor.from_factors(s, (a0,))
            == Tensor.from_factors(s, (a0 * b0, b1)))
    # degree one both sides: the product collapses to the carrier product
    assert (Tensor.from_factors(s, (a0,)) * Tensor.from_factors(s, (b0,))
            == eta(a0 * b0, s))


@pytest.mark.parametrize("lam", LAMBDAS, ids=str)
def test_worked_five_term_expansion(lam):
    h = poly_handle(("a0", "a1", "b0", "b1", "b2"), Q, lam)
    s = ShaHandle(h)
    a0, a1, b0, b1, b2 = (Poly.variable(h, v) for v in h.variables)
    lhs = Tensor.from_factors(s, (a0, a1)) * Tensor.from_factors(s, (b0, b1, b2))
    head = a0 * b0
    rhs = (Tensor.from_factors(s, (head, a1, b1, b2))
           + Tensor.from_factors(s, (head, b1, a1, b2))
           + Tensor.from_factors(s, (head, b1, b2, a1))
           + Tensor.from_factors(s, (head, b1, a1 * b2), lam)
           + Tensor.from_factors(s, (head, a1 * b1, b2), lam))
    assert lhs == rhs


def test_prepend_operator():
    s = sha_x()
    x = Poly.variable(s.inner, "x")
    one = Poly.one(s.inner)
    u = Tensor.from_factors(s, (x, x))
    assert rb_prepend(u) == Tensor.from_factors(s, (one, x, x))
    assert rb_prepend(Tensor.zero(s)).is_zero
    assert rb_prepend(u.scale(Q.from_int(2))) == rb_prepend(u).scale(Q.from_int(2))


def test_embedding_is_linear_and_multiplicative():
    s = sha_x(variables=("x", "y"))
    h = s.inner
    x, y = Poly.variable(h, "x"), Poly.variable(h, "y")
    assert eta(Poly.one(h), s) == Tensor.one(s)
    assert eta(x + y, s) == eta(x, s) + eta(y, s)
    assert eta(x, s) * eta(y, s) == eta(x * y, s)


def test_factor_expansion_to_basis():
    s = sha_x()
    h = s.inner
    x = Poly.variable(h, "x")
    one = Poly.one(h)
    # (x+1) # (x+1) expands to four basis tensors
    u = Tensor.from_factors(s, (x + one, x + one))
    expect = (Tensor.from_factors(s, (x, x)) + Tensor.from_factors(s, (x, one))
              + Tensor.from_factors(s, (one, x)) + Tensor.from_factors(s, (one, one)))
    assert u == expect


def test_sha_map_functorial():
    s = sha_x(variables=("x", "y"))
    h = s.inner
    x = Poly.variable(h, "x")
    one = Poly.one(h)
    ident = Hom.identity(h)
    phi = subst_hom(h, {"x": x + one})
    psi = subst_hom(h, {"x": x * x})
    rng = random.Random(2)
    budget = SampleBudget()
    for _ in range(50):
        u = random_element(s, budget, rng)
        assert sha_map(ident, u) == u
        assert sha_map(psi, sha_map(phi, u)) == sha_map(phi.then(psi), u)
    assert sha_map(phi, Tensor.from_factors(s, (x, x))) == Tensor.from_factors(
        s, (x + one, x + one))


def test_induced_hom_evaluation():
    h = poly_handle(("x",), Q, Q.zero())
    s = ShaHandle(h)
    x = Poly.variable(h, "x")
    one = Poly.one(h)
    op = integration_on(h, "x")
    ident = Hom.identity(h)
    # degree-1 tensors evaluate through phi alone
    assert induced_rb_hom(ident, op, eta(x, s)) == x
    # (x, 1) evaluates to x * P(1) = x^2
    assert induced_rb_hom(ident, op, Tensor.from_factors(s, (x, one))) == x * x
    # the counit at (1, x) is P(x) = x^2/2
    assert counit_eval(Tensor.from_factors(s, (one, x)), op) == (x * x).scale(HALF)
    assert counit_eval(eta(x, s), op) == x


@pytest.mark.parametrize("lam", LAMBDAS, ids=str)
def test_induced_hom_is_rb_morphism(lam):
    h = poly_handle(("x",), Q, lam)
    s = ShaHandle(h)
    op = scaled_identity_on(h)
    ident = Hom.identity(h)
    rng = random.Random(4)
    budget = SampleBudget()
    for _ in range(100):
        u = random_element(s, budget, rng)
        v = random_element(s, budget, rng)
        assert (induced_rb_hom(ident, op, u * v)
                == induced_rb_hom(ident, op, u) * induced_rb_hom(ident, op, v))
        assert induced_rb_hom(ident, op, rb_prepend(u)) == op(induced_rb_hom(ident, op, u))


def test_flatten_examples():
    s = sha_x(variables=("x", "y"))
    h = s.inner
    s2 = ShaHandle(s)
    x, y = Poly.variable(h, "x"), Poly.variable(h, "y")
    a = eta(x, s)
    b = Tensor.from_factors(s, (y, x))
    # one outer level around one tensor unwraps
    assert mu(eta(b, s2)) == b
    # (a) x (b0, b1) flattens to a concatenation through the prepend operator
    assert (mu(Tensor.from_factors(s2, (a, b)))
            == Tensor.from_factors(s, (x, y, x)))
    rng = random.Random(6)
    budget = SampleBudget()
    for _ in range(50):
        u = random_element(s, budget, rng)
        assert mu(eta(u, s2)) == u
        assert mu(sha_map(eta_hom(h), u)) == u


def test_flatten_matches_nested_display():
    # cross-check the evaluator against the explicit nested form
    s = sha_x(lam=HALF, variables=("x", "y"))
    s2 = ShaHandle(s)
    op = free_rb_operator(s)
    rng = random.Random(8)
    budget = SampleBudget(max_tensor_len=2, max_terms=2)
    for _ in range(50):
        w = random_element(s2, budget, rng)
        direct = algebra.zero(s)
        for factors, c in w.terms.items():
            v = factors[-1]
            for t in reversed(factors[:-1]):
                v = t * op(v)
            direct = direct + v.scale(c)
        assert mu(w) == direct


@pytest.mark.parametrize("lam", LAMBDAS, ids=str)
def test_free_derivation_examples(lam):
    h = poly_handle(("x",), Q, lam)
    s = ShaHandle(h)
    x = Poly.variable(h, "x")
    one = Poly.one(h)
    if lam.is_zero:
        d = algebra.derivative_on(h, "x")
    else:
        d = algebra.difference_quotient_on(h, "x")
    dfree = free_derivation(s, d)
    # degree one applies d inside the embedding
    assert dfree(eta(x * x, s)) == eta(d(x * x), s)
    # the unit-headed tensor reduces to its tail
    assert dfree(Tensor.from_factors(s, (one, x))) == eta(x, s)
    rng = random.Random(9)
    budget = SampleBudget()
    for _ in range(100):
        u = random_element(s, budget, rng)
        assert dfree(rb_prepend(u)) == u


def test_structure_hom_shape():
    h = poly_handle(("x",), Q, Q.zero())
    op = integration_on(h, "x")
    hom = structure_hom(op)
    x = Poly.variable(h, "x")
    assert hom.src == ShaHandle(h)
    assert hom(eta(x)) == x


def test_top_stratum_counts_small():
    for m in range(5):
        for n in range(5):
            names = tuple(f"a{k}" for k in range(m + 1)) + tuple(
                f"b{k}" for k in range(n + 1))
            h = poly_handle(names, Q, Q.one())
            s = ShaHandle(h)
            av = tuple(Poly.variable(h, f"a{k}") for k in range(m + 1))
            bv = tuple(Poly.variable(h, f"b{k}") for k in range(n + 1))
            prod = Tensor.from_factors(s, av) * Tensor.from_factors(s, bv)
            assert prod.lengths()[m + n + 1] == comb(m + n, n)


def _weighted_weaves(xs, ys):
    """Independent oracle: order-preserving weaves of two tuples where any
    pair of heads from opposite sides may merge, yielding (merge count,
    factors).  Recursive enumeration, no reuse of the product under test."""
    if not xs:
        yield 0, ys
        return
    if not ys:
        yield 0, xs
        return
    for k, rest in _weighted_weaves(xs[1:], ys):
        yield k, (xs[0],) + rest
    for k, rest in _weighted_weaves(xs, ys[1:]):
        yield k, (ys[0],) + rest
    for k, rest in _weighted_weaves(xs[1:], ys[1:]):
        yield k + 1, (xs[0] * ys[0],) + rest


@pytest.mark.parametrize("lam", (Q.one(), HALF), ids=str)
def test_product_matches_weighted_weave_enumeration(lam):
    # every stratum of the recursive product, rebuilt combinatorially
    h = poly_handle(("x", "y"), Q, lam)
    s = ShaHandle(h)
    rng = random.Random(29)
    budget = SampleBudget()
    for _ in range(100):
        la = rng.randint(1, 4)
        lb = rng.randint(1, 4)
        a = tuple(algebra.random_basis_factor(h, budget, rng) for _ in range(la))
        b = tuple(algebra.random_basis_factor(h, budget, rng) for _ in range(lb))
        got = Tensor.from_factors(s, a) * Tensor.from_factors(s, b)
        expect = Tensor.zero(s)
        head = a[0] * b[0]
        for k, weave in _weighted_weaves(a[1:], b[1:]):
            expect = expect + Tensor.from_factors(s, (head,) + weave, lam.pow_nat(k))
        assert got == expect


def test_weight_zero_stratum_matches_interleavings_with_repeats():
    # repeated symbols force multiplicities in the shuffle multiset
    h = poly_handle(("x",), Q, Q.zero())
    s = ShaHandle(h)
    x = Poly.variable(h, "x")
    u = Tensor.from_factors(s, (x, x))
    prod = u * u
    expect = {}
    one = Q.one()
    for weave in interleavings((x,), (x,)):
        key = (x * x,) + weave
        expect[key] = expect.get(key, Q.zero()) + one
    assert prod.terms == expect
    assert prod == Tensor.from_factors(s, (x * x, x, x), Q.from_int(2))


def test_handle_mismatch():
    a = Tensor.one(sha_x())
    b = Tensor.one(sha_x(variables=("y",)))
    with pytest.raises(HandleMismatchError):
        a * b
    with pytest.raises(ValueError):
        Tensor.from_factors(sha_x(), ())


def test_tensor_is_hashable_and_orders_terms():
    s = sha_x(variables=("x", "y"))
    h = s.inner
    x, y = Poly.variable(h, "x"), Poly.variable(h, "y")
    u = Tensor.from_factors(s, (x, y)) + Tensor.from_factors(s, (y,), Q.from_int(2))
    v = Tensor.from_factors(s, (y,), Q.from_int(2)) + Tensor.from_factors(s, (x, y))
    assert u == v and hash(u) == hash(v)
    assert str(u) == "2*y + (x # y)"
