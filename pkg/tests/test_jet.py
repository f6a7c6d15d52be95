import math

import numpy as np
import pytest

from oracles import partial_fd, rel_err
from threeweb.corpus import load_example
from threeweb.expr import EvalError, evaluate, parse_web
from threeweb.jet import DEGREE, MULTI, NCOEFF, Jet, jet_lift

RNG = np.random.default_rng(2024)


def _random_jet(scale=1.0, positive=False):
    c = RNG.uniform(-scale, scale, NCOEFF)
    if positive:
        c[0] = abs(c[0]) + 0.5
    return Jet(c)


def _close(a, b, tol=1e-10):
    scale = max(1.0, np.max(np.abs(a.c)), np.max(np.abs(b.c)))
    return np.max(np.abs(a.c - b.c)) <= tol * scale


def test_constant_and_variable_seeds():
    j = Jet.constant(7.0)
    assert j.value == 7.0
    assert j.partial((1, 0, 0, 0)) == 0.0
    v = Jet.variable(2, 1.5)
    assert v.value == 1.5
    assert v.partial((0, 0, 1, 0)) == 1.0
    assert v.partial((0, 0, 2, 0)) == 0.0


def test_polynomial_partials_are_exact():
    # u = x1^2*x2 + 3*x1*y1*y2 - y2^3; every third partial is known.
    web = parse_web("u1 = x1^2*x2 + 3*x1*y1*y2 - y2^3\nu2 = x2\n")
    x1, x2, y1, y2 = 1.5, -0.5, 2.0, 0.75
    j = jet_lift(web.u1, (x1, x2, y1, y2))
    assert j.value == pytest.approx(x1 * x1 * x2 + 3 * x1 * y1 * y2
                                      - y2 ** 3, rel=1e-14)
    assert j.partial((1, 0, 0, 0)) == pytest.approx(2 * x1 * x2 + 3 * y1 * y2)
    assert j.partial((2, 0, 0, 0)) == pytest.approx(2 * x2)
    assert j.partial((2, 1, 0, 0)) == pytest.approx(2.0)
    assert j.partial((1, 0, 1, 1)) == pytest.approx(3.0)
    assert j.partial((0, 0, 0, 3)) == pytest.approx(-6.0)
    assert j.partial((0, 3, 0, 0)) == 0.0


def test_product_rule_through_degree_two():
    ok = [i for i, alpha in enumerate(MULTI) if sum(alpha) <= DEGREE - 1]
    for _ in range(20):
        a, b = _random_jet(), _random_jet()
        for v in range(4):
            lhs = (a * b).deriv(v)
            rhs = a.deriv(v) * b + a * b.deriv(v)
            diff = np.abs(lhs.c[ok] - rhs.c[ok])
            assert np.max(diff) < 1e-10


def test_reciprocal_inverts():
    one = Jet.constant(1.0)
    for _ in range(20):
        j = _random_jet(positive=True)
        assert _close(j * j.reciprocal(), one)


def test_exp_ln_are_inverse():
    for _ in range(20):
        j = _random_jet(positive=True)
        assert _close(j.ln().exp(), j)
        assert _close(j.exp().ln(), j)


def test_int_pow_matches_repeated_product():
    for _ in range(10):
        j = _random_jet(positive=True)
        assert _close(j.int_pow(3), j * j * j)
        assert _close(j.int_pow(1), j)
        assert _close(j.int_pow(0), Jet.constant(1.0))
        assert _close(j.int_pow(-2), (j * j).reciprocal(), tol=1e-8)


def test_error_cases():
    zero_front = Jet.constant(0.0)
    with pytest.raises(EvalError):
        zero_front.reciprocal()
    with pytest.raises(EvalError):
        Jet.constant(-1.0).ln()
    with pytest.raises(EvalError):
        Jet.constant(0.0).ln()
    with pytest.raises(EvalError):
        zero_front.int_pow(-1)
    with pytest.raises(EvalError):
        Jet.constant(2.0) / 0.0


# Webs with enough variety to exercise every operator: rational, exp, powers.
_FD_CASES = [
    (1, (1.0, 1.0, 0.0, 1.0)),
    (1, (2.0, 1.0, -1.0, 3.0)),
    (7, (1.0, 1.0, 2.0, 3.0)),
    (7, (0.5, 2.0, 2.5, -3.0)),
    (10, (1.0, 1.0, 0.0, 0.0)),
    (10, (0.5, 2.0, 1.0, -1.0)),
    (12, (1.0, 1.0, 2.0, 2.0)),
    (13, (2.0, 1.0, 0.5, 3.0)),
]


@pytest.mark.parametrize("index,point", _FD_CASES)
def test_partials_match_finite_differences(index, point):
    entry = load_example(index)
    web = entry.web
    for expr in (web.u1, web.u2):
        j = jet_lift(expr, point)

        def f(pt, _e=expr):
            return evaluate(_e, pt)

        for alpha in MULTI:
            if sum(alpha) == 0:
                continue
            want = partial_fd(f, point, alpha)
            got = j.partial(alpha)
            assert rel_err(got, want) < 1e-5, (alpha, got, want)


def test_exp_jet_against_closed_form():
    # exp(x1 + 2*y2) has partials exp(x1 + 2*y2) * 2^(order of y2 part).
    web = parse_web("u1 = exp(x1 + 2*y2)\nu2 = x2\n")
    point = (0.3, 0.0, 0.0, -0.1)
    j = jet_lift(web.u1, point)
    base = math.exp(0.3 + 2 * -0.1)
    for alpha in MULTI:
        if alpha[1] or alpha[2]:
            want = 0.0 if sum(alpha) > 0 else base
            if sum(alpha) == 0:
                continue
            assert j.partial(alpha) == pytest.approx(0.0, abs=1e-12)
        else:
            want = base * 2.0 ** alpha[3]
            assert j.partial(alpha) == pytest.approx(want, rel=1e-12)
