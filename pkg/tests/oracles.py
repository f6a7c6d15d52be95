"""Independent numerical oracles used by the test suite.

Finite differences deliberately share no code with the jet algebra: they
evaluate the web's defining functions pointwise and differentiate by
Richardson-extrapolated central stencils.  Third-order mixed partials lose
too many digits at very small steps, so the base step is 0.02 and one
extrapolation level brings the truncation error to O(h^4), which comfortably
beats the 1e-5 relative tolerance the comparisons use.
"""

import numpy as np

BASE_STEP = 0.02


def _diff_once(f, point, var, order, h):
    p = np.asarray(point, dtype=float)

    def shifted(k):
        q = p.copy()
        q[var] += k * h
        return tuple(q)

    if order == 1:
        return (f(shifted(1)) - f(shifted(-1))) / (2.0 * h)
    if order == 2:
        return (f(shifted(1)) - 2.0 * f(shifted(0)) + f(shifted(-1))) / h ** 2
    if order == 3:
        return (f(shifted(2)) - 2.0 * f(shifted(1))
                + 2.0 * f(shifted(-1)) - f(shifted(-2))) / (2.0 * h ** 3)
    raise ValueError("stencils cover orders 1..3, got %d" % order)


def central(f, point, alpha, h=BASE_STEP):
    """Central-difference estimate of d^alpha f at point (no extrapolation)."""
    alpha = tuple(alpha)
    total = sum(alpha)
    if total == 0:
        return f(tuple(point))
    # Peel one variable at a time; inner levels become new callables.
    for var in range(4):
        if alpha[var]:
            rest = list(alpha)
            order = rest[var]
            rest[var] = 0
            if sum(rest) == 0:
                return _diff_once(f, point, var, order, h)

            def inner(pt, _f=f, _var=var, _order=order, _h=h):
                return _diff_once(_f, pt, _var, _order, _h)

            return central(inner, point, rest, h)
    raise AssertionError("unreachable")


def partial_fd(f, point, alpha, h=BASE_STEP):
    """Richardson-extrapolated central difference, one refinement level.

    Every stencil above has error O(h^2), so combining estimates at h and
    h/2 with weights (4, -1)/3 cancels the leading term.
    """
    coarse = central(f, point, alpha, h)
    fine = central(f, point, alpha, h / 2.0)
    return (4.0 * fine - coarse) / 3.0


def rel_err(got, want):
    return abs(got - want) / max(1.0, abs(want))
