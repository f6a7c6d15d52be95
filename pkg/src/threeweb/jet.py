"""Truncated Taylor arithmetic in four variables up to total degree 3.

A Jet stores the 35 Taylor coefficients of a function at a point:

    coeff[idx(alpha)] = (d^alpha F)(P) / alpha!

for every multi-index alpha = (a1, a2, a3, a4) with |alpha| <= 3, in the
order produced by `_multi_indices` (by total degree, then lexicographic).
Arithmetic is exact truncated power-series arithmetic, so after lifting the
defining functions of a web through `jet_lift`, every coefficient is the
exact partial derivative (up to float roundoff), with no finite-difference
truncation error anywhere.

`deriv` differentiates inside the algebra.  The result is again a Jet, but
only its coefficients of degree <= 2 are meaningful (degree-3 ones are set
to zero); more generally each application of `deriv` lowers by one the
degree through which downstream products are trustworthy.  The tensor
pipeline only ever reads `deriv` results through degree 1, which keeps
everything exact.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .expr import (Add, Const, Div, EvalError, Exp, Ln, Mul, Neg, ParamRef,
                   Pow, Sub, Var, VARIABLES)

DEGREE = 3
NVARS = 4


def _multi_indices():
    out = []
    for total in range(DEGREE + 1):
        for alpha in itertools.product(range(total + 1), repeat=NVARS):
            if sum(alpha) == total:
                out.append(alpha)
    return out


MULTI = _multi_indices()
NCOEFF = len(MULTI)  # 35
INDEX = {alpha: i for i, alpha in enumerate(MULTI)}

_FACTORIAL = np.array([math.prod(math.factorial(a) for a in alpha)
                       for alpha in MULTI], dtype=float)

# Multiplication table: all (i, j, k) with MULTI[i] + MULTI[j] = MULTI[k].
_MUL_I, _MUL_J, _MUL_K = [], [], []
for _i, _a in enumerate(MULTI):
    for _j, _b in enumerate(MULTI):
        _s = tuple(x + y for x, y in zip(_a, _b))
        if sum(_s) <= DEGREE:
            _MUL_I.append(_i)
            _MUL_J.append(_j)
            _MUL_K.append(INDEX[_s])
_MUL_I = np.array(_MUL_I)
_MUL_J = np.array(_MUL_J)
_MUL_K = np.array(_MUL_K)

# Derivative table, one (src, dst, factor) list per variable:
# d/dx_v maps coefficient at alpha+e_v to (alpha_v + 1) * coeff at alpha.
_DERIV = []
for _v in range(NVARS):
    src, dst, fac = [], [], []
    for _i, _a in enumerate(MULTI):
        if sum(_a) == DEGREE:
            continue
        up = list(_a)
        up[_v] += 1
        src.append(INDEX[tuple(up)])
        dst.append(_i)
        fac.append(up[_v])
    _DERIV.append((np.array(src), np.array(dst), np.array(fac, dtype=float)))


class Jet:
    """Degree-3 truncated Taylor expansion of a scalar function."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = np.asarray(coeffs, dtype=float)
        if self.c.shape != (NCOEFF,):
            raise ValueError("jet needs %d coefficients" % NCOEFF)

    # construction -----------------------------------------------------

    @staticmethod
    def constant(value):
        c = np.zeros(NCOEFF)
        c[0] = value
        return Jet(c)

    @staticmethod
    def variable(v, value):
        """The coordinate function x_v expanded at x_v = value."""
        c = np.zeros(NCOEFF)
        c[0] = value
        alpha = tuple(1 if i == v else 0 for i in range(NVARS))
        c[INDEX[alpha]] = 1.0
        return Jet(c)

    # accessors ----------------------------------------------------------

    @property
    def value(self):
        return float(self.c[0])

    def partial(self, alpha):
        """The partial derivative d^alpha F at the expansion point."""
        alpha = tuple(alpha)
        i = INDEX[alpha]  # KeyError for |alpha| > 3 is the right failure
        return float(self.c[i] * _FACTORIAL[i])

    def deriv(self, v):
        """d/dx_v inside the algebra; degree-3 coefficients of the result
        are zeroed, so treat the result as valid through degree 2 only."""
        src, dst, fac = _DERIV[v]
        c = np.zeros(NCOEFF)
        c[dst] = self.c[src] * fac
        return Jet(c)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = _as_jet(other)
        return Jet(self.c + other.c)

    __radd__ = __add__

    def __sub__(self, other):
        return Jet(self.c - _as_jet(other).c)

    def __rsub__(self, other):
        return Jet(_as_jet(other).c - self.c)

    def __neg__(self):
        return Jet(-self.c)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Jet(self.c * other)
        prod = np.bincount(_MUL_K, weights=self.c[_MUL_I] * other.c[_MUL_J],
                           minlength=NCOEFF)
        return Jet(prod)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            if other == 0:
                raise EvalError("division by zero")
            return Jet(self.c / other)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return _as_jet(other) * self.reciprocal()

    def reciprocal(self):
        c0 = self.c[0]
        if c0 == 0.0:
            raise EvalError("jet division by a jet with zero value")
        u = Jet(self.c / c0)
        u.c[0] = 0.0
        # (1+u)^-1 = 1 - u + u^2 - u^3, exact at degree 3
        w = 1.0 - u * (1.0 - u * (1.0 - u))
        return Jet(w.c / c0)

    def exp(self):
        c0 = self.c[0]
        u = Jet(self.c.copy())
        u.c[0] = 0.0
        w = 1.0 + u * (1.0 + u * (0.5 + u * (1.0 / 6.0)))
        return Jet(w.c * math.exp(c0))

    def ln(self):
        c0 = self.c[0]
        if c0 <= 0.0:
            raise EvalError("ln of a jet with non-positive value %r" % c0)
        u = Jet(self.c / c0)
        u.c[0] = 0.0
        w = u * (1.0 - u * (0.5 - u * (1.0 / 3.0)))
        w.c[0] = math.log(c0)
        return Jet(w.c)

    def int_pow(self, k):
        if not isinstance(k, int):
            raise EvalError("jet powers must have integer exponents")
        if k < 0:
            return self.reciprocal().int_pow(-k)
        out = Jet.constant(1.0)
        base = self
        n = k
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __repr__(self):
        return "Jet(value=%r)" % self.value


def _as_jet(v):
    if isinstance(v, Jet):
        return v
    return Jet.constant(float(v))


def jet_lift(e, point, params=None):
    """Expand an expression tree around `point` = (x1, x2, y1, y2)."""
    params = params or {}
    vars_ = {name: Jet.variable(i, float(point[i]))
             for i, name in enumerate(VARIABLES)}
    return _lift(e, vars_, params)


def _lift(e, vars_, params):
    if isinstance(e, Const):
        return Jet.constant(e.value)
    if isinstance(e, Var):
        return vars_[e.name]
    if isinstance(e, ParamRef):
        try:
            return Jet.constant(params[e.name])
        except KeyError:
            raise EvalError("parameter %r is unbound" % e.name) from None
    if isinstance(e, Neg):
        return -_lift(e.arg, vars_, params)
    if isinstance(e, Exp):
        return _lift(e.arg, vars_, params).exp()
    if isinstance(e, Ln):
        return _lift(e.arg, vars_, params).ln()
    if isinstance(e, Add):
        return _lift(e.left, vars_, params) + _lift(e.right, vars_, params)
    if isinstance(e, Sub):
        return _lift(e.left, vars_, params) - _lift(e.right, vars_, params)
    if isinstance(e, Mul):
        return _lift(e.left, vars_, params) * _lift(e.right, vars_, params)
    if isinstance(e, Div):
        return _lift(e.left, vars_, params) / _lift(e.right, vars_, params)
    if isinstance(e, Pow):
        return _lift(e.base, vars_, params).int_pow(e.exponent)
    raise TypeError("not an expression node: %r" % (e,))
